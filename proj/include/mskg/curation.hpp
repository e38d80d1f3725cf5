#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/term.hpp"
#include "mskg/term_index.hpp"

namespace mskg {

struct CurationRow {
  std::string column;
  std::string raw_value;
  std::optional<OntologyTermRef> chosen;  // nullopt == REJECT
  std::string note;
};

// Manually curated (column, raw value) -> term choices. Source of truth for
// columns that require curation.
class CurationFile {
 public:
  // TSV: column, raw_value, chosen_term (CURIE, IRI or REJECT), note.
  // Throws ConfigError on duplicate (column, raw) pairs, UnknownPrefix when a
  // choice does not resolve in the registry.
  static CurationFile from_tsv(std::string_view content, const NamespaceRegistry& registry);
  static CurationFile load(const std::string& path, const NamespaceRegistry& registry);

  void add(CurationRow row);

  const std::vector<CurationRow>& rows() const { return rows_; }
  const CurationRow* find(std::string_view column, std::string_view raw) const;
  bool empty() const { return rows_.empty(); }

 private:
  std::vector<CurationRow> rows_;
  std::map<std::pair<std::string, std::string>, std::size_t> by_key_;
};

struct AccuracyAtK {
  int k = 0;
  std::map<std::string, double> per_column;
  double macro = 0.0;  // mean of per-column accuracies
  double micro = 0.0;  // pooled over every curated row
};

struct AccuracyReport {
  std::vector<AccuracyAtK> by_k;
  std::map<std::string, std::size_t> rows_per_column;
  std::size_t rejected = 0;  // REJECT rows are excluded from both averages

  const AccuracyAtK& at(int k) const;
  std::string to_tsv() const;
};

// Ranked candidates for a raw value, at most k of them.
using Matcher = std::function<std::vector<MatchCandidate>(std::string_view raw, int k)>;

// Top-k accuracy of match_term against the curated choice.
AccuracyReport evaluate_matching(const CurationFile& curation, const TermIndex& index,
                                 const std::vector<int>& k_values);
AccuracyReport evaluate_matching(const CurationFile& curation, const Matcher& matcher,
                                 const std::vector<int>& k_values);

}  // namespace mskg
