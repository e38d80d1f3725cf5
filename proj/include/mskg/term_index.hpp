#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/term.hpp"

namespace mskg {

inline const std::set<std::string> kDefaultOntologyFilter = {"CHEBI", "MS", "NCIT", "CHMO", "OBI"};

struct TermEntry {
  OntologyTermRef term;
  std::string iri;
  std::string label;
  std::vector<std::string> synonyms;
  std::string ontology;

  // Precomputed casefolded forms: [0] is the label, the rest are synonyms.
  std::vector<std::string> folded;
  std::vector<std::set<std::string>> tokens;
  std::vector<std::u32string> codepoints;
};

// Local lookup table of ontology terms, immutable after construction.
class TermIndex {
 public:
  TermIndex() = default;
  explicit TermIndex(std::set<std::string> ontology_filter) : filter_(std::move(ontology_filter)) {}

  // TSV: iri, label, pipe-joined synonyms, ontology. A header row starting
  // with "iri" is skipped.
  static TermIndex from_tsv(std::string_view content, const NamespaceRegistry& registry,
                            std::set<std::string> ontology_filter = kDefaultOntologyFilter);
  static TermIndex load(const std::string& path, const NamespaceRegistry& registry,
                        std::set<std::string> ontology_filter = kDefaultOntologyFilter);

  void add(const std::string& iri, std::string_view label, const std::vector<std::string>& synonyms,
           std::string_view ontology, const NamespaceRegistry& registry);

  const std::vector<TermEntry>& entries() const { return entries_; }
  const std::set<std::string>& filter() const { return filter_; }

 private:
  std::set<std::string> filter_ = kDefaultOntologyFilter;
  std::vector<TermEntry> entries_;
};

enum class MatchKind { Exact, CaseInsensitive, SynonymExact, TokenOverlap, EditDistance };

std::string_view to_string(MatchKind kind);

struct MatchCandidate {
  OntologyTermRef term;
  std::string iri;
  double score = 0.0;
  int rank = 0;
  MatchKind match_kind = MatchKind::EditDistance;
};

struct LexicalScore {
  MatchKind kind;
  double score;
};

// Best tier/score of `query` against a label and its synonyms. Returns a
// score of 0 when nothing overlaps.
LexicalScore score_label(std::string_view query, std::string_view label,
                         const std::vector<std::string>& synonyms);

// Jaccard similarity of lowercase whitespace tokens.
double token_jaccard(std::string_view a, std::string_view b);
// 1 - Levenshtein / max length, over code points.
double edit_similarity(std::string_view a, std::string_view b);
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

// Tiered lexical ranking: Exact > CaseInsensitive > SynonymExact >
// TokenOverlap > EditDistance, then score desc, then IRI asc. Throws
// EmptyQuery for blank input.
std::vector<MatchCandidate> match_term(std::string_view raw, const TermIndex& index, int k);

}  // namespace mskg
