#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mskg/curation.hpp"
#include "mskg/metadata.hpp"
#include "mskg/node.hpp"
#include "mskg/organism.hpp"
#include "mskg/report.hpp"
#include "mskg/term_index.hpp"
#include "mskg/uri.hpp"

namespace mskg {

struct MappingContext {
  const MappingManifest* manifest = nullptr;
  const NamespaceRegistry* registry = nullptr;
  const TermIndex* index = nullptr;
  const CurationFile* curation = nullptr;
  bool strict = false;
  std::string global_prefix = std::string(kDefaultGlobalPrefix);
};

// (column, raw value) -> URI of the individual minted for it.
class MappingDictionary {
 public:
  // Returns true the first time the pair is seen.
  bool add(const std::string& column, const std::string& raw, const std::string& iri);
  void merge(const MappingDictionary& other);

  const std::map<std::string, std::map<std::string, std::string>>& entries() const { return entries_; }
  std::size_t size() const;
  std::string to_json() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> entries_;
};

// "9606|Homo sapiens", "Q Exactive|MS:1001911", "MS:1001911" -> term and
// the remaining text as label.
std::optional<OntologyTermRef> parse_term_cell(std::string_view cell, const ColumnRule& rule,
                                               const NamespaceRegistry& registry, std::string* label = nullptr);

// Sample layout of one record: the collection entity (with title) and the
// sample entity, whose edges reach its UAI, sampling process and organism.
// Throws UnmappedColumn in strict mode.
std::vector<NodeSpec> apply_mapping(const SampleRecord& record, const MappingContext& ctx,
                                    const UriSpec& organism, MappingDictionary& dictionary,
                                    RunReport& report);

struct MetadataGraph {
  std::vector<NodeSpec> specs;
  MappingDictionary dictionary;
  OrganismIndividuals organisms;
};

MetadataGraph map_metadata(const std::vector<SampleRecord>& records, const MappingContext& ctx,
                           RunReport& report);

}  // namespace mskg
