#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/term.hpp"

namespace mskg {

enum class Strategy { Reused, Mapped, Skip };
enum class ValueParser { None, SolventMixture, MethodPhrase };
enum class RuleSubject { Sample, Process, Organism };

// One column of the declarative metadata mapping.
struct ColumnRule {
  std::string column;
  Strategy strategy = Strategy::Skip;
  std::optional<OntologyTermRef> target_class;
  OntologyTermRef predicate = vocab::kHasAttribute;
  std::optional<std::string> datatype;  // full IRI; numeric columns use xsd:decimal
  ValueParser parser = ValueParser::None;
  RuleSubject subject = RuleSubject::Sample;
  // Reused columns whose cells carry an ontology id ("9606|Homo sapiens",
  // "Q Exactive|MS:1001911") are emitted as direct term references.
  bool reuse_term = false;
  std::optional<std::string> term_prefix;  // prefix for bare numeric ids
  bool as_type = false;                    // the term becomes an rdf:type
  // Mapped individuals get IRIs under this stem instead of hashed IRIs.
  std::optional<OntologyTermRef> iri_stem;
  std::string concept_name;  // URI concept_name segment; defaults to kebab(column)
};

struct MappingManifest {
  std::string filename_column = "filename";
  std::string collection_column = "ATTRIBUTE_DatasetAccession";
  std::optional<std::string> title_column;
  std::vector<std::string> missing_markers = {"", "NA", "N/A", "nan", "not specified",
                                              "not applicable", "ML import: not available"};
  std::optional<Strategy> default_strategy;
  std::vector<std::string> organism_columns = {
      "NCBITaxonomy", "Country",   "ENVOEnvironmentBiomeIndex", "ENVOEnvironmentMaterialIndex",
      "BiologicalSex", "LifeStage", "HealthStatus",              "AgeInYears"};
  std::set<std::string> curation_required;
  std::vector<ColumnRule> rules;

  // Throws ConfigError when a Mapped rule lacks a target class.
  void validate() const;
  const ColumnRule* rule(std::string_view column) const;
  bool is_missing(std::string_view normalized_cell) const;
  bool is_reserved(std::string_view column) const;

  static MappingManifest from_json(std::string_view json, const NamespaceRegistry& registry);
  static MappingManifest load(const std::string& path, const NamespaceRegistry& registry);
};

std::string_view to_string(Strategy s);

struct SampleRecord {
  std::size_t row_id = 0;
  std::string filename;
  std::string collection_id;
  std::optional<std::string> title;
  // Absent cells (missing markers) are nullopt.
  std::map<std::string, std::optional<std::string>> columns;

  const std::optional<std::string>* cell(std::string_view column) const;
};

struct MetadataTable {
  std::vector<std::string> columns;  // header order, reserved columns excluded
  std::vector<std::string> unknown_columns;
  std::vector<SampleRecord> records;
  std::vector<std::string> warnings;
};

// Tab-delimited Pan-ReDU style export. Cells are NFC-normalized and trimmed;
// configured missing markers become absent. Throws MissingHeader,
// DuplicateColumn, MissingMandatoryColumn.
MetadataTable parse_metadata(std::string_view content, const MappingManifest& manifest);
MetadataTable load_metadata(const std::string& path, const MappingManifest& manifest);

struct MissingnessRow {
  std::string column;
  std::size_t missing = 0;
  std::size_t total = 0;
  double pct = 0.0;
  bool above_90 = false;
};

// Percent missing per column, sorted desc with ties by name. Throws EmptyInput.
std::vector<MissingnessRow> missingness_report(const std::vector<SampleRecord>& records);
std::string missingness_tsv(const std::vector<MissingnessRow>& rows);

}  // namespace mskg
