#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/node.hpp"
#include "mskg/report.hpp"
#include "mskg/term_index.hpp"
#include "mskg/uai.hpp"
#include "mskg/uri.hpp"

namespace mskg {

enum class Workflow { MN, FBMN };
enum class GnpsStrategy { DirectMap, Literal, OntologyLookup, Ignore };

std::string_view to_string(Workflow w);

// One column entry of the GNPS column manifest. Entries with a `field`
// feed the fixed annotation layout; the others are harmonized generically.
struct GnpsColumnRule {
  std::string field;
  std::vector<std::string> names;  // accepted header spellings, first match wins
  GnpsStrategy strategy = GnpsStrategy::Literal;
  std::optional<OntologyTermRef> target_class;
  std::optional<OntologyTermRef> predicate;
  std::optional<std::string> datatype;
  bool on_library = false;  // attach to the library spectrum instead of the annotation
  bool mandatory = false;
};

struct GnpsColumnManifest {
  std::string annotation_pattern = "librarysearch|annotation|library_hits";
  std::string quant_pattern = "quant";
  std::string cluster_pattern = "clusterinfo";
  std::vector<GnpsColumnRule> rules;

  const GnpsColumnRule* field(std::string_view name) const;

  static GnpsColumnManifest from_json(std::string_view json, const NamespaceRegistry& registry);
  static GnpsColumnManifest load(const std::string& path, const NamespaceRegistry& registry);
};

struct IdentificationScores {
  double mq_score = 0.0;
  std::string mq_lexical;
  long long shared_peaks = 0;
  std::optional<std::string> mz_error_ppm;  // canonical decimal lexical forms
  std::optional<std::string> mass_diff;
};

struct ClassificationSet {
  struct ClassyFire {
    std::optional<std::string> kingdom, superclass, klass, subclass;
  };
  struct NpClassifier {
    std::optional<std::string> pathway, superclass, klass;
  };
  std::optional<ClassyFire> classyfire;
  std::optional<NpClassifier> npclassifier;
};

struct LibrarySpectrumSpec {
  std::string accession;
  std::optional<std::string> precursor_mz;
  std::optional<std::string> adduct;
  std::optional<std::string> inchikey;
  std::optional<std::string> compound_name;
  std::optional<std::string> instrument;
  std::optional<std::string> ionization;
  std::optional<std::string> quality;
};

struct AnnotationRecord {
  Uai uai;
  Workflow workflow = Workflow::MN;
  std::string library_spectrum_key;
  IdentificationScores identification;
  ClassificationSet classifications;
  std::optional<std::string> compound_name;
  std::optional<std::string> inchikey;
  LibrarySpectrumSpec library;
  std::map<std::string, std::string> raw_columns;  // generically harmonized columns
  std::size_t row = 0;
};

struct GnpsJob {
  std::string job_id;
  std::string software = "GNPS";
  std::string version;
  Workflow workflow = Workflow::MN;
  std::string bundle_name;
  std::string annotation_path;  // relative to the bundle
  std::optional<std::string> quant_path;
  std::optional<std::string> default_collection;
  std::map<std::string, std::string> titles;  // collection id -> title
};

struct GnpsBundle {
  GnpsJob job;
  std::vector<AnnotationRecord> records;
  const GnpsColumnManifest* manifest = nullptr;
};

// FBMN iff a quantification table is present or declared in job.tsv.
// Throws UnknownLayout.
Workflow detect_workflow(const std::string& bundle_path, const GnpsColumnManifest& manifest);

// Throws UnknownLayout, MissingMandatoryColumn. Rows that cannot form a
// valid GNPS annotation are skipped and reported.
GnpsBundle load_gnps_job(const std::string& bundle_path, const GnpsColumnManifest& manifest,
                         RunReport& report);

struct GnpsEmitContext {
  const NamespaceRegistry* registry = nullptr;
  const TermIndex* index = nullptr;
  std::string global_prefix = std::string(kDefaultGlobalPrefix);
};

struct AnnotationNodes {
  NodeSpec annotation;
  std::optional<NodeSpec> library;  // destined for the shared library document
};

AnnotationNodes emit_annotation_nodes(const AnnotationRecord& rec, const GnpsJob& job,
                                      const GnpsColumnManifest& manifest, const GnpsEmitContext& ctx);

struct BundleSpecs {
  std::vector<NodeSpec> bundle;
  std::vector<NodeSpec> library;
};

BundleSpecs bundle_specs(const GnpsBundle& bundle, const GnpsEmitContext& ctx);

}  // namespace mskg
