#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mskg/namespaces.hpp"

namespace mskg {

// A controlled-vocabulary class, individual or property, by prefix + local id.
struct OntologyTermRef {
  std::string prefix;
  std::string local_id;
  std::optional<std::string> label;
  std::string source_ontology;

  OntologyTermRef() = default;
  OntologyTermRef(std::string p, std::string local) : prefix(std::move(p)), local_id(std::move(local)) {}

  std::string curie() const { return prefix + ":" + local_id; }

  friend bool operator==(const OntologyTermRef& a, const OntologyTermRef& b) {
    return a.prefix == b.prefix && a.local_id == b.local_id;
  }
  friend auto operator<=>(const OntologyTermRef& a, const OntologyTermRef& b) {
    if (auto c = a.prefix <=> b.prefix; c != 0) return c;
    return a.local_id <=> b.local_id;
  }
};

// Throws UnknownPrefix.
std::string expand(const OntologyTermRef& term, const NamespaceRegistry& registry);

// "MS:1002894" -> term. The prefix must be registered (UnknownPrefix).
OntologyTermRef parse_curie(std::string_view curie, const NamespaceRegistry& registry);

// Full IRI or CURIE -> term, if the registry can express it.
std::optional<OntologyTermRef> to_term(std::string_view iri_or_curie,
                                       const NamespaceRegistry& registry);

namespace xsd {
inline constexpr std::string_view kString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kFloat = "http://www.w3.org/2001/XMLSchema#float";
inline constexpr std::string_view kBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kAnyUri = "http://www.w3.org/2001/XMLSchema#anyURI";
}  // namespace xsd

struct TypedLiteral {
  std::string lexical;
  std::string datatype;

  friend bool operator==(const TypedLiteral&, const TypedLiteral&) = default;
  friend auto operator<=>(const TypedLiteral&, const TypedLiteral&) = default;
};

// NFC + trim; decimals/integers are validated and put in canonical form.
// Throws InvalidLiteral.
TypedLiteral make_literal(std::string_view lexical, std::string_view datatype = xsd::kString);
TypedLiteral string_literal(std::string_view lexical);
TypedLiteral decimal_literal(std::string_view lexical);
TypedLiteral integer_literal(long long value);

// Canonical xsd:decimal lexical form ("+01.50" -> "1.5", "1e-3" -> "0.001", "34" -> "34.0").
std::optional<std::string> canonical_decimal(std::string_view s);
std::optional<std::string> canonical_integer(std::string_view s);

// Vocabulary used across emitters and queries.
namespace vocab {
inline OntologyTermRef t(const char* p, const char* l) { return OntologyTermRef(p, l); }

inline const OntologyTermRef kRdfType = t("rdf", "type");
inline const OntologyTermRef kRdfsLabel = t("rdfs", "label");
inline const OntologyTermRef kProvEntity = t("prov", "Entity");
inline const OntologyTermRef kProvActivity = t("prov", "Activity");
inline const OntologyTermRef kProvSoftwareAgent = t("prov", "SoftwareAgent");
inline const OntologyTermRef kProvValue = t("prov", "value");
inline const OntologyTermRef kProvHadMember = t("prov", "had_member");
inline const OntologyTermRef kProvHasPrimarySource = t("prov", "hasPrimarySource");
inline const OntologyTermRef kProvWasDerivedFrom = t("prov", "wasDerivedFrom");
inline const OntologyTermRef kProvWasGeneratedBy = t("prov", "wasGeneratedBy");
inline const OntologyTermRef kProvWasAssociatedWith = t("prov", "wasAssociatedWith");
inline const OntologyTermRef kProvUsed = t("prov", "used");
inline const OntologyTermRef kHasAttribute = t("SIO", "000008");
inline const OntologyTermRef kHasIdentifier = t("SIO", "000675");
inline const OntologyTermRef kIsDesignatedBy = t("SIO", "000223");
inline const OntologyTermRef kHasUnit = t("SIO", "000221");
inline const OntologyTermRef kSampleClass = t("SIO", "001050");
inline const OntologyTermRef kDctTitle = t("dct", "title");
inline const OntologyTermRef kDctSource = t("dct", "source");
inline const OntologyTermRef kDcatDistribution = t("dcat", "Distribution");
inline const OntologyTermRef kDcatDataset = t("dcat", "Dataset");
inline const OntologyTermRef kDcatHasDistribution = t("dcat", "distribution");
inline const OntologyTermRef kDcatDownloadUrl = t("dcat", "downloadURL");
inline const OntologyTermRef kDcatAccessUrl = t("dcat", "accessURL");
inline const OntologyTermRef kMolecularAnnotation = t("MBS", "MolecularAnnotation");
inline const OntologyTermRef kUai = t("MBS", "UniversalAnnotationIdentifier");
inline const OntologyTermRef kCollectionId = t("MBS", "collectionID");
inline const OntologyTermRef kMzml = t("MBS", "mzML");
inline const OntologyTermRef kScan = t("MBS", "scan");
inline const OntologyTermRef kAnnotationFile = t("MBS", "annotationFile");
inline const OntologyTermRef kHitNumber = t("MBS", "hitNumber");
inline const OntologyTermRef kFeatureId = t("MBS", "featureID");
inline const OntologyTermRef kFeatureTable = t("MBS", "featureTable");
inline const OntologyTermRef kRepository = t("MBS", "repository");
inline const OntologyTermRef kIdentificationResult = t("MS", "1001405");
inline const OntologyTermRef kMqScore = t("MBS", "MQScore");
inline const OntologyTermRef kSharedPeaks = t("MS", "1003306");
inline const OntologyTermRef kMzErrorPpm = t("MBS", "MZErrorPPM");
inline const OntologyTermRef kMassDiff = t("MBS", "MassDiff");
inline const OntologyTermRef kLibrarySpectrum = t("MS", "1003172");
inline const OntologyTermRef kInchiKey = t("MS", "1002894");
inline const OntologyTermRef kOrganism = t("MBS", "Organism");
inline const OntologyTermRef kSamplingProcess = t("MBS", "SamplingProcess");
inline const OntologyTermRef kCollection = t("MBS", "Collection");
}  // namespace vocab

}  // namespace mskg
