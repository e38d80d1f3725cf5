#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mskg {

// Universal Annotation Identifier: a USI extended with annotation-file,
// hit-number and feature-level components. Every component is optional;
// empty strings are treated as absent.
struct Uai {
  std::optional<std::string> collection_id;
  std::optional<std::string> mzml;
  std::optional<std::string> scan;
  std::optional<std::string> annotation_file;
  std::optional<std::uint32_t> hit_number;
  std::optional<std::string> feature_id;
  std::optional<std::string> feature_table;

  friend bool operator==(const Uai&, const Uai&) = default;

  bool empty() const;
};

// Component names as used in linkage rules and reports.
namespace uai_component {
inline constexpr std::string_view kCollectionId = "collection_id";
inline constexpr std::string_view kMzml = "mzml";
inline constexpr std::string_view kScan = "scan";
inline constexpr std::string_view kAnnotationFile = "annotation_file";
inline constexpr std::string_view kHitNumber = "hit_number";
inline constexpr std::string_view kFeatureId = "feature_id";
inline constexpr std::string_view kFeatureTable = "feature_table";
}  // namespace uai_component

using ComponentSet = std::set<std::string>;

// Structural invariants: at least one component, annotation file implies
// collection, positive hit number. Returns the violations found.
std::vector<std::string> uai_violations(const Uai& u);

// GNPS-produced identifiers additionally require hit_number == 1.
std::vector<std::string> uai_gnps_violations(const Uai& u);

// mzspec:<coll>:<mzml>[:scan:<scan>][:annot:<file>:<hit>][:feature:<fid>:ftable:<table>]
// Components are percent-escaped for ':' and '%'.
std::string uai_serialize(const Uai& u);

// Throws UaiError (MalformedUai) with the offset of the first violation.
Uai uai_parse(std::string_view s);

// Components present in both and equal; empty when any component present in
// both differs.
ComponentSet uai_shared_components(const Uai& a, const Uai& b);

ComponentSet uai_present_components(const Uai& u);

}  // namespace mskg
