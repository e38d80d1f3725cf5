#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mskg/metadata.hpp"
#include "mskg/uri.hpp"

namespace mskg {

inline constexpr std::string_view kMissingSentinel = "NA";

// Normalized values of the organism columns, in manifest order. Absent
// cells hold kMissingSentinel.
struct OrganismKey {
  std::vector<std::string> fields;

  friend bool operator==(const OrganismKey&, const OrganismKey&) = default;
  friend auto operator<=>(const OrganismKey&, const OrganismKey&) = default;
};

OrganismKey organism_key(const SampleRecord& record, const std::vector<std::string>& columns);

struct OrganismIndividuals {
  std::vector<std::string> columns;
  std::map<OrganismKey, UriSpec> uris;
  std::vector<OrganismKey> per_record;  // parallel to the input records
  std::size_t total = 0;
  double dedup_ratio = 0.0;  // (total - distinct) / total

  const UriSpec& uri_for(std::size_t record_index) const { return uris.at(per_record.at(record_index)); }
  std::string to_tsv() const;
};

// One URI per distinct key, minted from the column -> value map.
OrganismIndividuals build_organism_individuals(const std::vector<SampleRecord>& records,
                                               const std::vector<std::string>& columns,
                                               std::string_view global_prefix = kDefaultGlobalPrefix);

}  // namespace mskg
