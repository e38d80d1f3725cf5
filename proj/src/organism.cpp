#include "mskg/organism.hpp"

#include <sstream>

#include "mskg/table.hpp"
#include "mskg/text.hpp"

namespace mskg {

OrganismKey organism_key(const SampleRecord& record, const std::vector<std::string>& columns) {
  OrganismKey key;
  key.fields.reserve(columns.size());
  for (const auto& c : columns) {
    const auto* cell = record.cell(c);
    if (cell && *cell && !(*cell)->empty())
      key.fields.push_back(text::normalize_label(**cell));
    else
      key.fields.emplace_back(kMissingSentinel);
  }
  return key;
}

OrganismIndividuals build_organism_individuals(const std::vector<SampleRecord>& records,
                                               const std::vector<std::string>& columns,
                                               std::string_view global_prefix) {
  OrganismIndividuals out;
  out.columns = columns;
  out.total = records.size();
  out.per_record.reserve(records.size());
  for (const auto& r : records) {
    OrganismKey key = organism_key(r, columns);
    if (!out.uris.contains(key)) {
      Attributes attrs;
      for (std::size_t i = 0; i < columns.size(); ++i) attrs[columns[i]] = key.fields[i];
      out.uris.emplace(key, mint_uri("organism", attrs, std::nullopt, global_prefix));
    }
    out.per_record.push_back(std::move(key));
  }
  if (out.total > 0)
    out.dedup_ratio = static_cast<double>(out.total - out.uris.size()) / static_cast<double>(out.total);
  return out;
}

std::string OrganismIndividuals::to_tsv() const {
  std::map<OrganismKey, std::size_t> counts;
  for (const auto& k : per_record) ++counts[k];
  std::vector<std::string> header = {"organism_uri", "records"};
  header.insert(header.end(), columns.begin(), columns.end());
  std::vector<std::vector<std::string>> rows;
  for (const auto& [key, uri] : uris) {
    std::vector<std::string> row = {uri.str(), std::to_string(counts[key])};
    row.insert(row.end(), key.fields.begin(), key.fields.end());
    rows.push_back(std::move(row));
  }
  std::ostringstream summary;
  summary << "# total=" << total << " distinct=" << uris.size() << " dedup_ratio=" << dedup_ratio << "\n";
  return summary.str() + mskg::to_tsv(header, rows);
}

}  // namespace mskg
