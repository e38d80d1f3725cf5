#include "mskg/curation.hpp"

#include <algorithm>
#include <cstdio>

#include "mskg/error.hpp"
#include "mskg/table.hpp"
#include "mskg/text.hpp"

namespace mskg {

CurationFile CurationFile::from_tsv(std::string_view content, const NamespaceRegistry& registry) {
  Table t = parse_table(content, '\t');
  // The header row is optional; columns are positional.
  std::vector<std::vector<std::string>> rows;
  std::string first = t.header.empty() ? "" : text::to_lower_ascii(text::trim(t.header[0]));
  if (first != "column" && first != "column_name") rows.push_back(t.header);
  rows.insert(rows.end(), t.rows.begin(), t.rows.end());
  CurationFile out;
  for (auto& r : rows) {
    if (r.size() == 1 && text::trim(r[0]).empty()) continue;
    if (r.size() < 3) throw Error(ErrorCode::MissingHeader, "curation row needs column, raw value and term");
    r.resize(4);
    CurationRow row;
    row.column = std::string(text::trim(r[0]));
    row.raw_value = text::normalize_label(r[1]);
    std::string chosen(text::trim(r[2]));
    if (chosen != "REJECT") {
      auto term = to_term(chosen, registry);
      if (!term) throw Error(ErrorCode::UnknownPrefix, "curated term does not resolve: " + chosen);
      row.chosen = *term;
    }
    row.note = r[3];
    out.add(std::move(row));
  }
  return out;
}

CurationFile CurationFile::load(const std::string& path, const NamespaceRegistry& registry) {
  return from_tsv(text::read_file(path), registry);
}

void CurationFile::add(CurationRow row) {
  auto key = std::make_pair(row.column, text::normalize_label(row.raw_value));
  if (by_key_.count(key))
    throw Error(ErrorCode::ConfigError,
                "duplicate curation row (" + key.first + ", " + key.second + ")");
  by_key_.emplace(key, rows_.size());
  rows_.push_back(std::move(row));
}

const CurationRow* CurationFile::find(std::string_view column, std::string_view raw) const {
  auto it = by_key_.find({std::string(column), text::normalize_label(raw)});
  return it == by_key_.end() ? nullptr : &rows_[it->second];
}

const AccuracyAtK& AccuracyReport::at(int k) const {
  for (const auto& a : by_k)
    if (a.k == k) return a;
  throw Error(ErrorCode::InvalidSpec, "k=" + std::to_string(k) + " was not evaluated");
}

std::string AccuracyReport::to_tsv() const {
  auto pct = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v * 100.0);
    return std::string(buf);
  };
  std::vector<std::string> header{"top_k", "averaging"};
  for (const auto& [c, n] : rows_per_column) header.push_back(c);
  header.push_back("all");
  std::vector<std::vector<std::string>> rows;
  for (const auto& a : by_k) {
    std::vector<std::string> r{"top-" + std::to_string(a.k), "per-column"};
    for (const auto& [c, n] : rows_per_column) r.push_back(pct(a.per_column.at(c)));
    r.push_back("");
    rows.push_back(r);
    rows.push_back({"top-" + std::to_string(a.k), "macro"});
    rows.back().resize(header.size());
    rows.back().back() = pct(a.macro);
    rows.push_back({"top-" + std::to_string(a.k), "micro"});
    rows.back().resize(header.size());
    rows.back().back() = pct(a.micro);
  }
  return mskg::to_tsv(header, rows);
}

AccuracyReport evaluate_matching(const CurationFile& curation, const TermIndex& index,
                                 const std::vector<int>& k_values) {
  return evaluate_matching(
      curation, [&](std::string_view raw, int k) { return match_term(raw, index, k); }, k_values);
}

AccuracyReport evaluate_matching(const CurationFile& curation, const Matcher& matcher,
                                 const std::vector<int>& k_values) {
  if (curation.empty()) throw Error(ErrorCode::EmptyInput, "empty curation file");
  if (k_values.empty()) throw Error(ErrorCode::InvalidSpec, "no k values");
  int max_k = *std::max_element(k_values.begin(), k_values.end());

  AccuracyReport report;
  // hits[column][k]
  std::map<std::string, std::map<int, std::size_t>> hits;
  for (const auto& row : curation.rows()) {
    if (!row.chosen) {
      ++report.rejected;
      continue;
    }
    ++report.rows_per_column[row.column];
    auto& column_hits = hits[row.column];
    std::vector<MatchCandidate> cands;
    if (!text::trim(row.raw_value).empty()) cands = matcher(row.raw_value, max_k);
    for (int k : k_values) {
      column_hits[k];  // ensure presence
      for (const auto& c : cands) {
        if (c.rank > k) break;
        if (c.term == *row.chosen) {
          ++column_hits[k];
          break;
        }
      }
    }
  }
  for (int k : k_values) {
    AccuracyAtK a;
    a.k = k;
    std::size_t pooled_hits = 0, pooled_total = 0;
    for (const auto& [column, total] : report.rows_per_column) {
      std::size_t h = hits[column][k];
      a.per_column[column] = static_cast<double>(h) / static_cast<double>(total);
      a.macro += a.per_column[column];
      pooled_hits += h;
      pooled_total += total;
    }
    if (!report.rows_per_column.empty()) {
      a.macro /= static_cast<double>(report.rows_per_column.size());
      a.micro = static_cast<double>(pooled_hits) / static_cast<double>(pooled_total);
    }
    report.by_k.push_back(std::move(a));
  }
  return report;
}

}  // namespace mskg
