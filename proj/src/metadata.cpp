#include "mskg/metadata.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "mskg/error.hpp"
#include "mskg/report.hpp"
#include "mskg/table.hpp"
#include "mskg/text.hpp"

namespace mskg {

std::string RunReport::to_tsv() const {
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : entries) rows.push_back({e.severity, e.source, e.location, e.message});
  return mskg::to_tsv({"severity", "source", "location", "message"}, rows);
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Reused: return "Reused";
    case Strategy::Mapped: return "Mapped";
    case Strategy::Skip: return "Skip";
  }
  return "?";
}

namespace {

Strategy parse_strategy(const std::string& s) {
  if (s == "Reused") return Strategy::Reused;
  if (s == "Mapped") return Strategy::Mapped;
  if (s == "Skip" || s == "-") return Strategy::Skip;
  throw Error(ErrorCode::ConfigError, "unknown strategy " + s);
}

ValueParser parse_parser(const std::string& s) {
  if (s == "None" || s.empty()) return ValueParser::None;
  if (s == "SolventMixture") return ValueParser::SolventMixture;
  if (s == "MethodPhrase") return ValueParser::MethodPhrase;
  throw Error(ErrorCode::ConfigError, "unknown parser " + s);
}

RuleSubject parse_subject(const std::string& s) {
  if (s == "sample") return RuleSubject::Sample;
  if (s == "process") return RuleSubject::Process;
  if (s == "organism") return RuleSubject::Organism;
  throw Error(ErrorCode::ConfigError, "unknown rule subject " + s);
}

}  // namespace

void MappingManifest::validate() const {
  std::set<std::string> seen;
  for (const auto& r : rules) {
    if (!seen.insert(r.column).second)
      throw Error(ErrorCode::ConfigError, "duplicate rule for column " + r.column);
    if (r.strategy == Strategy::Mapped && !r.target_class)
      throw Error(ErrorCode::ConfigError, "Mapped rule without target_class: " + r.column);
    if (r.parser != ValueParser::None && r.strategy == Strategy::Skip)
      throw Error(ErrorCode::ConfigError, "Skip rule with a parser: " + r.column);
  }
}

const ColumnRule* MappingManifest::rule(std::string_view column) const {
  for (const auto& r : rules)
    if (r.column == column) return &r;
  return nullptr;
}

bool MappingManifest::is_missing(std::string_view cell) const {
  for (const auto& m : missing_markers)
    if (text::casefold(m) == text::casefold(cell)) return true;
  return false;
}

bool MappingManifest::is_reserved(std::string_view column) const {
  return column == filename_column || column == collection_column ||
         (title_column && column == *title_column);
}

MappingManifest MappingManifest::from_json(std::string_view json, const NamespaceRegistry& registry) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("manifest: ") + e.what());
  }
  MappingManifest m;
  try {
    if (j.contains("filename_column")) m.filename_column = j["filename_column"];
    if (j.contains("collection_column")) m.collection_column = j["collection_column"];
    if (j.contains("title_column") && !j["title_column"].is_null()) m.title_column = j["title_column"];
    if (j.contains("missing_markers")) m.missing_markers = j["missing_markers"].get<std::vector<std::string>>();
    if (j.contains("default_strategy") && !j["default_strategy"].is_null())
      m.default_strategy = parse_strategy(j["default_strategy"]);
    if (j.contains("organism_columns"))
      m.organism_columns = j["organism_columns"].get<std::vector<std::string>>();
    if (j.contains("curation_required"))
      for (const auto& c : j["curation_required"]) m.curation_required.insert(c.get<std::string>());
    for (const auto& r : j.value("rules", nlohmann::json::array())) {
      ColumnRule rule;
      rule.column = r.at("column");
      rule.strategy = parse_strategy(r.value("strategy", "Skip"));
      if (r.contains("target_class")) rule.target_class = parse_curie(r["target_class"].get<std::string>(), registry);
      if (r.contains("predicate")) rule.predicate = parse_curie(r["predicate"].get<std::string>(), registry);
      if (r.contains("datatype")) rule.datatype = registry.expand_curie(r["datatype"].get<std::string>());
      rule.parser = parse_parser(r.value("parser", "None"));
      rule.subject = parse_subject(r.value("subject", "sample"));
      rule.reuse_term = r.value("reuse", "literal") == "term";
      if (r.contains("term_prefix")) {
        rule.term_prefix = r["term_prefix"].get<std::string>();
        if (!registry.contains(*rule.term_prefix)) throw Error(ErrorCode::UnknownPrefix, *rule.term_prefix);
      }
      rule.as_type = r.value("as_type", false);
      if (r.contains("iri_stem")) rule.iri_stem = parse_curie(r["iri_stem"].get<std::string>(), registry);
      rule.concept_name = r.value("concept", text::kebab(rule.column));
      m.rules.push_back(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

MappingManifest MappingManifest::load(const std::string& path, const NamespaceRegistry& registry) {
  return from_json(text::read_file(path), registry);
}

const std::optional<std::string>* SampleRecord::cell(std::string_view column) const {
  auto it = columns.find(std::string(column));
  return it == columns.end() ? nullptr : &it->second;
}

MetadataTable parse_metadata(std::string_view content, const MappingManifest& manifest) {
  Table t = parse_table(content, '\t');
  std::set<std::string> seen;
  for (const auto& h : t.header) {
    if (h.empty()) throw Error(ErrorCode::MissingHeader, "blank column name in header");
    if (!seen.insert(h).second) throw Error(ErrorCode::DuplicateColumn, h);
  }
  auto fcol = t.column(manifest.filename_column);
  auto ccol = t.column(manifest.collection_column);
  if (!fcol) throw Error(ErrorCode::MissingMandatoryColumn, manifest.filename_column);
  if (!ccol) throw Error(ErrorCode::MissingMandatoryColumn, manifest.collection_column);
  std::optional<std::size_t> tcol;
  if (manifest.title_column) tcol = t.column(*manifest.title_column);

  MetadataTable out;
  for (const auto& h : t.header) {
    if (manifest.is_reserved(h)) continue;
    out.columns.push_back(h);
    if (!manifest.rule(h)) out.unknown_columns.push_back(h);
  }
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    SampleRecord rec;
    rec.row_id = r + 1;
    auto value = [&](std::size_t i) -> std::optional<std::string> {
      std::string n(text::trim(text::nfc(row[i])));
      if (manifest.is_missing(n)) return std::nullopt;
      return n;
    };
    auto filename = value(*fcol);
    auto collection = value(*ccol);
    if (!filename || !collection) {
      out.warnings.push_back("row " + std::to_string(rec.row_id) +
                             ": missing filename or collection, skipped");
      continue;
    }
    rec.filename = *filename;
    rec.collection_id = *collection;
    if (tcol) rec.title = value(*tcol);
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (manifest.is_reserved(t.header[i])) continue;
      rec.columns.emplace(t.header[i], value(i));
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

MetadataTable load_metadata(const std::string& path, const MappingManifest& manifest) {
  return parse_metadata(text::read_file(path), manifest);
}

std::vector<MissingnessRow> missingness_report(const std::vector<SampleRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records");
  std::map<std::string, MissingnessRow> by_column;
  for (const auto& r : records) {
    for (const auto& [col, v] : r.columns) {
      auto& row = by_column[col];
      row.column = col;
      ++row.total;
      if (!v || v->empty()) ++row.missing;
    }
  }
  std::vector<MissingnessRow> out;
  for (auto& [col, row] : by_column) {
    // A column absent from some records counts as missing there.
    row.missing += records.size() - row.total;
    row.total = records.size();
    row.pct = 100.0 * static_cast<double>(row.missing) / static_cast<double>(row.total);
    row.above_90 = row.pct > 90.0;
    out.push_back(row);
  }
  std::stable_sort(out.begin(), out.end(), [](const MissingnessRow& a, const MissingnessRow& b) {
    if (a.pct != b.pct) return a.pct > b.pct;
    return a.column < b.column;
  });
  return out;
}

std::string missingness_tsv(const std::vector<MissingnessRow>& rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : rows) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.2f", r.pct);
    out.push_back({r.column, std::to_string(r.missing), std::to_string(r.total), pct,
                   r.above_90 ? "yes" : "no"});
  }
  return to_tsv({"column", "missing", "total", "pct_missing", "above_90"}, out);
}

}  // namespace mskg
