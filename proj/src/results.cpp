#include "mskg/results.hpp"

#include <algorithm>
#include <cstdlib>
#include <json.hpp>

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

std::optional<std::size_t> ResultTable::column(std::string_view var) const {
  if (var.starts_with('?')) var.remove_prefix(1);
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == var) return i;
  return std::nullopt;
}

namespace {

std::string tsv_row(const std::vector<std::optional<Term>>& row) {
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) line += '\t';
    if (row[i]) line += row[i]->nt();
  }
  return line;
}

}  // namespace

std::string ResultTable::to_tsv() const {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += '\t';
    out += '?' + vars[i];
  }
  out += '\n';
  for (const auto& row : rows) out += tsv_row(row) + '\n';
  return out;
}

std::string ResultTable::to_json() const {
  nlohmann::ordered_json j;
  j["head"]["vars"] = vars;
  auto& bindings = j["results"]["bindings"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < vars.size() && i < row.size(); ++i) {
      if (!row[i]) continue;
      const Term& t = *row[i];
      nlohmann::ordered_json cell;
      cell["type"] = t.is_iri() ? "uri" : "literal";
      cell["value"] = t.value;
      if (!t.lang.empty()) cell["xml:lang"] = t.lang;
      else if (t.is_literal() && !t.datatype.empty()) cell["datatype"] = t.datatype;
      b[vars[i]] = std::move(cell);
    }
    bindings.push_back(std::move(b));
  }
  return j.dump(1);
}

ResultTable ResultTable::from_json(std::string_view body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, std::string("query results are not JSON: ") + e.what());
  }
  ResultTable t;
  try {
    for (const auto& v : j.at("head").at("vars")) t.vars.push_back(v.get<std::string>());
    for (const auto& b : j.at("results").at("bindings")) {
      std::vector<std::optional<Term>> row(t.vars.size());
      for (std::size_t i = 0; i < t.vars.size(); ++i) {
        auto it = b.find(t.vars[i]);
        if (it == b.end()) continue;
        std::string type = it->at("type").get<std::string>();
        std::string value = it->at("value").get<std::string>();
        if (type == "uri") {
          row[i] = Term::iri(value);
        } else if (type == "literal" || type == "typed-literal") {
          row[i] = Term::literal(value, it->value("datatype", ""), it->value("xml:lang", ""));
        } else {
          throw Error(ErrorCode::MalformedResponse, "unsupported binding type '" + type + "'");
        }
      }
      t.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, std::string("unexpected results layout: ") + e.what());
  }
  return t;
}

ResultTable ResultTable::canonical() const {
  ResultTable out = *this;
  std::vector<std::pair<std::string, std::size_t>> keyed;
  for (std::size_t i = 0; i < rows.size(); ++i) keyed.emplace_back(tsv_row(rows[i]), i);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 0; i < keyed.size(); ++i) out.rows[i] = rows[keyed[i].second];
  return out;
}

std::optional<double> numeric_value(const Term& t) {
  if (!t.is_literal()) return std::nullopt;
  std::string s(text::trim(t.value));
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

}  // namespace mskg
