#include "mskg/solvent.hpp"

#include <cctype>
#include <charconv>
#include <regex>

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

namespace {

[[noreturn]] void fail(std::string_view raw, const std::string& why) {
  throw Error(ErrorCode::UnparseableMixture, "'" + std::string(raw) + "': " + why);
}

std::optional<double> parse_positive(std::string_view s) {
  s = text::trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0)) return std::nullopt;
  return v;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

// Splits names on '/' always and on '-' between two letters.
std::vector<std::string> split_names(std::string_view s, const TermIndex* index) {
  std::vector<std::string> out;
  for (const auto& slash_part : text::split(s, '/')) {
    std::string part(text::trim(slash_part));
    if (resolve_exact(part, index)) {
      out.push_back(part);
      continue;
    }
    std::string cur;
    for (std::size_t i = 0; i < part.size(); ++i) {
      char c = part[i];
      if (c == '-' && i > 0 && i + 1 < part.size() && is_letter(part[i - 1]) && is_letter(part[i + 1])) {
        out.emplace_back(text::trim(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    out.emplace_back(text::trim(cur));
  }
  return out;
}

const std::regex& additive_pattern() {
  static const std::regex re(
      R"(^\s*([0-9]*\.?[0-9]+)\s*(%|mM|uM|µM|nM|M|mg/mL|mg/L|ug/mL|µg/mL)\s*(.+?)\s*$)");
  return re;
}

}  // namespace

std::optional<OntologyTermRef> resolve_exact(std::string_view label, const TermIndex* index) {
  if (!index || text::trim(label).empty()) return std::nullopt;
  auto c = match_term(label, *index, 1);
  if (c.empty() || c[0].score < 1.0) return std::nullopt;
  return c[0].term;
}

std::optional<OntologyTermRef> unit_term(std::string_view unit) {
  if (unit == "%") return OntologyTermRef("UO", "0000187");
  if (unit == "M") return OntologyTermRef("UO", "0000062");
  if (unit == "mM") return OntologyTermRef("UO", "0000063");
  if (unit == "uM" || unit == "µM") return OntologyTermRef("UO", "0000064");
  if (unit == "nM") return OntologyTermRef("UO", "0000065");
  if (unit == "mg/mL") return OntologyTermRef("UO", "0000176");
  return std::nullopt;
}

SolventMixture parse_solvent_mixture(std::string_view raw_in, const TermIndex* index) {
  std::string raw = text::normalize_label(raw_in);
  if (raw.empty()) fail(raw_in, "empty value");

  // Top-level '+' separates the base mixture from additives.
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : raw) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) fail(raw, "unbalanced ')'");
    if (c == '+' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) fail(raw, "unbalanced '('");
  parts.push_back(cur);

  SolventMixture m;
  std::string base(text::trim(parts[0]));
  std::vector<double> ratio;
  if (auto open = base.find('('); open != std::string::npos) {
    auto close = base.find(')', open);
    if (close == std::string::npos || !text::trim(std::string_view(base).substr(close + 1)).empty())
      fail(raw, "ratio must close the component list");
    for (const auto& r : text::split(std::string_view(base).substr(open + 1, close - open - 1), ':')) {
      auto v = parse_positive(r);
      if (!v) fail(raw, "ratio entries must be positive numbers");
      ratio.push_back(*v);
    }
    base = std::string(text::trim(std::string_view(base).substr(0, open)));
  }
  if (base.empty()) fail(raw, "no components");
  auto names = split_names(base, index);
  for (const auto& n : names)
    if (n.empty()) fail(raw, "empty component name");
  if (!ratio.empty() && ratio.size() != names.size())
    fail(raw, std::to_string(names.size()) + " components but " + std::to_string(ratio.size()) +
                  " ratio entries");
  for (std::size_t i = 0; i < names.size(); ++i) {
    MixtureComponent c;
    c.name = names[i];
    c.chemical = resolve_exact(c.name, index);
    if (!c.chemical && index) m.warnings.push_back("unresolved component '" + c.name + "'");
    if (!ratio.empty()) c.proportion = ratio[i];
    m.components.push_back(std::move(c));
  }

  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::smatch match;
    std::string part(text::trim(parts[i]));
    if (!std::regex_match(part, match, additive_pattern()))
      fail(raw, "additive '" + part + "' is not '<number><unit> <name>'");
    MixtureAdditive a;
    a.concentration = *parse_positive(match[1].str());
    a.unit = match[2].str();
    a.name = text::normalize_label(match[3].str());
    a.chemical = resolve_exact(a.name, index);
    if (!a.chemical && index) m.warnings.push_back("unresolved additive '" + a.name + "'");
    m.additives.push_back(std::move(a));
  }
  return m;
}

std::string render_solvent_mixture(const SolventMixture& m) {
  std::string out;
  bool with_ratio = !m.components.empty() && m.components.front().proportion.has_value();
  for (std::size_t i = 0; i < m.components.size(); ++i) {
    if (i) out += '/';
    out += m.components[i].name;
  }
  if (with_ratio) {
    out += " (";
    for (std::size_t i = 0; i < m.components.size(); ++i) {
      if (i) out += ':';
      out += format_number(m.components[i].proportion.value_or(0.0));
    }
    out += ')';
  }
  for (const auto& a : m.additives) {
    out += " + " + format_number(a.concentration);
    if (a.unit != "%") out += ' ';
    out += a.unit + " " + a.name;
  }
  return out;
}

bool same_structure(const SolventMixture& a, const SolventMixture& b) {
  if (a.components.size() != b.components.size() || a.additives.size() != b.additives.size())
    return false;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    const auto &x = a.components[i], &y = b.components[i];
    if (x.name != y.name || x.proportion != y.proportion || x.chemical != y.chemical) return false;
  }
  for (std::size_t i = 0; i < a.additives.size(); ++i) {
    const auto &x = a.additives[i], &y = b.additives[i];
    if (x.name != y.name || x.unit != y.unit || x.concentration != y.concentration ||
        x.chemical != y.chemical)
      return false;
  }
  return true;
}

std::vector<std::string> parse_method_phrase(std::string_view raw) {
  std::vector<std::string> steps;
  std::string cur;
  auto flush = [&] {
    std::string s = text::normalize_label(cur);
    if (!s.empty()) steps.push_back(std::move(s));
    cur.clear();
  };
  for (char c : raw) {
    if (c == ';' || c == ',')
      flush();
    else
      cur.push_back(c);
  }
  flush();
  return steps;
}

}  // namespace mskg
