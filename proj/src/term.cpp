#include "mskg/term.hpp"

#include <cctype>

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

std::string expand(const OntologyTermRef& term, const NamespaceRegistry& registry) {
  return registry.expand(term.prefix, term.local_id);
}

OntologyTermRef parse_curie(std::string_view curie, const NamespaceRegistry& registry) {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos || colon == 0)
    throw Error(ErrorCode::ParseError, "not a CURIE: " + std::string(curie));
  OntologyTermRef t(std::string(curie.substr(0, colon)), std::string(curie.substr(colon + 1)));
  if (!registry.contains(t.prefix)) throw Error(ErrorCode::UnknownPrefix, t.prefix);
  return t;
}

std::optional<OntologyTermRef> to_term(std::string_view s, const NamespaceRegistry& registry) {
  if (s.starts_with("http://") || s.starts_with("https://")) {
    auto c = registry.compact(s);
    if (!c) return std::nullopt;
    return OntologyTermRef(c->first, c->second);
  }
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  std::string_view prefix = s.substr(0, colon);
  if (registry.contains(prefix))
    return OntologyTermRef(std::string(prefix), std::string(s.substr(colon + 1)));
  // OBO ids are often written with an upper-case prefix ("CHEBI:17790").
  for (const auto& [p, ns] : registry.entries())
    if (text::to_lower_ascii(p) == text::to_lower_ascii(prefix))
      return OntologyTermRef(p, std::string(s.substr(colon + 1)));
  return std::nullopt;
}

std::optional<std::string> canonical_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  if (s == "0") return std::string("0");
  return (neg ? "-" : "") + std::string(s);
}

std::optional<std::string> canonical_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp = canonical_integer(s.substr(e + 1));
    if (!exp || exp->size() > 6) return std::nullopt;
    exponent = std::stoll(*exp);
    s = s.substr(0, e);
  }
  std::string digits;
  long long point = -1;
  for (char c : s) {
    if (c == '.') {
      if (point >= 0) return std::nullopt;
      point = static_cast<long long>(digits.size());
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
    } else {
      return std::nullopt;
    }
  }
  if (digits.empty()) return std::nullopt;
  if (point < 0) point = static_cast<long long>(digits.size());
  point += exponent;
  // Place the decimal point, padding with zeros as needed.
  if (point < 0) {
    digits.insert(0, static_cast<std::size_t>(-point), '0');
    point = 0;
  }
  if (point > static_cast<long long>(digits.size()))
    digits.append(static_cast<std::size_t>(point) - digits.size(), '0');
  std::string int_part = digits.substr(0, static_cast<std::size_t>(point));
  std::string frac_part = digits.substr(static_cast<std::size_t>(point));
  while (int_part.size() > 1 && int_part.front() == '0') int_part.erase(0, 1);
  if (int_part.empty()) int_part = "0";
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  std::string out = int_part + "." + (frac_part.empty() ? "0" : frac_part);
  if (neg && out != "0.0") out.insert(0, "-");
  return out;
}

TypedLiteral make_literal(std::string_view lexical, std::string_view datatype) {
  std::string n = text::nfc(lexical);
  std::string trimmed(text::trim(n));
  if (trimmed.empty()) throw Error(ErrorCode::InvalidLiteral, "empty lexical form");
  if (datatype == xsd::kDecimal) {
    auto c = canonical_decimal(trimmed);
    if (!c) throw Error(ErrorCode::InvalidLiteral, "not an xsd:decimal: " + trimmed);
    trimmed = *c;
  } else if (datatype == xsd::kInteger) {
    auto c = canonical_integer(trimmed);
    if (!c) throw Error(ErrorCode::InvalidLiteral, "not an xsd:integer: " + trimmed);
    trimmed = *c;
  }
  return TypedLiteral{std::move(trimmed), std::string(datatype)};
}

TypedLiteral string_literal(std::string_view lexical) { return make_literal(lexical, xsd::kString); }
TypedLiteral decimal_literal(std::string_view lexical) { return make_literal(lexical, xsd::kDecimal); }
TypedLiteral integer_literal(long long value) {
  return TypedLiteral{std::to_string(value), std::string(xsd::kInteger)};
}

}  // namespace mskg
