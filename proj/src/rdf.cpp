#include "mskg/rdf.hpp"

#include <algorithm>
#include <charconv>

#include "mskg/error.hpp"

namespace mskg {

Term Term::literal(std::string lexical, std::string datatype, std::string lang) {
  if (datatype == xsd::kString) datatype.clear();
  return Term{Kind::Literal, std::move(lexical), std::move(datatype), std::move(lang)};
}

std::string Term::effective_datatype() const {
  if (!is_literal()) return {};
  if (!lang.empty()) return "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
  return datatype.empty() ? std::string(xsd::kString) : datatype;
}

std::string nt_iri(std::string_view iri) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(iri.size() + 2);
  out.push_back('<');
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  out.push_back('>');
  return out;
}

std::string nt_literal(std::string_view lexical, std::string_view datatype, std::string_view lang) {
  std::string out;
  out.reserve(lexical.size() + 2);
  out.push_back('"');
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  if (!lang.empty()) {
    out.push_back('@');
    out.append(lang);
  } else if (!datatype.empty() && datatype != xsd::kString) {
    out += "^^";
    out += nt_iri(datatype);
  }
  return out;
}

std::string Term::nt() const {
  return is_iri() ? nt_iri(value) : nt_literal(value, datatype, lang);
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

Term parse_nt_term(std::string_view s) {
  auto fail = [&](const char* why) {
    throw Error(ErrorCode::ParseError, std::string(why) + ": " + std::string(s.substr(0, 80)));
  };
  if (s.empty()) fail("empty term");
  if (s.front() == '<') {
    if (s.back() != '>') fail("unterminated IRI");
    return Term::iri(std::string(s.substr(1, s.size() - 2)));
  }
  if (s.front() != '"') fail("expected IRI or literal");
  std::string lexical;
  std::size_t i = 1;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') break;
    if (c != '\\') {
      lexical.push_back(c);
      continue;
    }
    if (++i >= s.size()) fail("dangling escape");
    switch (s[i]) {
      case 't': lexical.push_back('\t'); break;
      case 'b': lexical.push_back('\b'); break;
      case 'n': lexical.push_back('\n'); break;
      case 'r': lexical.push_back('\r'); break;
      case 'f': lexical.push_back('\f'); break;
      case '"': lexical.push_back('"'); break;
      case '\'': lexical.push_back('\''); break;
      case '\\': lexical.push_back('\\'); break;
      case 'u':
      case 'U': {
        std::size_t n = s[i] == 'u' ? 4 : 8;
        if (i + n >= s.size()) fail("short unicode escape");
        std::uint32_t cp = 0;
        auto [p, ec] = std::from_chars(s.data() + i + 1, s.data() + i + 1 + n, cp, 16);
        if (ec != std::errc() || p != s.data() + i + 1 + n) fail("bad unicode escape");
        append_utf8(lexical, cp);
        i += n;
        break;
      }
      default: fail("unknown escape");
    }
  }
  if (i >= s.size()) fail("unterminated literal");
  std::string_view rest = s.substr(i + 1);
  if (rest.empty()) return Term::literal(std::move(lexical));
  if (rest.front() == '@') return Term::literal(std::move(lexical), {}, std::string(rest.substr(1)));
  if (rest.starts_with("^^<") && rest.back() == '>')
    return Term::literal(std::move(lexical), std::string(rest.substr(3, rest.size() - 4)));
  throw Error(ErrorCode::ParseError, "trailing characters after literal: " + std::string(s.substr(0, 80)));
}

Term Triple::object_term() const { return parse_nt_term(object); }

void TripleDoc::append(const TripleDoc& other) {
  triples_.insert(triples_.end(), other.triples_.begin(), other.triples_.end());
  finalized_ = false;
}

void TripleDoc::finalize() {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  finalized_ = true;
  count_predicates();
}

void TripleDoc::count_predicates() {
  stats_.triples_by_predicate.clear();
  for (const auto& t : triples_) ++stats_.triples_by_predicate[t.predicate];
}

}  // namespace mskg
