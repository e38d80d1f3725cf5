#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

// A deliberately small N-Triples reader used to recount emitted output. It
// shares no code with the library.
namespace mskg::testing {

struct RawTriple {
  std::string s, p, o;  // tokens exactly as written, IRIs keep their <>
  bool operator<(const RawTriple& b) const { return std::tie(s, p, o) < std::tie(b.s, b.p, b.o); }
  bool operator==(const RawTriple& b) const = default;
};

std::vector<RawTriple> parse_nt_lines(const std::string& content);
std::vector<RawTriple> read_nt_file(const std::string& path);
// All .nt files of <out>/graphs.
std::vector<RawTriple> read_nt_dir(const std::string& out_dir);

std::string iri_token(const std::string& iri);

std::set<std::string> subjects_where(const std::vector<RawTriple>& ts, const std::string& p, const std::string& o);
std::set<std::string> subjects_with_predicate(const std::vector<RawTriple>& ts, const std::string& p);
std::multimap<std::string, std::string> objects_of(const std::vector<RawTriple>& ts, const std::string& p);

// Lexical form of a literal token ("\"0.5\"^^<...>" -> 0.5), unescaping \" and \\.
std::string literal_lexical(const std::string& token);

}  // namespace mskg::testing
