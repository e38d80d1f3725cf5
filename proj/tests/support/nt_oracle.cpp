#include "nt_oracle.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace mskg::testing {

std::vector<RawTriple> parse_nt_lines(const std::string& content) {
  std::vector<RawTriple> out;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.size() < 2 || line.substr(line.size() - 2) != " .") throw std::runtime_error("bad line: " + line);
    line.resize(line.size() - 2);
    auto a = line.find("> <");
    if (line[0] != '<' || a == std::string::npos) throw std::runtime_error("bad subject: " + line);
    auto b = line.find("> ", a + 2);
    if (b == std::string::npos) throw std::runtime_error("bad predicate: " + line);
    out.push_back({line.substr(0, a + 1), line.substr(a + 2, b - a - 1), line.substr(b + 2)});
  }
  return out;
}

std::vector<RawTriple> read_nt_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_nt_lines(ss.str());
}

std::vector<RawTriple> read_nt_dir(const std::string& out_dir) {
  std::vector<RawTriple> out;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(out_dir) / "graphs"))
    if (e.path().extension() == ".nt") {
      auto ts = read_nt_file(e.path().string());
      out.insert(out.end(), ts.begin(), ts.end());
    }
  return out;
}

std::string iri_token(const std::string& iri) { return "<" + iri + ">"; }

std::set<std::string> subjects_where(const std::vector<RawTriple>& ts, const std::string& p, const std::string& o) {
  std::set<std::string> out;
  for (const auto& t : ts)
    if (t.p == p && t.o == o) out.insert(t.s);
  return out;
}

std::set<std::string> subjects_with_predicate(const std::vector<RawTriple>& ts, const std::string& p) {
  std::set<std::string> out;
  for (const auto& t : ts)
    if (t.p == p) out.insert(t.s);
  return out;
}

std::multimap<std::string, std::string> objects_of(const std::vector<RawTriple>& ts, const std::string& p) {
  std::multimap<std::string, std::string> out;
  for (const auto& t : ts)
    if (t.p == p) out.emplace(t.s, t.o);
  return out;
}

std::string literal_lexical(const std::string& token) {
  if (token.empty() || token[0] != '"') throw std::runtime_error("not a literal: " + token);
  std::string out;
  for (std::size_t i = 1; i < token.size(); ++i) {
    char c = token[i];
    if (c == '"') return out;
    if (c == '\\' && i + 1 < token.size()) {
      char n = token[++i];
      out += n == 'n' ? '\n' : n == 't' ? '\t' : n == 'r' ? '\r' : n;
      continue;
    }
    out += c;
  }
  throw std::runtime_error("unterminated literal: " + token);
}

}  // namespace mskg::testing
