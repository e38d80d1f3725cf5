#include "mskg/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>

#include "mskg/error.hpp"
#include "mskg/table.hpp"
#include "mskg/text.hpp"

namespace fs = std::filesystem;

namespace mskg {

std::string_view to_string(RdfFormat f) {
  switch (f) {
    case RdfFormat::NTriples: return "ntriples";
    case RdfFormat::Turtle: return "turtle";
    case RdfFormat::TriG: return "trig";
  }
  return "?";
}

std::string_view file_extension(RdfFormat f) {
  switch (f) {
    case RdfFormat::NTriples: return ".nt";
    case RdfFormat::Turtle: return ".ttl";
    case RdfFormat::TriG: return ".trig";
  }
  return "";
}

namespace {

constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

bool valid_local(std::string_view s) {
  if (s.empty()) return true;
  if (s.front() == '-' || s.front() == '.' || s.back() == '.') return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

class Compactor {
 public:
  explicit Compactor(const NamespaceRegistry& r) : registry_(r) {}

  std::string iri(std::string_view iri) const {
    if (auto c = registry_.compact(iri)) {
      std::string_view local = iri.substr(c->second.size());
      if (valid_local(local)) return c->first + ":" + std::string(local);
    }
    return nt_iri(iri);
  }

  std::string object(const std::string& nt) const {
    if (nt.front() == '<') return iri(std::string_view(nt).substr(1, nt.size() - 2));
    auto pos = nt.rfind("^^<");
    if (pos != std::string::npos && nt.back() == '>' && nt[pos - 1] == '"')
      return nt.substr(0, pos + 2) + iri(std::string_view(nt).substr(pos + 3, nt.size() - pos - 4));
    return nt;
  }

 private:
  const NamespaceRegistry& registry_;
};

void turtle_body(std::string& out, const std::vector<Triple>& triples, const Compactor& c,
                 std::string_view indent) {
  std::size_t i = 0;
  while (i < triples.size()) {
    const std::string& s = triples[i].subject;
    out += indent;
    out += c.iri(s);
    bool first_pred = true;
    while (i < triples.size() && triples[i].subject == s) {
      const std::string& p = triples[i].predicate;
      out += first_pred ? " " : " ;\n" + std::string(indent) + "    ";
      first_pred = false;
      out += p == kRdfType ? std::string("a") : c.iri(p);
      bool first_obj = true;
      while (i < triples.size() && triples[i].subject == s && triples[i].predicate == p) {
        out += first_obj ? " " : " , ";
        first_obj = false;
        out += c.object(triples[i].object);
        ++i;
      }
    }
    out += " .\n";
  }
}

std::string prefix_block(const NamespaceRegistry& registry) {
  std::string out;
  for (const auto& [prefix, ns] : registry.entries()) out += "@prefix " + prefix + ": " + nt_iri(ns) + " .\n";
  return out;
}

}  // namespace

std::string serialize(const TripleDoc& doc, RdfFormat format, const NamespaceRegistry& registry) {
  const TripleDoc* d = &doc;
  TripleDoc copy;
  if (!doc.finalized()) {
    copy = doc;
    copy.finalize();
    d = &copy;
  }
  std::string out;
  switch (format) {
    case RdfFormat::NTriples: {
      std::size_t bytes = 0;
      for (const auto& t : d->triples()) bytes += t.subject.size() + t.predicate.size() + t.object.size() + 10;
      out.reserve(bytes);
      for (const auto& t : d->triples()) {
        out += nt_iri(t.subject);
        out.push_back(' ');
        out += nt_iri(t.predicate);
        out.push_back(' ');
        out += t.object;
        out += " .\n";
      }
      break;
    }
    case RdfFormat::Turtle: {
      Compactor c(registry);
      out = prefix_block(registry);
      if (!d->empty()) out += "\n";
      turtle_body(out, d->triples(), c, "");
      break;
    }
    case RdfFormat::TriG: {
      Compactor c(registry);
      out = prefix_block(registry) + "\n";
      out += nt_iri(d->graph_name()) + " {\n";
      turtle_body(out, d->triples(), c, "  ");
      out += "}\n";
      break;
    }
  }
  return out;
}

void write_doc(const TripleDoc& doc, const std::string& path, RdfFormat format,
               const NamespaceRegistry& registry) {
  text::write_file(path, serialize(doc, format, registry));
}

TripleDoc parse_ntriples(std::string_view content, std::string graph_name) {
  TripleDoc doc(std::move(graph_name));
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = text::trim(content.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const char* why) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
    };
    if (line.back() != '.') fail("missing terminating '.'");
    line = text::trim(line.substr(0, line.size() - 1));
    if (line.starts_with("_:")) fail("blank nodes are not supported");
    if (line.front() != '<') fail("subject must be an IRI");
    std::size_t s_end = line.find('>');
    if (s_end == std::string_view::npos) fail("unterminated subject");
    std::string subject(line.substr(1, s_end - 1));
    std::string_view rest = text::trim(line.substr(s_end + 1));
    if (rest.empty() || rest.front() != '<') fail("predicate must be an IRI");
    std::size_t p_end = rest.find('>');
    if (p_end == std::string_view::npos) fail("unterminated predicate");
    std::string predicate(rest.substr(1, p_end - 1));
    std::string_view object = text::trim(rest.substr(p_end + 1));
    if (object.starts_with("_:")) fail("blank nodes are not supported");
    // Re-render so that equivalent spellings compare equal.
    Term o = parse_nt_term(object);
    doc.add(Triple{std::move(subject), std::move(predicate), o.nt()});
  }
  doc.finalize();
  return doc;
}

TripleDoc read_ntriples(const std::string& path, std::string graph_name) {
  return parse_ntriples(text::read_file(path), std::move(graph_name));
}

namespace {

std::string index_path(const std::string& out_dir) { return (fs::path(out_dir) / "graphs.tsv").string(); }

void write_index(const std::string& out_dir, const std::vector<DocEntry>& entries) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : entries) rows.push_back({e.stem, e.graph, std::to_string(e.triples)});
  text::write_file(index_path(out_dir), to_tsv({"stem", "graph", "triples"}, rows));
}

}  // namespace

std::vector<DocEntry> list_docs(const std::string& out_dir) {
  std::vector<DocEntry> out;
  if (!fs::exists(index_path(out_dir))) return out;
  Table t = read_table(index_path(out_dir), '\t');
  auto s = t.column("stem"), g = t.column("graph"), n = t.column("triples");
  if (!s || !g || !n) throw Error(ErrorCode::ParseError, "graphs.tsv: bad header");
  for (const auto& row : t.rows) out.push_back(DocEntry{row[*s], row[*g], std::stoul(row[*n])});
  return out;
}

void store_doc(const std::string& out_dir, const std::string& stem, const TripleDoc& doc,
               const NamespaceRegistry& registry, bool with_turtle) {
  fs::path dir = fs::path(out_dir) / "graphs";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IOFailure, dir.string() + ": " + ec.message());
  write_doc(doc, (dir / (stem + ".nt")).string(), RdfFormat::NTriples, registry);
  if (with_turtle) write_doc(doc, (dir / (stem + ".ttl")).string(), RdfFormat::Turtle, registry);

  std::vector<DocEntry> entries = list_docs(out_dir);
  std::size_t count = doc.size();
  if (!doc.finalized()) {
    TripleDoc copy = doc;
    copy.finalize();
    count = copy.size();
  }
  DocEntry entry{stem, doc.graph_name(), count};
  auto it = std::find_if(entries.begin(), entries.end(), [&](const DocEntry& e) { return e.stem == stem; });
  if (it != entries.end())
    *it = entry;
  else
    entries.push_back(entry);
  std::sort(entries.begin(), entries.end(), [](const DocEntry& a, const DocEntry& b) { return a.stem < b.stem; });
  write_index(out_dir, entries);
}

TripleDoc load_doc(const std::string& out_dir, const DocEntry& entry) {
  return read_ntriples((fs::path(out_dir) / "graphs" / (entry.stem + ".nt")).string(), entry.graph);
}

std::vector<TripleDoc> load_docs(const std::string& out_dir) {
  std::vector<TripleDoc> docs;
  for (const auto& e : list_docs(out_dir)) docs.push_back(load_doc(out_dir, e));
  return docs;
}

}  // namespace mskg
