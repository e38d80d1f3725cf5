#include "mskg/namespaces.hpp"

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

namespace {

const NamespaceRegistry::Entry kCore[] = {
    {"prov", "http://www.w3.org/ns/prov#"},
    {"SIO", "http://semanticscience.org/resource/"},
    {"MS", "http://purl.obolibrary.org/obo/MS_"},
    {"ChEBI", "http://purl.obolibrary.org/obo/CHEBI_"},
    {"NCBITaxon", "http://purl.obolibrary.org/obo/NCBITaxon_"},
    {"ENVO", "http://purl.obolibrary.org/obo/ENVO_"},
    {"NCIT", "http://purl.obolibrary.org/obo/NCIT_"},
    {"dcat", "http://www.w3.org/ns/dcat#"},
    {"MBS", "https://ns.inria.fr/metaboKG/schema/"},
};

const NamespaceRegistry::Entry kBuiltins[] = {
    {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
    {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
    {"xsd", "http://www.w3.org/2001/XMLSchema#"},
    {"owl", "http://www.w3.org/2002/07/owl#"},
    {"dct", "http://purl.org/dc/terms/"},
    {"NPC", "https://ns.inria.fr/metaboKG/npc/"},
    {"CHMO", "http://purl.obolibrary.org/obo/CHMO_"},
    {"OBI", "http://purl.obolibrary.org/obo/OBI_"},
    {"UO", "http://purl.obolibrary.org/obo/UO_"},
};

}  // namespace

NamespaceRegistry NamespaceRegistry::core() {
  NamespaceRegistry r;
  for (const auto& [p, ns] : kCore) r.add(p, ns);
  return r;
}

NamespaceRegistry NamespaceRegistry::standard() {
  NamespaceRegistry r = core();
  r.with_builtins();
  return r;
}

NamespaceRegistry& NamespaceRegistry::with_builtins() {
  for (const auto& [p, ns] : kBuiltins) {
    if (contains(p)) continue;
    bool ns_taken = false;
    for (const auto& e : entries_) ns_taken |= (e.second == ns);
    if (!ns_taken) add(p, ns);
  }
  return *this;
}

NamespaceRegistry NamespaceRegistry::from_tsv(std::string_view content) {
  NamespaceRegistry r;
  std::size_t line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 2)
      throw Error(ErrorCode::ConfigError,
                  "registry line " + std::to_string(line_no) + ": expected prefix<TAB>namespace");
    r.add(cols[0], cols[1]);
  }
  return r;
}

NamespaceRegistry NamespaceRegistry::load(const std::string& path) {
  return from_tsv(text::read_file(path));
}

void NamespaceRegistry::add(std::string prefix, std::string ns) {
  if (prefix.empty() || ns.empty())
    throw Error(ErrorCode::ConfigError, "empty prefix or namespace");
  char last = ns.back();
  if (last != '/' && last != '#' && last != '_')
    throw Error(ErrorCode::ConfigError, "namespace must end with '/', '#' or '_': " + ns);
  for (const auto& [p, existing] : entries_) {
    if (p == prefix) throw Error(ErrorCode::ConfigError, "duplicate prefix " + prefix);
    if (existing == ns) throw Error(ErrorCode::ConfigError, "namespace bound twice: " + ns);
  }
  entries_.emplace_back(std::move(prefix), std::move(ns));
}

std::optional<std::string_view> NamespaceRegistry::find(std::string_view prefix) const {
  for (const auto& [p, ns] : entries_)
    if (p == prefix) return std::string_view(ns);
  return std::nullopt;
}

std::string NamespaceRegistry::expand(std::string_view prefix, std::string_view local_id) const {
  auto ns = find(prefix);
  if (!ns) throw Error(ErrorCode::UnknownPrefix, std::string(prefix));
  std::string out(*ns);
  out.append(local_id);
  return out;
}

std::string NamespaceRegistry::expand_curie(std::string_view curie) const {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::ParseError, "not a CURIE: " + std::string(curie));
  return expand(curie.substr(0, colon), curie.substr(colon + 1));
}

std::optional<NamespaceRegistry::Entry> NamespaceRegistry::compact(std::string_view iri) const {
  const Entry* best = nullptr;
  for (const auto& e : entries_) {
    if (iri.starts_with(e.second) && (!best || e.second.size() > best->second.size()))
      best = &e;
  }
  if (!best) return std::nullopt;
  return Entry{best->first, std::string(iri.substr(best->second.size()))};
}

std::string NamespaceRegistry::to_tsv() const {
  std::string out;
  for (const auto& [p, ns] : entries_) {
    out += p;
    out += '\t';
    out += ns;
    out += '\n';
  }
  return out;
}

}  // namespace mskg
