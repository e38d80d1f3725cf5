#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/rdf.hpp"

namespace mskg {

enum class RdfFormat { NTriples, Turtle, TriG };

std::string_view to_string(RdfFormat f);
std::string_view file_extension(RdfFormat f);

// Canonical order (the document is finalized on a copy when needed).
// Turtle and TriG declare every registry prefix.
std::string serialize(const TripleDoc& doc, RdfFormat format, const NamespaceRegistry& registry);

// Throws IOFailure.
void write_doc(const TripleDoc& doc, const std::string& path, RdfFormat format,
               const NamespaceRegistry& registry);

// Line-based N-Triples reader. Blank nodes are rejected (ParseError).
TripleDoc parse_ntriples(std::string_view content, std::string graph_name = {});
TripleDoc read_ntriples(const std::string& path, std::string graph_name = {});

// Output directory layout: <dir>/graphs/<stem>.nt plus <dir>/graphs.tsv
// listing stem, graph IRI and triple count.
struct DocEntry {
  std::string stem;
  std::string graph;
  std::size_t triples = 0;
};

void store_doc(const std::string& out_dir, const std::string& stem, const TripleDoc& doc,
               const NamespaceRegistry& registry, bool with_turtle = false);
std::vector<DocEntry> list_docs(const std::string& out_dir);
TripleDoc load_doc(const std::string& out_dir, const DocEntry& entry);
std::vector<TripleDoc> load_docs(const std::string& out_dir);

}  // namespace mskg
