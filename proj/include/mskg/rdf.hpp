#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mskg/term.hpp"

namespace mskg {

// An RDF term. Blank nodes are never produced by this pipeline and are
// rejected by the parser.
struct Term {
  enum class Kind : std::uint8_t { Iri, Literal };
  Kind kind = Kind::Iri;
  std::string value;     // IRI or lexical form
  std::string datatype;  // literals only; empty means xsd:string
  std::string lang;

  static Term iri(std::string v) { return Term{Kind::Iri, std::move(v), {}, {}}; }
  static Term literal(std::string lexical, std::string datatype = {}, std::string lang = {});
  static Term from(const TypedLiteral& l) { return literal(l.lexical, l.datatype); }

  bool is_iri() const { return kind == Kind::Iri; }
  bool is_literal() const { return kind == Kind::Literal; }
  // Effective datatype (xsd:string for simple literals, rdf:langString with a tag).
  std::string effective_datatype() const;

  // N-Triples rendering.
  std::string nt() const;

  friend bool operator==(const Term&, const Term&) = default;
};

std::string nt_iri(std::string_view iri);
std::string nt_literal(std::string_view lexical, std::string_view datatype = {},
                       std::string_view lang = {});

// Triples keep their object in rendered N-Triples form so canonical ordering
// is a plain string comparison.
struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;  // N-Triples term

  Term object_term() const;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple& a, const Triple& b) {
    return std::tie(a.subject, a.predicate, a.object) <=> std::tie(b.subject, b.predicate, b.object);
  }
};

// Parses one N-Triples term. Throws ParseError.
Term parse_nt_term(std::string_view s);

struct DocStats {
  std::map<std::string, std::size_t> triples_by_predicate;
  std::map<std::string, std::size_t> nodes_by_kind;
  std::size_t merged_references = 0;  // references resolved to an existing node
};

// Triples destined for one named graph. finalize() puts them in canonical
// order and drops duplicates.
class TripleDoc {
 public:
  TripleDoc() = default;
  explicit TripleDoc(std::string graph_name) : graph_name_(std::move(graph_name)) {}

  const std::string& graph_name() const { return graph_name_; }
  void set_graph_name(std::string g) { graph_name_ = std::move(g); }

  void add(Triple t) {
    triples_.push_back(std::move(t));
    finalized_ = false;
  }
  void add(std::string s, std::string p, const Term& o) {
    add(Triple{std::move(s), std::move(p), o.nt()});
  }
  void append(const TripleDoc& other);

  void finalize();
  bool finalized() const { return finalized_; }

  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  DocStats& stats() { return stats_; }
  const DocStats& stats() const { return stats_; }
  // Recomputes triples_by_predicate from the current triples.
  void count_predicates();

 private:
  std::string graph_name_;
  std::vector<Triple> triples_;
  DocStats stats_;
  bool finalized_ = true;
};

}  // namespace mskg
