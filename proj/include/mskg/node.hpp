#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mskg/term.hpp"

namespace mskg {

enum class NodeKind { ProvEntity, ProvActivity, NamedIndividual, ValueNode };

std::string_view to_string(NodeKind kind);

struct NodeSpec;
using NodeRef = std::shared_ptr<const NodeSpec>;

struct IriRef {
  std::string iri;
  friend bool operator==(const IriRef&, const IriRef&) = default;
};

using EdgeTarget = std::variant<IriRef, TypedLiteral, NodeRef>;

struct Edge {
  OntologyTermRef predicate;
  EdgeTarget target;
};

// A to-be-emitted graph node. IRIs are not chosen here: the emitter derives
// them from the kind, the type set and the identity attributes.
struct NodeSpec {
  NodeKind kind = NodeKind::ValueNode;
  // URI concept_name segment for PROV nodes and unpinned individuals.
  std::string concept_name;
  std::vector<OntologyTermRef> types;
  std::optional<TypedLiteral> value;
  std::optional<std::string> label;
  // Identity of PROV nodes.
  std::map<std::string, std::string> attributes;
  std::optional<std::pair<std::string, std::string>> fallback;  // (filename, source id)
  // Overrides IRI derivation (organism individuals, sample-type stems).
  std::optional<std::string> iri;
  std::vector<Edge> edges;

  static NodeSpec prov_entity(std::string concept_name, std::vector<OntologyTermRef> types,
                              std::map<std::string, std::string> attributes);
  static NodeSpec prov_activity(std::string concept_name, std::vector<OntologyTermRef> types,
                                std::map<std::string, std::string> attributes);
  static NodeSpec named_individual(std::string concept_name, std::vector<OntologyTermRef> types,
                                   std::string label);
  static NodeSpec value_node(std::vector<OntologyTermRef> types, TypedLiteral value);

  NodeSpec& edge(OntologyTermRef predicate, EdgeTarget target);
  NodeSpec& edge(OntologyTermRef predicate, NodeSpec target);

  bool is_prov() const { return kind == NodeKind::ProvEntity || kind == NodeKind::ProvActivity; }

  // Throws InvalidNode on kind/field combinations the model forbids.
  void validate() const;
};

inline NodeRef make_ref(NodeSpec spec) { return std::make_shared<const NodeSpec>(std::move(spec)); }

}  // namespace mskg
