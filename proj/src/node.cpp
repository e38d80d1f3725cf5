#include "mskg/node.hpp"

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::ProvEntity: return "ProvEntity";
    case NodeKind::ProvActivity: return "ProvActivity";
    case NodeKind::NamedIndividual: return "NamedIndividual";
    case NodeKind::ValueNode: return "ValueNode";
  }
  return "?";
}

NodeSpec NodeSpec::prov_entity(std::string concept_name, std::vector<OntologyTermRef> types,
                               std::map<std::string, std::string> attributes) {
  NodeSpec n;
  n.kind = NodeKind::ProvEntity;
  n.concept_name = std::move(concept_name);
  n.types = std::move(types);
  n.attributes = std::move(attributes);
  return n;
}

NodeSpec NodeSpec::prov_activity(std::string concept_name, std::vector<OntologyTermRef> types,
                                 std::map<std::string, std::string> attributes) {
  NodeSpec n = prov_entity(std::move(concept_name), std::move(types), std::move(attributes));
  n.kind = NodeKind::ProvActivity;
  return n;
}

NodeSpec NodeSpec::named_individual(std::string concept_name, std::vector<OntologyTermRef> types,
                                    std::string label) {
  NodeSpec n;
  n.kind = NodeKind::NamedIndividual;
  n.concept_name = std::move(concept_name);
  n.types = std::move(types);
  n.label = text::normalize_label(label);
  return n;
}

NodeSpec NodeSpec::value_node(std::vector<OntologyTermRef> types, TypedLiteral value) {
  NodeSpec n;
  n.kind = NodeKind::ValueNode;
  n.types = std::move(types);
  n.value = std::move(value);
  return n;
}

NodeSpec& NodeSpec::edge(OntologyTermRef predicate, EdgeTarget target) {
  edges.push_back(Edge{std::move(predicate), std::move(target)});
  return *this;
}

NodeSpec& NodeSpec::edge(OntologyTermRef predicate, NodeSpec target) {
  return edge(std::move(predicate), EdgeTarget(make_ref(std::move(target))));
}

void NodeSpec::validate() const {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidNode, std::string(to_string(kind)) + " " + why);
  };
  switch (kind) {
    case NodeKind::ValueNode:
      if (types.empty()) fail("needs at least one rdf:type");
      if (!value) fail("needs a value");
      break;
    case NodeKind::NamedIndividual:
      if (types.empty()) fail("needs at least one rdf:type");
      if (value) fail("cannot carry a value");
      if (!iri && (!label || label->empty())) fail("needs a label or a pinned IRI");
      if (!iri && concept_name.empty()) fail("needs a concept_name");
      break;
    case NodeKind::ProvEntity:
    case NodeKind::ProvActivity: {
      bool has_prov_type = false;
      for (const auto& t : types) has_prov_type |= (t.prefix == "prov");
      if (!has_prov_type) fail("needs a prov-namespace type");
      if (value) fail("cannot carry a value");
      if (!iri) {
        if (concept_name.empty()) fail("needs a concept_name");
        if (attributes.empty() && !fallback) fail("needs identity attributes or a fallback");
      }
      break;
    }
  }
}

}  // namespace mskg
