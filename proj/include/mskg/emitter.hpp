#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/node.hpp"
#include "mskg/rdf.hpp"
#include "mskg/uai.hpp"
#include "mskg/uri.hpp"

namespace mskg {

struct EmitOptions {
  const NamespaceRegistry* registry = nullptr;
  std::string global_prefix = std::string(kDefaultGlobalPrefix);
};

// Merge key of a value node: sorted type IRIs, datatype, lexical form.
std::string value_node_key(const NodeSpec& spec, const NamespaceRegistry& registry);
// Merge key of a named individual: primary class IRI and normalized label,
// or the pinned IRI.
std::string individual_key(const NodeSpec& spec, const NamespaceRegistry& registry);

// Deterministic IRI of a node. Value nodes and individuals derive it from
// their merge key, PROV nodes from their identity attributes.
std::string node_iri(const NodeSpec& spec, const EmitOptions& options);

// Merge keys -> IRIs. PROV nodes are never registered.
class DedupRegistry {
 public:
  // Returns true when the key was already present. Throws InvalidSpec if
  // the key is known under a different IRI.
  bool resolve_value(const std::string& key, const std::string& iri);
  bool resolve_individual(const std::string& key, const std::string& iri);

  // Deterministic union; conflicting IRIs for one key throw InvalidSpec.
  void merge(const DedupRegistry& other);

  const std::map<std::string, std::string>& value_nodes() const { return value_nodes_; }
  const std::map<std::string, std::string>& named_individuals() const { return named_individuals_; }

 private:
  std::map<std::string, std::string> value_nodes_;
  std::map<std::string, std::string> named_individuals_;
};

// Turns NodeSpecs into triples of one document. Nested NodeRefs that were
// already emitted through this emitter are not walked again.
class Emitter {
 public:
  Emitter(TripleDoc& doc, DedupRegistry& registry, EmitOptions options);

  std::string emit(const NodeSpec& spec);
  std::string emit(const NodeRef& ref);

 private:
  std::string emit_node(const NodeSpec& spec);
  const std::string& expand_cached(const OntologyTermRef& term);

  TripleDoc& doc_;
  DedupRegistry& registry_;
  EmitOptions options_;
  std::unordered_map<const NodeSpec*, std::pair<NodeRef, std::string>> emitted_refs_;
  std::map<std::pair<std::string, std::string>, std::string> expansions_;
  std::map<std::string, NodeKind> kinds_;
};

// Emits all specs into a finalized document named graph_name.
TripleDoc emit(const std::vector<NodeSpec>& specs, DedupRegistry& registry, std::string graph_name,
               const EmitOptions& options);

// Named-graph IRI of an ingestion batch, minted from a content digest.
std::string batch_graph_iri(std::string_view batch_digest, std::string_view global_prefix = kDefaultGlobalPrefix);

// Stats sidecar: triples by predicate, nodes by kind, merged references.
std::string stats_tsv(const TripleDoc& doc);

// DCAT file description.
struct DistributionSpec {
  UriSpec file_iri;
  std::string collection_id;
  std::string title;
  std::string locator;  // local path or URL
  std::optional<std::string> repository;
};

bool is_remote_locator(std::string_view locator);
// Repository name inferred from the accession prefix (MSV, MTBLS, ST/PR).
std::optional<std::string> repository_for(std::string_view collection_id);

DistributionSpec make_distribution(std::string collection_id, std::string file, std::string locator,
                                   std::string_view global_prefix = kDefaultGlobalPrefix);
// The distribution as a node; its IRI equals dist.file_iri under the same
// global prefix.
NodeSpec distribution_node(const DistributionSpec& dist);
// Typing, title, locator and repository triples plus entity -> file link.
void attach_distribution(TripleDoc& doc, const std::string& entity_iri, const DistributionSpec& dist,
                         const NamespaceRegistry& registry);

// Collection entity shared by metadata and annotation sides.
NodeSpec collection_node(const std::string& collection_id, const std::optional<std::string>& title = {});

// Locators for the files a UAI names; missing entries default to the name.
struct UaiLocators {
  std::optional<std::string> mzml;
  std::optional<std::string> annotation_file;
  std::optional<std::string> feature_table;
};

// UAI named individual: label = serialized UAI, one property per component,
// files as dcat:Distribution nodes.
NodeSpec uai_node(const Uai& uai, const UaiLocators& locators = {});

}  // namespace mskg
