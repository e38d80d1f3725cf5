#include "mskg/emitter.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mskg/error.hpp"
#include "mskg/table.hpp"
#include "mskg/text.hpp"

namespace mskg {

namespace {

constexpr char kSep = '\x1f';

std::vector<std::string> sorted_type_iris(const NodeSpec& spec, const NamespaceRegistry& registry) {
  std::vector<std::string> iris;
  iris.reserve(spec.types.size());
  for (const auto& t : spec.types) iris.push_back(expand(t, registry));
  std::sort(iris.begin(), iris.end());
  iris.erase(std::unique(iris.begin(), iris.end()), iris.end());
  return iris;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

const NamespaceRegistry& need_registry(const EmitOptions& o) {
  if (!o.registry) throw Error(ErrorCode::InvalidSpec, "emitter has no namespace registry");
  return *o.registry;
}

}  // namespace

std::string value_node_key(const NodeSpec& spec, const NamespaceRegistry& registry) {
  std::string key = join(sorted_type_iris(spec, registry), ' ');
  key.push_back(kSep);
  if (spec.value) {
    key += spec.value->datatype;
    key.push_back(kSep);
    key += spec.value->lexical;
  }
  return key;
}

std::string individual_key(const NodeSpec& spec, const NamespaceRegistry& registry) {
  if (spec.iri) return "<" + *spec.iri + ">";
  std::string key = spec.types.empty() ? std::string() : expand(spec.types.front(), registry);
  key.push_back(kSep);
  key += spec.label.value_or("");
  return key;
}

std::string node_iri(const NodeSpec& spec, const EmitOptions& options) {
  if (spec.iri) return *spec.iri;
  const auto& registry = need_registry(options);
  switch (spec.kind) {
    case NodeKind::ValueNode: {
      std::vector<std::string> iris = sorted_type_iris(spec, registry);
      std::string concept_name = "value";
      if (auto c = registry.compact(iris.front())) concept_name = text::kebab(c->first + "-" + iris.front().substr(c->second.size()));
      Attributes attrs = {{"types", join(iris, ' ')},
                          {"datatype", spec.value->datatype},
                          {"lexical", spec.value->lexical}};
      return mint_uri(concept_name, attrs, std::nullopt, options.global_prefix).str();
    }
    case NodeKind::NamedIndividual: {
      Attributes attrs = {{"class", expand(spec.types.front(), registry)}, {"label", spec.label.value_or("")}};
      return mint_uri(spec.concept_name, attrs, std::nullopt, options.global_prefix).str();
    }
    case NodeKind::ProvEntity:
    case NodeKind::ProvActivity:
      return mint_uri(spec.concept_name, spec.attributes, spec.fallback, options.global_prefix).str();
  }
  throw Error(ErrorCode::InvalidSpec, "unknown node kind");
}

namespace {

bool resolve_in(std::map<std::string, std::string>& m, const std::string& key, const std::string& iri) {
  auto [it, inserted] = m.emplace(key, iri);
  if (!inserted && it->second != iri)
    throw Error(ErrorCode::InvalidSpec, "merge key maps to two IRIs: " + it->second + " and " + iri);
  return !inserted;
}

}  // namespace

bool DedupRegistry::resolve_value(const std::string& key, const std::string& iri) {
  return resolve_in(value_nodes_, key, iri);
}

bool DedupRegistry::resolve_individual(const std::string& key, const std::string& iri) {
  return resolve_in(named_individuals_, key, iri);
}

void DedupRegistry::merge(const DedupRegistry& other) {
  for (const auto& [k, v] : other.value_nodes_) resolve_in(value_nodes_, k, v);
  for (const auto& [k, v] : other.named_individuals_) resolve_in(named_individuals_, k, v);
}

Emitter::Emitter(TripleDoc& doc, DedupRegistry& registry, EmitOptions options)
    : doc_(doc), registry_(registry), options_(std::move(options)) {
  need_registry(options_);
}

const std::string& Emitter::expand_cached(const OntologyTermRef& term) {
  auto key = std::make_pair(term.prefix, term.local_id);
  auto it = expansions_.find(key);
  if (it == expansions_.end()) it = expansions_.emplace(key, expand(term, *options_.registry)).first;
  return it->second;
}

std::string Emitter::emit(const NodeSpec& spec) { return emit_node(spec); }

std::string Emitter::emit(const NodeRef& ref) {
  if (!ref) throw Error(ErrorCode::InvalidSpec, "null node reference");
  auto it = emitted_refs_.find(ref.get());
  if (it != emitted_refs_.end()) return it->second.second;
  std::string iri = emit_node(*ref);
  emitted_refs_.emplace(ref.get(), std::make_pair(ref, iri));
  return iri;
}

std::string Emitter::emit_node(const NodeSpec& spec) {
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidSpec, e.what());
  }
  std::string iri = node_iri(spec, options_);
  auto& stats = doc_.stats();
  bool merged = false;
  if (spec.kind == NodeKind::ValueNode)
    merged = registry_.resolve_value(value_node_key(spec, *options_.registry), iri);
  else if (spec.kind == NodeKind::NamedIndividual)
    merged = registry_.resolve_individual(individual_key(spec, *options_.registry), iri);
  if (merged) ++stats.merged_references;

  auto [kit, fresh] = kinds_.emplace(iri, spec.kind);
  if (fresh) {
    ++stats.nodes_by_kind[std::string(to_string(spec.kind))];
  } else if (kit->second != spec.kind) {
    throw Error(ErrorCode::InvalidSpec, "IRI used for two node kinds: " + iri);
  }

  static const std::string kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
  static const std::string kLabel = "http://www.w3.org/2000/01/rdf-schema#label";
  for (const auto& t : spec.types) doc_.add(Triple{iri, kType, nt_iri(expand_cached(t))});
  if (spec.value) doc_.add(Triple{iri, expand_cached(vocab::kProvValue), Term::from(*spec.value).nt()});
  if (spec.label && !spec.label->empty()) doc_.add(Triple{iri, kLabel, nt_literal(*spec.label)});
  for (const auto& e : spec.edges) {
    const std::string& p = expand_cached(e.predicate);
    if (const auto* ref = std::get_if<IriRef>(&e.target)) {
      doc_.add(Triple{iri, p, nt_iri(ref->iri)});
    } else if (const auto* lit = std::get_if<TypedLiteral>(&e.target)) {
      doc_.add(Triple{iri, p, Term::from(*lit).nt()});
    } else {
      const auto& node = std::get<NodeRef>(e.target);
      if (node && node->is_prov() && spec.kind == NodeKind::ValueNode)
        throw Error(ErrorCode::InvalidSpec, "value node pointing at a PROV node");
      doc_.add(Triple{iri, p, nt_iri(emit(node))});
    }
  }
  return iri;
}

TripleDoc emit(const std::vector<NodeSpec>& specs, DedupRegistry& registry, std::string graph_name,
               const EmitOptions& options) {
  TripleDoc doc(std::move(graph_name));
  Emitter emitter(doc, registry, options);
  for (const auto& s : specs) emitter.emit(s);
  doc.finalize();
  return doc;
}

std::string batch_graph_iri(std::string_view batch_digest, std::string_view global_prefix) {
  return mint_uri("graph", {{"batch", std::string(batch_digest)}}, std::nullopt, global_prefix).str();
}

std::string stats_tsv(const TripleDoc& doc) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"graph", "triples", doc.graph_name(), std::to_string(doc.size())});
  for (const auto& [p, n] : doc.stats().triples_by_predicate) rows.push_back({"predicate", "triples", p, std::to_string(n)});
  for (const auto& [k, n] : doc.stats().nodes_by_kind) rows.push_back({"node_kind", "subjects", k, std::to_string(n)});
  rows.push_back({"dedup", "merged_references", "", std::to_string(doc.stats().merged_references)});
  return to_tsv({"section", "measure", "key", "count"}, rows);
}

bool is_remote_locator(std::string_view locator) {
  return text::starts_with_ci(locator, "http://") || text::starts_with_ci(locator, "https://") ||
         text::starts_with_ci(locator, "ftp://");
}

std::optional<std::string> repository_for(std::string_view id) {
  if (text::starts_with_ci(id, "MSV")) return "MassIVE";
  if (text::starts_with_ci(id, "MTBLS")) return "MetaboLights";
  if ((text::starts_with_ci(id, "ST") || text::starts_with_ci(id, "PR")) && id.size() > 2 &&
      std::isdigit(static_cast<unsigned char>(id[2])))
    return "Metabolomics Workbench";
  return std::nullopt;
}

namespace {

Attributes file_identity(const std::string& collection_id, const std::string& file) {
  Attributes a{{"file", file}};
  if (!collection_id.empty()) a["collection"] = collection_id;
  return a;
}

}  // namespace

DistributionSpec make_distribution(std::string collection_id, std::string file, std::string locator,
                                   std::string_view global_prefix) {
  DistributionSpec d;
  d.file_iri = mint_uri("file", file_identity(collection_id, file), std::nullopt, global_prefix);
  d.repository = repository_for(collection_id);
  d.collection_id = std::move(collection_id);
  d.title = std::move(file);
  d.locator = locator.empty() ? d.title : std::move(locator);
  return d;
}

NodeSpec distribution_node(const DistributionSpec& dist) {
  NodeSpec n = NodeSpec::prov_entity("file", {vocab::kProvEntity, vocab::kDcatDistribution},
                                     file_identity(dist.collection_id, dist.title));
  n.edge(vocab::kDctTitle, string_literal(dist.title));
  if (is_remote_locator(dist.locator))
    n.edge(vocab::kDcatDownloadUrl, IriRef{dist.locator});
  else
    n.edge(vocab::kDcatAccessUrl, TypedLiteral{dist.locator, std::string(xsd::kAnyUri)});
  if (dist.repository) n.edge(vocab::kRepository, string_literal(*dist.repository));
  return n;
}

void attach_distribution(TripleDoc& doc, const std::string& entity_iri, const DistributionSpec& dist,
                         const NamespaceRegistry& registry) {
  DedupRegistry scratch;
  Emitter emitter(doc, scratch, EmitOptions{&registry, dist.file_iri.global_prefix});
  std::string file_iri = emitter.emit(distribution_node(dist));
  doc.add(Triple{entity_iri, expand(vocab::kDcatHasDistribution, registry), nt_iri(file_iri)});
}

NodeSpec collection_node(const std::string& collection_id, const std::optional<std::string>& title) {
  NodeSpec n = NodeSpec::prov_entity("collection",
                                     {vocab::kProvEntity, vocab::kDcatDataset, vocab::kCollection},
                                     {{"collection", collection_id}});
  n.label = collection_id;
  if (title && !title->empty()) n.edge(vocab::kDctTitle, string_literal(*title));
  return n;
}

NodeSpec uai_node(const Uai& uai, const UaiLocators& locators) {
  NodeSpec n = NodeSpec::named_individual("uai", {vocab::kUai}, uai_serialize(uai));
  const std::string coll = uai.collection_id.value_or("");
  std::optional<NodeSpec> collection;
  if (!coll.empty()) collection = collection_node(coll);

  auto file = [&](const OntologyTermRef& pred, const std::optional<std::string>& name,
                  const std::optional<std::string>& locator) {
    if (!name || name->empty()) return;
    DistributionSpec d = make_distribution(coll, *name, locator.value_or(*name));
    NodeRef ref = make_ref(distribution_node(d));
    n.edge(pred, EdgeTarget(ref));
    if (collection) collection->edge(vocab::kDcatHasDistribution, EdgeTarget(ref));
  };
  file(vocab::kMzml, uai.mzml, locators.mzml);
  file(vocab::kAnnotationFile, uai.annotation_file, locators.annotation_file);
  file(vocab::kFeatureTable, uai.feature_table, locators.feature_table);
  if (collection) n.edge(vocab::kCollectionId, std::move(*collection));
  if (uai.scan && !uai.scan->empty()) n.edge(vocab::kScan, string_literal(*uai.scan));
  if (uai.hit_number) n.edge(vocab::kHitNumber, integer_literal(*uai.hit_number));
  if (uai.feature_id && !uai.feature_id->empty()) n.edge(vocab::kFeatureId, string_literal(*uai.feature_id));
  return n;
}

}  // namespace mskg
