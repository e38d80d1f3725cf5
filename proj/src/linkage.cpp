#include "mskg/linkage.hpp"

#include <algorithm>
#include <thread>
#include <tuple>
#include <map>
#include <set>

#include "mskg/emitter.hpp"
#include "mskg/error.hpp"
#include "mskg/term.hpp"

namespace mskg {

LinkRule LinkRule::defaults() {
  using namespace uai_component;
  return LinkRule{{
      {{std::string(kCollectionId), std::string(kMzml), std::string(kFeatureId)}, OntologyTermRef("MBS", "sharesFeature")},
      {{std::string(kCollectionId), std::string(kMzml)}, OntologyTermRef("MBS", "sharesRun")},
      {{std::string(kCollectionId)}, OntologyTermRef("MBS", "sharesCollection")},
  }};
}

ComponentSet LinkRule::compared() const {
  ComponentSet all;
  for (const auto& t : tiers) all.insert(t.required.begin(), t.required.end());
  return all;
}

Uai project_uai(const Uai& u, const ComponentSet& keep) {
  using namespace uai_component;
  auto has = [&](std::string_view c) { return keep.contains(std::string(c)); };
  Uai out;
  if (has(kCollectionId)) out.collection_id = u.collection_id;
  if (has(kMzml)) out.mzml = u.mzml;
  if (has(kScan)) out.scan = u.scan;
  if (has(kAnnotationFile)) out.annotation_file = u.annotation_file;
  if (has(kHitNumber)) out.hit_number = u.hit_number;
  if (has(kFeatureId)) out.feature_id = u.feature_id;
  if (has(kFeatureTable)) out.feature_table = u.feature_table;
  return out;
}

int link_tier(const Uai& a, const Uai& b, const LinkRule& rule) {
  ComponentSet shared = uai_shared_components(a, b);
  if (shared.empty()) return -1;
  for (std::size_t i = 0; i < rule.tiers.size(); ++i)
    if (std::includes(shared.begin(), shared.end(), rule.tiers[i].required.begin(), rule.tiers[i].required.end()))
      return static_cast<int>(i);
  return -1;
}

std::vector<UaiOccurrence> find_uais(const std::vector<TripleDoc>& docs, const NamespaceRegistry& registry) {
  const std::string type = expand(vocab::kRdfType, registry);
  const std::string label = expand(vocab::kRdfsLabel, registry);
  const std::string uai_class = nt_iri(expand(vocab::kUai, registry));
  std::vector<UaiOccurrence> out;
  for (std::size_t b = 0; b < docs.size(); ++b) {
    std::set<std::string> typed;
    std::map<std::string, std::string> labels;
    for (const auto& t : docs[b].triples()) {
      if (t.predicate == type && t.object == uai_class) typed.insert(t.subject);
      else if (t.predicate == label) labels.emplace(t.subject, t.object);
    }
    for (const auto& s : typed) {
      auto it = labels.find(s);
      if (it == labels.end()) continue;
      try {
        Term l = parse_nt_term(it->second);
        out.push_back({b, s, uai_parse(l.value)});
      } catch (const Error&) {
        continue;
      }
    }
  }
  return out;
}

TripleDoc link_batches(const std::vector<TripleDoc>& docs, const NamespaceRegistry& registry,
                       const LinkRule& rule, std::string_view global_prefix) {
  TripleDoc out(batch_graph_iri("linkage", global_prefix));
  const ComponentSet compared = rule.compared();
  std::vector<std::string> predicates;
  for (const auto& t : rule.tiers) predicates.push_back(expand(t.predicate, registry));

  // Partition by collection, then by run inside a collection: pairs with two
  // different runs always conflict, so only same-run pairs and pairs where
  // one side lacks a run are compared.
  struct Entry {
    std::size_t batch;
    std::string iri;
    Uai uai;
  };
  std::map<std::string, std::map<std::string, std::vector<Entry>>> partitions;
  std::set<std::tuple<std::size_t, std::string>> seen;
  for (auto& occ : find_uais(docs, registry)) {
    if (!occ.uai.collection_id) continue;
    if (!seen.emplace(occ.batch, occ.iri).second) continue;
    Uai p = project_uai(occ.uai, compared);
    std::string run = p.mzml.value_or("");
    partitions[*p.collection_id][run].push_back({occ.batch, occ.iri, std::move(p)});
  }

  using Link = std::tuple<std::string, std::string, int>;
  using Runs = std::map<std::string, std::vector<Entry>>;
  auto link_partition = [&](const Runs& runs) {
    std::vector<Link> found;
    auto consider = [&](const Entry& a, const Entry& b) {
      if (a.batch == b.batch || a.iri == b.iri) return;
      int tier = link_tier(a.uai, b.uai, rule);
      if (tier < 0) return;
      found.emplace_back(std::min(a.iri, b.iri), std::max(a.iri, b.iri), tier);
    };
    auto no_run = runs.find("");
    for (const auto& [run, entries] : runs) {
      for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j) consider(entries[i], entries[j]);
      if (run.empty() || no_run == runs.end()) continue;
      for (const auto& a : entries)
        for (const auto& b : no_run->second) consider(a, b);
    }
    return found;
  };

  std::vector<const Runs*> parts;
  for (const auto& entry : partitions) parts.push_back(&entry.second);
  std::vector<std::vector<Link>> results(parts.size());
  std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), parts.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < parts.size(); i += workers) results[i] = link_partition(*parts[i]);
    });
  for (auto& t : pool) t.join();

  // Merged in collection order; the first tier seen for a pair is the
  // highest because a pair lives in exactly one partition.
  std::set<std::pair<std::string, std::string>> linked;
  for (auto& found : results)
    for (auto& [lo, hi, tier] : found)
      if (linked.emplace(lo, hi).second) out.add(lo, predicates[static_cast<std::size_t>(tier)], Term::iri(hi));
  out.finalize();
  return out;
}

}  // namespace mskg
