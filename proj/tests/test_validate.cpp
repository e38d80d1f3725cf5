#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mskg/serialize.hpp"
#include "mskg/validate.hpp"
#include "runner.hpp"

using namespace mskg;
using namespace mskg::testing;

namespace {

struct Graph {
  Workspace ws;
  std::vector<TripleDoc> docs;
};

const Graph& graph() {
  static Graph g = [] {
    Workspace ws = build_cq_graph(make_cq_fixture(), scratch_dir("validate_fixture"));
    auto docs = load_docs(ws.config.output_dir);
    return Graph{ws, docs};
  }();
  return g;
}

std::string p(const OntologyTermRef& t) { return expand(t, graph().ws.registry); }

std::size_t count(const std::vector<Violation>& vs, const std::string& check) {
  std::size_t n = 0;
  for (const auto& v : vs) n += v.check == check;
  return n;
}

// Index of the first document holding a subject of the given type.
std::pair<std::size_t, std::string> find_typed(const std::vector<TripleDoc>& docs, const OntologyTermRef& type) {
  std::string want = nt_iri(p(type));
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (const auto& t : docs[d].triples())
      if (t.predicate == p(vocab::kRdfType) && t.object == want) return {d, t.subject};
  return {0, ""};
}

}  // namespace

TEST(Validate, CleanFixtureHasNoViolations) {
  auto v = validate_docs(graph().docs, graph().ws.registry);
  EXPECT_TRUE(v.empty()) << violations_tsv(v);
}

TEST(Validate, DuplicatedValueNodeIsReported) {
  auto docs = graph().docs;
  std::string value_pred = p(vocab::kProvValue);
  for (auto& doc : docs) {
    const Triple* value = nullptr;
    for (const auto& t : doc.triples())
      if (t.predicate == value_pred) value = &t;
    if (!value) continue;
    std::string original = value->subject, copy = original + "-copy";
    std::vector<Triple> extra;
    for (const auto& t : doc.triples())
      if (t.subject == original) extra.push_back({copy, t.predicate, t.object});
    for (auto& t : extra) doc.add(t);
    doc.finalize();
    break;
  }
  auto v = validate_docs(docs, graph().ws.registry);
  EXPECT_EQ(v.size(), 1u) << violations_tsv(v);
  EXPECT_EQ(count(v, "duplicate-value-node"), 1u);
}

TEST(Validate, MissingUaiIsReported) {
  auto docs = graph().docs;
  auto [d, ann] = find_typed(docs, vocab::kMolecularAnnotation);
  ASSERT_FALSE(ann.empty());
  TripleDoc stripped(docs[d].graph_name());
  for (const auto& t : docs[d].triples())
    if (!(t.subject == ann && t.predicate == p(vocab::kHasIdentifier))) stripped.add(t);
  stripped.finalize();
  docs[d] = stripped;
  auto v = validate_docs(docs, graph().ws.registry);
  EXPECT_EQ(count(v, "missing-uai"), 1u) << violations_tsv(v);
}

TEST(Validate, HitNumberAndMergedActivities) {
  auto docs = graph().docs;
  auto [d, ann] = find_typed(docs, vocab::kMolecularAnnotation);
  TripleDoc extra("urn:corrupt");
  std::string uai = "urn:uai:bad";
  extra.add(ann, p(vocab::kHasIdentifier), Term::iri(uai));
  extra.add(uai, p(vocab::kRdfType), Term::iri(p(vocab::kUai)));
  extra.add(uai, p(vocab::kRdfsLabel), Term::literal("mzspec:MSV1:a.mzML:scan:3:annot:f.tsv:2"));
  extra.add("urn:activity", p(vocab::kRdfType), Term::iri(p(vocab::kProvActivity)));
  extra.add("urn:activity", p(vocab::kProvWasAssociatedWith), Term::iri("urn:agent:1"));
  extra.add("urn:activity", p(vocab::kProvWasAssociatedWith), Term::iri("urn:agent:2"));
  extra.finalize();
  docs.push_back(extra);
  auto v = validate_docs(docs, graph().ws.registry);
  EXPECT_EQ(count(v, "gnps-hit-number"), 1u) << violations_tsv(v);
  EXPECT_EQ(count(v, "merged-prov-node"), 1u) << violations_tsv(v);
}

TEST(Validate, InvalidUaiLabel) {
  TripleDoc doc("urn:g");
  const auto& r = graph().ws.registry;
  doc.add("urn:u", expand(vocab::kRdfType, r), Term::iri(expand(vocab::kUai, r)));
  doc.add("urn:u", expand(vocab::kRdfsLabel, r), Term::literal("mzspec::a.mzML:annot:f.tsv:1"));
  doc.finalize();
  auto v = validate_docs({doc}, r);
  EXPECT_EQ(count(v, "invalid-uai"), 1u) << violations_tsv(v);
}
