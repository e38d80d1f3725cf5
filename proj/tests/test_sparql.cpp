#include <gtest/gtest.h>

#include "mskg/error.hpp"
#include "mskg/sparql/engine.hpp"
#include "mskg/term.hpp"

using namespace mskg;
using namespace mskg::sparql;

namespace {

constexpr const char* kEx = "http://example.org/";

std::string ex(const std::string& local) { return kEx + local; }

const std::string kRdfTypeIri = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

Dataset small_dataset() {
  TripleDoc g1(ex("g1")), g2(ex("g2"));
  auto lit = [](const std::string& v, std::string_view dt = {}) { return Term::literal(v, std::string(dt)); };
  g1.add(ex("a"), kRdfTypeIri, Term::iri(ex("Person")));
  g1.add(ex("a"), ex("name"), lit("Alice"));
  g1.add(ex("a"), ex("age"), lit("34", xsd::kInteger));
  g1.add(ex("b"), kRdfTypeIri, Term::iri(ex("Person")));
  g1.add(ex("b"), ex("name"), lit("Bob"));
  g1.add(ex("b"), ex("age"), lit("28", xsd::kInteger));
  g2.add(ex("c"), kRdfTypeIri, Term::iri(ex("Person")));
  g2.add(ex("c"), ex("name"), lit("Carol"));
  g2.add(ex("c"), ex("score"), lit("0.5", xsd::kDecimal));
  g2.add(ex("a"), ex("knows"), Term::iri(ex("c")));
  g1.finalize();
  g2.finalize();
  Dataset d;
  d.load(g1);
  d.load(g2);
  return d;
}

const std::string kPrefix = "PREFIX ex: <http://example.org/>\nPREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n";

ResultTable q(const Dataset& d, const std::string& body) { return execute(d, kPrefix + body); }

std::vector<std::string> col(const ResultTable& t, const std::string& var) {
  std::vector<std::string> out;
  auto c = t.column(var);
  for (const auto& r : t.rows) out.push_back(r[*c] ? r[*c]->value : "UNBOUND");
  return out;
}

}  // namespace

TEST(Sparql, BasicGraphPatternOverUnion) {
  auto d = small_dataset();
  auto t = q(d, "SELECT ?n WHERE { ?p a ex:Person ; ex:name ?n } ORDER BY ?n");
  EXPECT_EQ(col(t, "n"), (std::vector<std::string>{"Alice", "Bob", "Carol"}));
  EXPECT_EQ(d.graph_size(ex("g1")), 6u);
  EXPECT_EQ(d.default_graph().size(), 10u);
}

TEST(Sparql, OptionalFilterAndBound) {
  auto d = small_dataset();
  auto t = q(d, "SELECT ?n ?age WHERE { ?p ex:name ?n OPTIONAL { ?p ex:age ?age } } ORDER BY ?n");
  EXPECT_EQ(col(t, "age"), (std::vector<std::string>{"34", "28", "UNBOUND"}));
  t = q(d, "SELECT ?n WHERE { ?p ex:name ?n OPTIONAL { ?p ex:age ?age } FILTER (!BOUND(?age)) }");
  EXPECT_EQ(col(t, "n"), std::vector<std::string>{"Carol"});
  t = q(d, "SELECT ?n WHERE { ?p ex:name ?n ; ex:age ?a FILTER (?a > 30) }");
  EXPECT_EQ(col(t, "n"), std::vector<std::string>{"Alice"});
  t = q(d, "SELECT ?n WHERE { ?p ex:name ?n FILTER STRSTARTS(STR(?p), \"http://example.org/b\") }");
  EXPECT_EQ(col(t, "n"), std::vector<std::string>{"Bob"});
}

TEST(Sparql, GraphAndValues) {
  auto d = small_dataset();
  auto t = q(d, "SELECT ?n WHERE { GRAPH ex:g2 { ?p ex:name ?n } }");
  EXPECT_EQ(col(t, "n"), std::vector<std::string>{"Carol"});
  t = q(d, "SELECT ?g (COUNT(*) AS ?c) WHERE { GRAPH ?g { ?s ?p ?o } } GROUP BY ?g ORDER BY ?g");
  EXPECT_EQ(col(t, "c"), (std::vector<std::string>{"6", "4"}));
  t = q(d, "SELECT ?n WHERE { ?p ex:name ?n } VALUES ?n { \"Bob\" \"Zed\" }");
  EXPECT_EQ(col(t, "n"), std::vector<std::string>{"Bob"});
}

TEST(Sparql, AggregatesAndHaving) {
  auto d = small_dataset();
  auto t = q(d, "SELECT (COUNT(DISTINCT ?p) AS ?n) (AVG(?a) AS ?avg) (SUM(?a) AS ?sum) (MIN(?a) AS ?lo) "
                "(MAX(?a) AS ?hi) WHERE { ?p ex:age ?a }");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(col(t, "n")[0], "2");
  EXPECT_DOUBLE_EQ(*numeric_value(*t.rows[0][*t.column("avg")]), 31.0);
  EXPECT_EQ(col(t, "sum")[0], "62");
  EXPECT_EQ(col(t, "lo")[0], "28");
  EXPECT_EQ(col(t, "hi")[0], "34");
  t = q(d, "SELECT ?t (COUNT(?p) AS ?c) WHERE { ?p a ?t } GROUP BY ?t HAVING (COUNT(?p) > 3)");
  EXPECT_TRUE(t.rows.empty());
  t = q(d, "SELECT ?t (COUNT(?p) AS ?c) WHERE { ?p a ?t } GROUP BY ?t HAVING (COUNT(?p) > 2)");
  EXPECT_EQ(t.rows.size(), 1u);
  t = q(d, "SELECT (SAMPLE(?n) AS ?s) WHERE { ?p ex:name ?n }");
  EXPECT_EQ(col(t, "s")[0], "Alice");
  t = q(d, "SELECT (COUNT(*) AS ?c) WHERE { ?p ex:nothing ?x }");
  EXPECT_EQ(col(t, "c")[0], "0");
}

TEST(Sparql, DecimalCastAverage) {
  auto d = small_dataset();
  auto t = q(d, "SELECT (AVG(xsd:decimal(?s)) AS ?avg) WHERE { ?p ex:score ?s }");
  EXPECT_DOUBLE_EQ(*numeric_value(*t.rows[0][0]), 0.5);
}

TEST(Sparql, OrderLimitOffsetDistinct) {
  auto d = small_dataset();
  auto t = q(d, "SELECT ?n WHERE { ?p ex:name ?n } ORDER BY DESC(?n) LIMIT 2");
  EXPECT_EQ(col(t, "n"), (std::vector<std::string>{"Carol", "Bob"}));
  t = q(d, "SELECT ?n WHERE { ?p ex:name ?n } ORDER BY ?n OFFSET 1 LIMIT 1");
  EXPECT_EQ(col(t, "n"), std::vector<std::string>{"Bob"});
  t = q(d, "SELECT DISTINCT ?t WHERE { ?p a ?t }");
  EXPECT_EQ(t.rows.size(), 1u);
}

TEST(Sparql, UnionMinusExistsBind) {
  auto d = small_dataset();
  auto t = q(d, "SELECT ?x WHERE { { ?x ex:age ?a } UNION { ?x ex:score ?s } }");
  EXPECT_EQ(t.rows.size(), 3u);
  t = q(d, "SELECT ?n WHERE { ?p ex:name ?n MINUS { ?p ex:age ?a } }");
  EXPECT_EQ(col(t, "n"), std::vector<std::string>{"Carol"});
  t = q(d, "SELECT ?n WHERE { ?p ex:name ?n FILTER EXISTS { ?p ex:knows ?o } }");
  EXPECT_EQ(col(t, "n"), std::vector<std::string>{"Alice"});
  t = q(d, "SELECT ?u WHERE { ?p ex:name ?n BIND(UCASE(?n) AS ?u) FILTER (?n = \"Bob\") }");
  EXPECT_EQ(col(t, "u"), std::vector<std::string>{"BOB"});
}

TEST(Sparql, Errors) {
  auto d = small_dataset();
  EXPECT_THROW(execute(d, "SELECT ?x WHERE { ?x ex:p ?y }"), Error);  // unknown prefix
  EXPECT_THROW(execute(d, "SELECT WHERE {"), Error);
}

TEST(Results, JsonRoundTripAndTsv) {
  auto d = small_dataset();
  auto t = q(d, "SELECT ?p ?n ?age WHERE { ?p ex:name ?n OPTIONAL { ?p ex:age ?age } } ORDER BY ?n");
  auto back = ResultTable::from_json(t.to_json());
  EXPECT_EQ(back.vars, t.vars);
  EXPECT_EQ(back.to_tsv(), t.to_tsv());
  EXPECT_EQ(t.to_tsv().substr(0, 14), "?p\t?n\t?age\n<ht");
  EXPECT_THROW(ResultTable::from_json("{}"), Error);
}
