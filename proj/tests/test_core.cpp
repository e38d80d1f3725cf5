#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mskg/error.hpp"
#include "mskg/namespaces.hpp"
#include "mskg/node.hpp"
#include "mskg/term.hpp"
#include "mskg/text.hpp"
#include "mskg/uri.hpp"

using namespace mskg;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ConfigError;
}

}  // namespace

TEST(Registry, CoreHasNinePrefixes) {
  auto r = NamespaceRegistry::core();
  ASSERT_EQ(r.entries().size(), 9u);
  EXPECT_EQ(*r.find("MBS"), "https://ns.inria.fr/metaboKG/schema/");
  EXPECT_EQ(*r.find("SIO"), "http://semanticscience.org/resource/");
}

TEST(Registry, FileRoundTripIsByteIdentical) {
  std::string path = std::string(MSKG_DATA_DIR) + "/namespaces.tsv";
  std::string content = text::read_file(path);
  EXPECT_EQ(NamespaceRegistry::from_tsv(content).to_tsv(), content);
}

TEST(Registry, ExpandAndCompact) {
  auto r = NamespaceRegistry::standard();
  EXPECT_EQ(r.expand_curie("MS:1002894"), "http://purl.obolibrary.org/obo/MS_1002894");
  EXPECT_EQ(r.expand("SIO", "000008"), "http://semanticscience.org/resource/000008");
  EXPECT_EQ(code_of([&] { r.expand_curie("NOPE:1"); }), ErrorCode::UnknownPrefix);
  auto c = r.compact("https://ns.inria.fr/metaboKG/schema/sampletype_blood");
  ASSERT_TRUE(c);
  EXPECT_EQ(c->first, "MBS");
}

TEST(Registry, BuiltinsDoNotOverrideCore) {
  auto r = NamespaceRegistry::core();
  r.add("rdf", "urn:custom#");
  r.with_builtins();
  EXPECT_EQ(*r.find("rdf"), "urn:custom#");
  EXPECT_TRUE(r.contains("xsd"));
}

TEST(Terms, ParseCurieRequiresRegisteredPrefix) {
  auto r = NamespaceRegistry::standard();
  EXPECT_EQ(parse_curie("MS:1001911", r), OntologyTermRef("MS", "1001911"));
  EXPECT_EQ(code_of([&] { parse_curie("XYZ:1", r); }), ErrorCode::UnknownPrefix);
  auto t = to_term("http://purl.obolibrary.org/obo/NCBITaxon_9606", r);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->curie(), "NCBITaxon:9606");
}

TEST(Literals, CanonicalNumericForms) {
  EXPECT_EQ(*canonical_decimal("+01.50"), "1.5");
  EXPECT_EQ(*canonical_decimal("1e-3"), "0.001");
  EXPECT_EQ(*canonical_decimal("-0.0"), "0.0");
  EXPECT_FALSE(canonical_decimal("abc"));
  EXPECT_EQ(*canonical_integer("007"), "7");
  EXPECT_EQ(decimal_literal("34").lexical, "34.0");
  EXPECT_EQ(code_of([] { make_literal("x1", xsd::kDecimal); }), ErrorCode::InvalidLiteral);
}

TEST(Literals, StringsAreNfcAndTrimmed) {
  EXPECT_EQ(string_literal("  Cafe\xCC\x81 ").lexical, "Caf\xC3\xA9");
}

TEST(Nodes, KindRules) {
  auto value = NodeSpec::value_node({vocab::kMqScore}, decimal_literal("0.9"));
  EXPECT_NO_THROW(value.validate());
  NodeSpec bad = value;
  bad.types.clear();
  EXPECT_EQ(code_of([&] { bad.validate(); }), ErrorCode::InvalidNode);

  auto ind = NodeSpec::named_individual("country", {OntologyTermRef("MBS", "Country")}, "Germany");
  EXPECT_NO_THROW(ind.validate());
  ind.value = string_literal("x");
  EXPECT_EQ(code_of([&] { ind.validate(); }), ErrorCode::InvalidNode);

  auto prov = NodeSpec::prov_entity("sample", {vocab::kProvEntity}, {{"filename", "a.mzML"}});
  EXPECT_NO_THROW(prov.validate());
  prov.types = {vocab::kSampleClass};
  EXPECT_EQ(code_of([&] { prov.validate(); }), ErrorCode::InvalidNode);
  auto empty = NodeSpec::prov_activity("run", {vocab::kProvActivity}, {});
  EXPECT_EQ(code_of([&] { empty.validate(); }), ErrorCode::InvalidNode);
}

TEST(UriMinting, OracleHashes) {
  // Values from tests/oracles/uri_oracle.py.
  EXPECT_EQ(hash57(""), "iX966VZmRU5DFEmhbA22Kh");
  EXPECT_EQ(hash57("sample|file=a.mzML|src=MSV000001"), "fGEWD8ZyTLrNKtqoexCGZA");
  EXPECT_EQ(hash57("annotation|collection=MSV000001"), "ESNe7vJw5uLSV7h3mAr3G6");
  EXPECT_EQ(hash57("annotation|collection=MSV000002"), "CtKKuWM69R4bUgLD25d32t");
  EXPECT_EQ(hash57("sample|collection=MSV000001|filename=a.mzML"), "JPv4QSPQU46WKg7m5eYTWC");
  EXPECT_EQ(hash57("organism|a=1|b=2"), "W9pNe2ANsXPAfb5UpBgz9X");
  EXPECT_EQ(hash57("\xC3\xA9"), "FHZ7rEbvBcsRZkCr2Tnx2S");
}

TEST(UriMinting, CanonicalIdentity) {
  EXPECT_EQ(canonical_identity("sample", {{"filename", "a.mzML"}, {"collection", "MSV000001"}}),
            "sample|collection=MSV000001|filename=a.mzML");
  EXPECT_EQ(canonical_identity("sample", {}, Fallback{"a.mzML", "MSV000001"}), "sample|file=a.mzML|src=MSV000001");
  EXPECT_EQ(canonical_identity("x", {{"k", "a|b"}}), "x|k=a%7Cb");
  EXPECT_EQ(mint_uri("x", {{"k", "a|b"}}).hash, "4FpZtzf54J8QupLvf88TqU");
  EXPECT_EQ(code_of([] { canonical_identity("sample", {}); }), ErrorCode::EmptyIdentity);
  EXPECT_EQ(code_of([] { canonical_identity("", {{"a", "b"}}); }), ErrorCode::EmptyIdentity);
}

TEST(UriMinting, DeterministicAndNormalized) {
  auto a = mint_uri("annotation", {{"collection", "MSV000001"}});
  auto b = mint_uri("annotation", {{"collection", "MSV000001"}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.str(), "https://ns.inria.fr/metaboKG/resource/annotation/ESNe7vJw5uLSV7h3mAr3G6");
  EXPECT_NE(a, mint_uri("annotation", {{"collection", "MSV000002"}}));
  // Composed and decomposed forms mint the same IRI.
  EXPECT_EQ(mint_uri("x", {{"k", "Caf\xC3\xA9"}}), mint_uri("x", {{"k", "Cafe\xCC\x81"}}));
  for (int i = 0; i < 200; ++i) {
    auto h = hash57(std::to_string(i));
    EXPECT_EQ(h.size(), kHashLength);
    EXPECT_EQ(h.find_first_not_of(kBase57Alphabet), std::string::npos);
  }
}
