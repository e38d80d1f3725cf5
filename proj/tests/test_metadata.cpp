#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "mskg/error.hpp"
#include "mskg/mapping.hpp"
#include "mskg/metadata.hpp"
#include "mskg/organism.hpp"
#include "mskg/solvent.hpp"
#include "mskg/table.hpp"
#include "mskg/text.hpp"

using namespace mskg;
using namespace mskg::testing;

namespace {

const NamespaceRegistry& reg() {
  static NamespaceRegistry r = NamespaceRegistry::standard();
  return r;
}
const MappingManifest& manifest() {
  static MappingManifest m = MappingManifest::load(std::string(MSKG_DATA_DIR) + "/metadata_manifest.json", reg());
  return m;
}
const TermIndex& index() {
  static TermIndex i = TermIndex::load(std::string(MSKG_DATA_DIR) + "/term_index.tsv", reg());
  return i;
}

void check_missingness(const std::string& content) {
  auto table = parse_metadata(content, manifest());
  auto rows = missingness_report(table.records);
  auto want = recount_missing(content, manifest());
  ASSERT_EQ(rows.size(), want.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& w = want.at(rows[i].column);
    EXPECT_EQ(rows[i].missing, w.missing) << rows[i].column;
    EXPECT_EQ(rows[i].total, w.total) << rows[i].column;
    EXPECT_EQ(rows[i].pct, 100.0 * static_cast<double>(w.missing) / static_cast<double>(w.total));
    if (i) EXPECT_GE(rows[i - 1].pct, rows[i].pct);
  }
}

}  // namespace

TEST(Table, QuotedCsvAndPadding) {
  auto t = parse_table("a,b,c\n\"x,1\",\"he said \"\"hi\"\"\"\n");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][0], "x,1");
  EXPECT_EQ(t.rows[0][1], "he said \"hi\"");
  EXPECT_EQ(t.rows[0][2], "");
  EXPECT_EQ(sniff_delimiter("a\tb\tc\n"), '\t');
  EXPECT_THROW(parse_table(""), Error);
}

TEST(Metadata, ParsesFixture) {
  auto t = load_metadata((fixture_dir() / "metadata/samples.tsv").string(), manifest());
  ASSERT_EQ(t.records.size(), 5u);
  EXPECT_EQ(t.records[0].collection_id, "MSV000000001");
  EXPECT_EQ(*t.records[0].title, "Human plasma cohort");
  EXPECT_FALSE(*t.records[3].cell("Country"));  // "not specified"
  EXPECT_EQ(**t.records[0].cell("BiologicalSex"), "female");
}

TEST(Metadata, HeaderErrors) {
  try {
    parse_metadata("filename\tfilename\tATTRIBUTE_DatasetAccession\na\tb\tc\n", manifest());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateColumn);
  }
  try {
    parse_metadata("SampleType\nblood\n", manifest());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingMandatoryColumn);
  }
}

TEST(Missingness, FixtureEqualsRecount) {
  check_missingness(text::read_file((fixture_dir() / "metadata/samples.tsv").string()));
}

TEST(Missingness, RandomTablesEqualRecount) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) check_missingness(random_metadata(seed, 200));
}

TEST(Missingness, EmptyInputThrows) { EXPECT_THROW(missingness_report({}), Error); }

TEST(Solvent, WorkedExample) {
  auto start = std::chrono::steady_clock::now();
  auto m = parse_solvent_mixture("methanol-water (4:1) + 0.1% formic acid", &index());
  auto elapsed = std::chrono::steady_clock::now() - start;
  ASSERT_EQ(m.components.size(), 2u);
  ASSERT_EQ(m.additives.size(), 1u);
  EXPECT_EQ(m.components[0].name, "methanol");
  EXPECT_EQ(m.components[0].chemical->curie(), "ChEBI:17790");
  EXPECT_EQ(*m.components[0].proportion, 4.0);
  EXPECT_EQ(m.components[1].name, "water");
  EXPECT_EQ(m.components[1].chemical->curie(), "ChEBI:15377");
  EXPECT_EQ(*m.components[1].proportion, 1.0);
  EXPECT_EQ(m.additives[0].name, "formic acid");
  EXPECT_EQ(m.additives[0].chemical->curie(), "ChEBI:30751");
  EXPECT_DOUBLE_EQ(m.additives[0].concentration, 0.1);
  EXPECT_EQ(m.additives[0].unit, "%");
  EXPECT_LT((std::chrono::duration<double, std::milli>(elapsed).count()), 1.0);
}

TEST(Solvent, VariantsAndRoundTrip) {
  auto slash = parse_solvent_mixture("ACN/H2O (1:1)", &index());
  ASSERT_EQ(slash.components.size(), 2u);
  auto hyphen = parse_solvent_mixture("2-propanol", &index());
  ASSERT_EQ(hyphen.components.size(), 1u);
  EXPECT_EQ(hyphen.components[0].name, "2-propanol");
  auto plain = parse_solvent_mixture("water");
  EXPECT_FALSE(plain.components[0].proportion);
  for (const char* s : {"methanol-water (4:1) + 0.1% formic acid", "ACN/H2O (1:1)",
                        "water/methanol/acetonitrile (2:1:1) + 5 mM ammonium acetate"}) {
    auto a = parse_solvent_mixture(s, &index());
    auto b = parse_solvent_mixture(render_solvent_mixture(a), &index());
    EXPECT_TRUE(same_structure(a, b)) << s << " -> " << render_solvent_mixture(a);
  }
  EXPECT_THROW(parse_solvent_mixture("methanol (4:1"), Error);
  EXPECT_THROW(parse_solvent_mixture(""), Error);
  EXPECT_THROW(parse_solvent_mixture("methanol-water (4:1:2)"), Error);
}

TEST(Solvent, MethodPhrase) {
  EXPECT_EQ(parse_method_phrase("blood draw; centrifugation, freezing"),
            (std::vector<std::string>{"blood draw", "centrifugation", "freezing"}));
}

TEST(Organism, DedupRatioWorkedFixture) {
  auto records = make_organism_records(1000, 16, 42);
  auto orgs = build_organism_individuals(records, manifest().organism_columns);
  EXPECT_EQ(orgs.uris.size(), 16u);
  EXPECT_DOUBLE_EQ(orgs.dedup_ratio, 0.984);
  EXPECT_EQ(orgs.per_record.size(), 1000u);
}

TEST(Organism, RandomizedAgainstBruteForce) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 400)(rng);
    std::size_t distinct = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(rows, 60))(rng);
    auto records = make_organism_records(rows, distinct, rng());
    std::set<std::vector<std::string>> tuples;
    for (const auto& r : records) {
      std::vector<std::string> t;
      for (const auto& c : manifest().organism_columns) {
        const auto* cell = r.cell(c);
        t.push_back(cell && *cell ? **cell : "");
      }
      tuples.insert(t);
    }
    auto orgs = build_organism_individuals(records, manifest().organism_columns);
    double want = static_cast<double>(rows - tuples.size()) / static_cast<double>(rows);
    EXPECT_EQ(orgs.dedup_ratio, want);
  }
}

TEST(Mapping, StrictModeRejectsUnmappedColumn) {
  auto t = load_metadata((fixture_dir() / "metadata/unmapped_column.tsv").string(), manifest());
  EXPECT_EQ(t.unknown_columns, std::vector<std::string>{"FreezerShelf"});
  MappingContext ctx{&manifest(), &reg(), &index(), nullptr, true};
  RunReport report;
  try {
    map_metadata(t.records, ctx, report);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnmappedColumn);
  }
  ctx.strict = false;
  RunReport lenient;
  EXPECT_NO_THROW(map_metadata(t.records, ctx, lenient));
  EXPECT_GE(lenient.count("warning"), 1u);
}

TEST(Mapping, DictionaryAndSampleLayout) {
  auto t = load_metadata((fixture_dir() / "metadata/samples.tsv").string(), manifest());
  MappingContext ctx{&manifest(), &reg(), &index(), nullptr, false};
  RunReport report;
  auto g = map_metadata(t.records, ctx, report);
  EXPECT_EQ(g.organisms.uris.size(), 3u);
  EXPECT_DOUBLE_EQ(g.organisms.dedup_ratio, 0.4);
  const auto& st = g.dictionary.entries().at("SampleType");
  EXPECT_EQ(st.at("blood"), "https://ns.inria.fr/metaboKG/schema/sampletype_blood");
  EXPECT_EQ(st.at("feces"), "https://ns.inria.fr/metaboKG/schema/sampletype_feces");
  EXPECT_NE(g.dictionary.to_json().find("sampletype_blood"), std::string::npos);
}

TEST(Mapping, TermCells) {
  ColumnRule rule;
  rule.column = "NCBITaxonomy";
  rule.term_prefix = "NCBITaxon";
  std::string label;
  auto t = parse_term_cell("9606|Homo sapiens", rule, reg(), &label);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->curie(), "NCBITaxon:9606");
  EXPECT_EQ(label, "Homo sapiens");
  ColumnRule ms;
  auto q = parse_term_cell("Q Exactive|MS:1001911", ms, reg(), &label);
  ASSERT_TRUE(q);
  EXPECT_EQ(q->curie(), "MS:1001911");
}
