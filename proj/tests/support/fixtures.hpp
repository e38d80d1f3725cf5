#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mskg/emitter.hpp"
#include "mskg/metadata.hpp"
#include "mskg/uai.hpp"

namespace mskg::testing {

namespace fs = std::filesystem;

// Source tree fixtures (tests/fixtures).
fs::path fixture_dir();
// Fresh, empty scratch directory under the build tree.
fs::path scratch_dir(const std::string& name);

struct FixtureCompound {
  std::string accession;
  std::string name;
  std::string inchikey;
  std::string cf_superclass;
  std::string cf_class;     // empty == not classified
  std::string npc_pathway;  // empty == not classified
};

struct FixtureSample {
  std::string filename;
  std::string sample_type;
};

struct FixtureCollection {
  std::string id;
  std::string title;
  std::string taxon_id;
  std::string taxon_name;
  std::vector<FixtureSample> samples;
};

struct FixtureBundle {
  std::string dir;
  std::string job_id;
  bool fbmn = false;
  std::size_t collection = 0;  // FBMN bundles cover one collection
};

struct FixtureAnnotation {
  std::size_t bundle = 0;
  std::size_t collection = 0;
  std::size_t sample = 0;  // index into the collection's samples
  std::size_t compound = 0;
  std::string scan;  // scan (MN) or feature id (FBMN)
  std::string mq;    // decimal lexical form
  long long shared_peaks = 0;
};

// Ground-truth model behind the competency-question fixture. The files it
// writes are what the pipeline sees; the oracle reads only this model.
struct CqFixture {
  std::vector<FixtureCollection> collections;
  std::vector<FixtureCompound> compounds;
  std::vector<FixtureBundle> bundles;
  std::vector<FixtureAnnotation> annotations;

  // <dir>/metadata.tsv and <dir>/gnps/<bundle>/...
  void write(const fs::path& dir) const;
  std::vector<std::string> bundle_paths(const fs::path& dir) const;
  std::string metadata_tsv() const;
};

inline constexpr std::size_t kInchikeyX = 0;  // compound annotated in 4 studies
inline constexpr std::size_t kInchikeyY = 1;  // compound annotated in 3 studies

// 5 collections, 50 annotations over one MN and two FBMN bundles.
CqFixture make_cq_fixture(std::uint64_t seed = 7);

// Organism records: `rows` records drawn from `distinct` distinct 8-tuples,
// every tuple used at least once.
std::vector<SampleRecord> make_organism_records(std::size_t rows, std::size_t distinct, std::uint64_t seed);

// A structurally valid identifier with random components, including ':' and
// '%' inside values.
Uai random_uai(std::mt19937_64& rng);

// Large synthetic batch: one metadata table plus one MN bundle under `dir`.
struct ScaleFixture {
  fs::path metadata;
  std::string bundle;
  std::size_t annotations = 0;
  std::size_t samples = 0;
};
ScaleFixture make_scale_fixture(const fs::path& dir, std::size_t collections, std::size_t samples_per_collection,
                                std::size_t annotations_per_collection, std::uint64_t seed = 11);

// Per-column missing counts taken straight from the table text.
struct Recount {
  std::string column;
  std::size_t missing = 0, total = 0;
};
std::map<std::string, Recount> recount_missing(const std::string& content, const MappingManifest& m);

// Tab-separated table with columns missing at increasing rates and mixed
// missing markers.
std::string random_metadata(std::uint64_t seed, std::size_t rows);

// 50 distinct (type, value) pairs, each used by three entities, and ten
// activities per job whose attributes differ only by the job. Emits 50
// value nodes and 20 activities.
std::vector<NodeSpec> make_dedup_specs();

}  // namespace mskg::testing
