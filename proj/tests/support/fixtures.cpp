#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <random>
#include <set>

#include "mskg/text.hpp"

namespace mskg::testing {

fs::path fixture_dir() { return MSKG_TEST_FIXTURES; }

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::path(MSKG_TEST_SCRATCH) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

namespace {

void put(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  text::write_file(p.string(), content);
}

std::string join(const std::vector<std::string>& cells, char sep) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += sep;
    out += cells[i];
  }
  return out + '\n';
}

std::string decimal2(std::mt19937_64& rng, int lo, int hi) {
  int v = std::uniform_int_distribution<int>(lo, hi)(rng);
  char buf[16];
  std::snprintf(buf, sizeof buf, "0.%02d", v);
  return buf;
}

const std::vector<std::string> kMetadataHeader = {
    "filename", "ATTRIBUTE_DatasetAccession", "DatasetTitle", "SampleType", "NCBITaxonomy", "BiologicalSex",
    "LifeStage", "SampleSolvent"};

}  // namespace

std::string CqFixture::metadata_tsv() const {
  std::string out = join(kMetadataHeader, '\t');
  for (const auto& c : collections)
    for (const auto& s : c.samples)
      out += join({s.filename, c.id, c.title, s.sample_type, c.taxon_id + "|" + c.taxon_name, "female", "Adult",
                   "methanol-water (4:1) + 0.1% formic acid"},
                  '\t');
  return out;
}

void CqFixture::write(const fs::path& dir) const {
  put(dir / "metadata.tsv", metadata_tsv());
  const std::vector<std::string> mn_header = {"SpectrumID", "Compound_Name", "DatasetAccession", "SpectrumFile",
                                              "#Scan#",     "MQScore",       "SharedPeaks",      "InChIKey",
                                              "superclass", "class",         "npclassifier_pathway"};
  const std::vector<std::string> fbmn_header = {"SpectrumID", "Compound_Name", "#Scan#",     "MQScore",
                                                "SharedPeaks", "InChIKey",     "superclass", "class",
                                                "npclassifier_pathway"};
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    const FixtureBundle& bundle = bundles[b];
    fs::path root = dir / "gnps" / bundle.dir;
    std::string coll = "collection_id\ttitle\n";
    std::set<std::size_t> used;
    for (const auto& a : annotations)
      if (a.bundle == b) used.insert(a.collection);
    for (auto c : used) coll += collections[c].id + '\t' + collections[c].title + '\n';
    put(root / "collections.tsv", coll);
    if (bundle.fbmn)
      put(root / "job.tsv", "job_id\tworkflow\tversion\tcollection_id\n" + bundle.job_id + "\tFBMN\trelease_30\t" +
                                collections[bundle.collection].id + "\n");
    else
      put(root / "job.tsv", "job_id\tworkflow\tversion\n" + bundle.job_id + "\tMN\trelease_30\n");

    std::string lib = join(bundle.fbmn ? fbmn_header : mn_header, '\t');
    std::string quant;
    if (bundle.fbmn) {
      std::vector<std::string> h = {"row ID", "row m/z", "row retention time"};
      for (const auto& s : collections[bundle.collection].samples) h.push_back(s.filename + " Peak area");
      quant = join(h, ',');
    }
    for (const auto& a : annotations) {
      if (a.bundle != b) continue;
      const FixtureCompound& cp = compounds[a.compound];
      const FixtureCollection& c = collections[a.collection];
      std::vector<std::string> row = {cp.accession, cp.name};
      if (!bundle.fbmn) {
        row.push_back(c.id);
        row.push_back(c.samples[a.sample].filename);
      }
      for (const auto& cell : {a.scan, a.mq, std::to_string(a.shared_peaks), cp.inchikey, cp.cf_superclass,
                               cp.cf_class, cp.npc_pathway})
        row.push_back(cell);
      lib += join(row, '\t');
      if (bundle.fbmn) {
        std::vector<std::string> q = {a.scan, "200.1", "3.5"};
        for (std::size_t s = 0; s < c.samples.size(); ++s) q.push_back(s == a.sample ? "1000" : "10");
        quant += join(q, ',');
      }
    }
    put(root / "librarysearch.tsv", lib);
    if (bundle.fbmn) put(root / "quant.csv", quant);
  }
}

std::vector<std::string> CqFixture::bundle_paths(const fs::path& dir) const {
  std::vector<std::string> out;
  for (const auto& b : bundles) out.push_back((dir / "gnps" / b.dir).string());
  return out;
}

CqFixture make_cq_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CqFixture f;
  f.compounds = {
      {"CCMSLIB00000000001", "Compound X", "XXXXXXXXXXXXXX-UHFFFAOYSA-N", "Lipids and lipid-like molecules",
       "Fatty Acyls", "Fatty acids"},
      {"CCMSLIB00000000002", "Compound Y", "YYYYYYYYYYYYYY-UHFFFAOYSA-N", "Organoheterocyclic compounds",
       "Indoles and derivatives", "Alkaloids"},
      {"CCMSLIB00000000003", "Caffeine", "RYYVLZVUVIJVGH-UHFFFAOYSA-N", "Organoheterocyclic compounds",
       "Imidazopyrimidines", "Alkaloids"},
      {"CCMSLIB00000000004", "Tryptophan", "QIVBCDIJIAJPQS-VIFPVBQESA-N", "Organic acids and derivatives",
       "Carboxylic acids and derivatives", "Amino acids and Peptides"},
      {"CCMSLIB00000000005", "Phenylalanine", "COLNVLDHVKWLRT-QMMMGPOBSA-N", "Organic acids and derivatives",
       "Carboxylic acids and derivatives", ""},
      {"CCMSLIB00000000006", "Unclassified", "ZZZZZZZZZZZZZZ-UHFFFAOYSA-N", "", "", "Terpenoids"},
  };
  const char* types[] = {"blood", "feces", "urine"};
  const std::pair<const char*, const char*> taxa[] = {{"9606", "Homo sapiens"}, {"10090", "Mus musculus"}};
  for (std::size_t c = 0; c < 5; ++c) {
    FixtureCollection col;
    char id[16];
    std::snprintf(id, sizeof id, "MSV%09zu", 100 + c);
    col.id = id;
    col.title = "Study " + std::string(1, static_cast<char>('A' + c));
    col.taxon_id = taxa[c % 2].first;
    col.taxon_name = taxa[c % 2].second;
    std::size_t n = 3 + c % 2;
    for (std::size_t s = 0; s < n; ++s)
      col.samples.push_back({"c" + std::to_string(c + 1) + "_s" + std::to_string(s + 1) + ".mzML",
                             c == 4 ? "soil" : types[s % 3]});
    f.collections.push_back(std::move(col));
  }
  f.bundles = {{"mn_all", "a1b2c3d4e5f60001", false, 0},
               {"fbmn_study_a", "a1b2c3d4e5f60002", true, 0},
               {"fbmn_study_b", "a1b2c3d4e5f60003", true, 1}};

  // X in studies A-D, Y in studies A-C; the rest is drawn at random from
  // the other compounds.
  std::vector<std::pair<std::size_t, std::size_t>> fixed;  // (collection, compound)
  for (std::size_t c = 0; c < 4; ++c) fixed.emplace_back(c, kInchikeyX);
  for (std::size_t c = 0; c < 3; ++c) fixed.emplace_back(c, kInchikeyY);

  std::vector<std::size_t> scan_counter(f.bundles.size(), 0);
  auto add = [&](std::size_t bundle, std::size_t coll, std::size_t compound) {
    FixtureAnnotation a;
    a.bundle = bundle;
    a.collection = coll;
    a.compound = compound;
    a.sample = std::uniform_int_distribution<std::size_t>(0, f.collections[coll].samples.size() - 1)(rng);
    a.scan = std::to_string(++scan_counter[bundle]);
    a.mq = decimal2(rng, 50, 99);
    a.shared_peaks = std::uniform_int_distribution<int>(3, 30)(rng);
    f.annotations.push_back(a);
  };
  for (auto [c, cp] : fixed) add(0, c, cp);
  std::uniform_int_distribution<std::size_t> other(2, f.compounds.size() - 1);
  while (f.annotations.size() < 30) add(0, std::uniform_int_distribution<std::size_t>(0, 4)(rng), other(rng));
  while (f.annotations.size() < 40) add(1, 0, other(rng));
  while (f.annotations.size() < 50) add(2, 1, other(rng));
  return f;
}

std::vector<SampleRecord> make_organism_records(std::size_t rows, std::size_t distinct, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const std::vector<std::string> columns = {
      "NCBITaxonomy", "Country", "ENVOEnvironmentBiomeIndex", "ENVOEnvironmentMaterialIndex",
      "BiologicalSex", "LifeStage", "HealthStatus", "AgeInYears"};
  static const std::vector<std::vector<std::string>> pools = {
      {"9606|Homo sapiens", "10090|Mus musculus", "10116|Rattus norvegicus"},
      {"Germany", "France", "", "Brazil"},
      {"ENVO:01000249|urban biome", ""},
      {"ENVO:02000020|blood", "ENVO:00002003|feces", ""},
      {"female", "male", ""},
      {"Adult", "Child", "Infant"},
      {"Healthy", "Diabetic", ""},
      {"34", "41", "", "7"}};
  std::set<std::vector<std::string>> seen;
  std::vector<std::vector<std::string>> tuples;
  while (tuples.size() < distinct) {
    std::vector<std::string> t;
    for (const auto& pool : pools) t.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    if (seen.insert(t).second) tuples.push_back(std::move(t));
  }
  std::vector<std::size_t> pick(rows);
  for (std::size_t i = 0; i < rows; ++i)
    pick[i] = i < distinct ? i : std::uniform_int_distribution<std::size_t>(0, distinct - 1)(rng);
  std::shuffle(pick.begin(), pick.end(), rng);

  std::vector<SampleRecord> out;
  for (std::size_t i = 0; i < rows; ++i) {
    SampleRecord r;
    r.row_id = i + 1;
    r.filename = "f" + std::to_string(i) + ".mzML";
    r.collection_id = "MSV000000900";
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const std::string& v = tuples[pick[i]][c];
      r.columns.emplace(columns[c], v.empty() ? std::nullopt : std::optional<std::string>(v));
    }
    out.push_back(std::move(r));
  }
  return out;
}

Uai random_uai(std::mt19937_64& rng) {
  static const std::string chars = "abcXYZ019_.-:% /";
  auto component = [&] {
    std::string s;
    int n = std::uniform_int_distribution<int>(1, 12)(rng);
    for (int i = 0; i < n; ++i) s += chars[std::uniform_int_distribution<std::size_t>(0, chars.size() - 1)(rng)];
    return s;
  };
  std::bernoulli_distribution coin(0.5);
  Uai u;
  do {
    u = Uai{};
    if (coin(rng)) u.collection_id = component();
    if (coin(rng)) u.mzml = component();
    if (coin(rng)) u.scan = component();
    if (u.collection_id && coin(rng)) u.annotation_file = component();
    if (coin(rng)) u.hit_number = std::uniform_int_distribution<std::uint32_t>(1, 500)(rng);
    if (coin(rng)) u.feature_id = component();
    if (coin(rng)) u.feature_table = component();
  } while (u.empty());
  return u;
}

ScaleFixture make_scale_fixture(const fs::path& dir, std::size_t collections, std::size_t samples_per_collection,
                                std::size_t annotations_per_collection, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ScaleFixture out;
  out.metadata = dir / "scale_metadata.tsv";
  out.bundle = (dir / "scale_bundle").string();
  fs::create_directories(out.bundle);

  std::ofstream meta(out.metadata);
  meta << join(kMetadataHeader, '\t');
  std::ofstream coll(fs::path(out.bundle) / "collections.tsv");
  coll << "collection_id\ttitle\n";
  std::ofstream lib(fs::path(out.bundle) / "librarysearch.tsv");
  lib << "SpectrumID\tCompound_Name\tDatasetAccession\tSpectrumFile\t#Scan#\tMQScore\tSharedPeaks\tMZErrorPPM\t"
         "InChIKey\tsuperclass\tclass\tsubclass\tnpclassifier_pathway\tnpclassifier_superclass\n";
  text::write_file((fs::path(out.bundle) / "job.tsv").string(), "job_id\tworkflow\tversion\nfeedfacecafe\tMN\tr30\n");

  const char* types[] = {"blood", "feces", "urine", "plasma", "soil"};
  std::uniform_int_distribution<int> lib_pick(1, 5000);
  for (std::size_t c = 0; c < collections; ++c) {
    std::string id = "MSV" + std::to_string(500000000 + c);
    std::string title = "Scale study " + std::to_string(c);
    coll << id << '\t' << title << '\n';
    for (std::size_t s = 0; s < samples_per_collection; ++s) {
      meta << "s" << c << "_" << s << ".mzML\t" << id << '\t' << title << '\t' << types[(c + s) % 5] << '\t'
           << (c % 3 ? "9606|Homo sapiens" : "10090|Mus musculus") << '\t' << (s % 2 ? "male" : "female")
           << "\tAdult\tmethanol-water (4:1) + 0.1% formic acid\n";
      ++out.samples;
    }
    for (std::size_t a = 0; a < annotations_per_collection; ++a) {
      int l = lib_pick(rng);
      lib << "CCMSLIB" << 10000000 + l << "\tCompound " << l << '\t' << id << "\ts" << c << "_"
          << a % samples_per_collection << ".mzML\t" << a + 1 << '\t' << decimal2(rng, 50, 99) << '\t'
          << 3 + l % 27 << '\t' << decimal2(rng, 1, 99) << "\tIK" << l << "AAAAAAAAAA-UHFFFAOYSA-N\tSuper "
          << l % 13 << "\tClass " << l % 41 << "\tSubclass " << l % 97 << "\tPathway " << l % 7 << "\tNPC super "
          << l % 29 << '\n';
      ++out.annotations;
    }
  }
  return out;
}

// Counts missing cells straight from the file text.
std::map<std::string, Recount> recount_missing(const std::string& content, const MappingManifest& m) {
  std::istringstream in(content);
  std::string line;
  std::getline(in, line);
  auto header = text::split(line, '\t');
  std::set<std::string> markers;
  for (const auto& mk : m.missing_markers) markers.insert(text::to_lower_ascii(mk));
  std::map<std::string, Recount> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = text::split(line, '\t');
    cells.resize(header.size());
    auto is_missing = [&](const std::string& c) {
      std::string t(text::trim(c));
      return markers.count(text::to_lower_ascii(t)) > 0;
    };
    if (is_missing(cells[0]) || is_missing(cells[1])) continue;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == m.filename_column || header[i] == m.collection_column ||
          (m.title_column && header[i] == *m.title_column))
        continue;
      auto& r = out[header[i]];
      r.column = header[i];
      ++r.total;
      r.missing += is_missing(cells[i]);
    }
  }
  return out;
}

std::string random_metadata(std::uint64_t seed, std::size_t rows) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> cols = {"SampleType", "Country", "AgeInYears", "HealthStatus", "LifeStage"};
  const std::vector<std::string> missing = {"", "NA", "n/a", "not specified", " NaN "};
  std::string out = "filename\tATTRIBUTE_DatasetAccession";
  for (const auto& c : cols) out += "\t" + c;
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    out += "f" + std::to_string(r) + ".mzML\tMSV000000777";
    for (std::size_t c = 0; c < cols.size(); ++c) {
      double p = 0.15 * static_cast<double>(c);
      bool miss = std::bernoulli_distribution(p)(rng);
      out += "\t" + (miss ? missing[std::uniform_int_distribution<std::size_t>(0, missing.size() - 1)(rng)]
                          : "v" + std::to_string(r % 7));
    }
    out += '\n';
  }
  return out;
}

namespace {

const std::vector<OntologyTermRef> kDedupValueTypes = {vocab::kMqScore, vocab::kSharedPeaks, vocab::kMzErrorPpm,
                                                       vocab::kMassDiff, OntologyTermRef("MBS", "Age")};

}  // namespace

std::vector<NodeSpec> make_dedup_specs() {
  std::vector<NodeSpec> specs;
  for (int copy = 0; copy < 3; ++copy)
    for (int i = 0; i < 50; ++i) {
      NodeSpec e = NodeSpec::prov_entity("measurement", {vocab::kProvEntity},
                                         {{"row", std::to_string(i)}, {"copy", std::to_string(copy)}});
      e.edge(vocab::kHasAttribute,
             NodeSpec::value_node({kDedupValueTypes[static_cast<std::size_t>(i) % kDedupValueTypes.size()]},
                                  decimal_literal(std::to_string(i / 5) + ".5")));
      specs.push_back(std::move(e));
    }
  for (const char* job : {"job-1", "job-2"})
    for (int i = 0; i < 10; ++i)
      specs.push_back(NodeSpec::prov_activity(
          "processing", {vocab::kProvActivity},
          {{"step", "step-" + std::to_string(i)}, {"software", "GNPS"}, {"version", "30"}, {"job", job}}));
  return specs;
}

}  // namespace mskg::testing
