#include "mskg/gnps.hpp"

#include <algorithm>
#include <filesystem>
#include <regex>
#include <set>

#include <json.hpp>

#include "mskg/emitter.hpp"
#include "mskg/error.hpp"
#include "mskg/solvent.hpp"
#include "mskg/table.hpp"
#include "mskg/text.hpp"

namespace fs = std::filesystem;

namespace mskg {

std::string_view to_string(Workflow w) { return w == Workflow::FBMN ? "FBMN" : "MN"; }

const GnpsColumnRule* GnpsColumnManifest::field(std::string_view name) const {
  for (const auto& r : rules)
    if (r.field == name) return &r;
  return nullptr;
}

namespace {

GnpsStrategy parse_gnps_strategy(const std::string& s) {
  if (s == "DirectMap") return GnpsStrategy::DirectMap;
  if (s == "Literal") return GnpsStrategy::Literal;
  if (s == "OntologyLookup") return GnpsStrategy::OntologyLookup;
  if (s == "Ignore") return GnpsStrategy::Ignore;
  throw Error(ErrorCode::ConfigError, "unknown GNPS strategy '" + s + "'");
}

}  // namespace

GnpsColumnManifest GnpsColumnManifest::from_json(std::string_view json, const NamespaceRegistry& registry) {
  GnpsColumnManifest m;
  try {
    auto j = nlohmann::json::parse(json);
    m.annotation_pattern = j.value("annotation_table", m.annotation_pattern);
    m.quant_pattern = j.value("quant_table", m.quant_pattern);
    m.cluster_pattern = j.value("cluster_table", m.cluster_pattern);
    for (const auto& c : j.at("columns")) {
      GnpsColumnRule r;
      r.field = c.value("field", "");
      r.names = c.at("names").get<std::vector<std::string>>();
      if (r.names.empty()) throw Error(ErrorCode::ConfigError, "GNPS column entry without names");
      r.strategy = parse_gnps_strategy(c.value("strategy", "Literal"));
      if (c.contains("target_class")) r.target_class = parse_curie(c["target_class"].get<std::string>(), registry);
      if (c.contains("predicate")) r.predicate = parse_curie(c["predicate"].get<std::string>(), registry);
      if (c.contains("datatype")) r.datatype = registry.expand_curie(c["datatype"].get<std::string>());
      r.on_library = c.value("subject", "annotation") == "library";
      r.mandatory = c.value("mandatory", false);
      if (r.field.empty() && r.strategy != GnpsStrategy::Ignore && r.strategy != GnpsStrategy::Literal &&
          !r.target_class)
        throw Error(ErrorCode::ConfigError, "GNPS column " + r.names.front() + " needs a target_class");
      m.rules.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("GNPS column manifest: ") + e.what());
  }
  return m;
}

GnpsColumnManifest GnpsColumnManifest::load(const std::string& path, const NamespaceRegistry& registry) {
  return from_json(text::read_file(path), registry);
}

namespace {

bool table_extension(const fs::path& p) {
  std::string ext = text::to_lower_ascii(p.extension().string());
  return ext == ".tsv" || ext == ".csv" || ext == ".txt" || ext == ".tab";
}

struct BundleFiles {
  std::vector<std::string> relative;  // sorted, generic separators
  std::optional<std::string> annotation, quant, cluster, job, collections;
};

BundleFiles scan_bundle(const std::string& bundle_path, const GnpsColumnManifest& m) {
  std::error_code ec;
  if (!fs::is_directory(bundle_path, ec))
    throw Error(ErrorCode::UnknownLayout, bundle_path + ": not a directory");
  BundleFiles b;
  for (auto it = fs::recursive_directory_iterator(bundle_path, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (it->is_regular_file()) b.relative.push_back(fs::relative(it->path(), bundle_path).generic_string());
  }
  std::sort(b.relative.begin(), b.relative.end());
  std::regex annot(m.annotation_pattern, std::regex::icase);
  std::regex quant(m.quant_pattern, std::regex::icase);
  std::regex cluster(m.cluster_pattern, std::regex::icase);
  for (const auto& rel : b.relative) {
    fs::path p(rel);
    std::string name = p.filename().string();
    if (name == "job.tsv") {
      b.job = rel;
      continue;
    }
    if (name == "collections.tsv") {
      b.collections = rel;
      continue;
    }
    if (!table_extension(p)) continue;
    if (!b.quant && std::regex_search(name, quant)) b.quant = rel;
    else if (!b.cluster && std::regex_search(name, cluster)) b.cluster = rel;
    else if (!b.annotation && std::regex_search(name, annot)) b.annotation = rel;
  }
  return b;
}

std::map<std::string, std::string> read_job_file(const std::string& path) {
  Table t = read_table(path, '\t');
  std::map<std::string, std::string> out;
  if (t.rows.empty()) return out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    std::string v(text::trim(t.rows.front()[i]));
    if (!v.empty()) out[std::string(text::trim(t.header[i]))] = v;
  }
  return out;
}

Workflow workflow_of(const BundleFiles& files, const std::map<std::string, std::string>& job,
                     const std::string& bundle_path) {
  if (auto it = job.find("workflow"); it != job.end()) {
    std::string w = text::to_lower_ascii(it->second);
    if (w == "fbmn" || w.find("feature") != std::string::npos) return Workflow::FBMN;
    if (w == "mn" || w.find("molecular") != std::string::npos || w.find("network") != std::string::npos)
      return Workflow::MN;
  }
  if (files.quant) return Workflow::FBMN;
  if (files.cluster || files.annotation) return Workflow::MN;
  throw Error(ErrorCode::UnknownLayout, bundle_path + ": no annotation, cluster or quantification table");
}

std::optional<std::size_t> find_column(const Table& t, const GnpsColumnRule* rule) {
  if (!rule) return std::nullopt;
  for (const auto& n : rule->names)
    if (auto c = t.column(n)) return c;
  return std::nullopt;
}

// feature id -> mzML with the largest peak area.
std::map<std::string, std::string> quant_files(const Table& t) {
  std::map<std::string, std::string> out;
  auto id = t.column("row ID");
  if (!id) return out;
  std::vector<std::pair<std::size_t, std::string>> area_cols;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    const std::string& h = t.header[i];
    constexpr std::string_view kSuffix = " Peak area";
    if (h.size() > kSuffix.size() && h.ends_with(kSuffix))
      area_cols.emplace_back(i, h.substr(0, h.size() - kSuffix.size()));
  }
  for (const auto& row : t.rows) {
    double best = 0.0;
    std::string best_file;
    for (const auto& [col, file] : area_cols) {
      double v = std::strtod(row[col].c_str(), nullptr);
      if (v > best || (v == best && v > 0 && file < best_file)) {
        best = v;
        best_file = file;
      }
    }
    if (!best_file.empty()) out[std::string(text::trim(row[*id]))] = best_file;
  }
  return out;
}

// cluster index -> first member file.
std::map<std::string, std::string> cluster_files(const Table& t) {
  std::map<std::string, std::string> out;
  auto idx = t.column("#ClusterIdx");
  auto file = t.column("#Filename");
  if (!idx || !file) return out;
  for (const auto& row : t.rows) {
    std::string k(text::trim(row[*idx]));
    std::string f(text::trim(row[*file]));
    if (f.empty()) continue;
    auto it = out.find(k);
    if (it == out.end() || f < it->second) out[k] = f;
  }
  return out;
}

std::optional<std::string> cell(const std::vector<std::string>& row, std::optional<std::size_t> col) {
  if (!col) return std::nullopt;
  std::string v = text::normalize_label(row[*col]);
  if (v.empty() || v == "N/A" || v == "NA" || v == "nan" || v == "null" || v == "None") return std::nullopt;
  return v;
}

}  // namespace

Workflow detect_workflow(const std::string& bundle_path, const GnpsColumnManifest& manifest) {
  BundleFiles files = scan_bundle(bundle_path, manifest);
  std::map<std::string, std::string> job;
  if (files.job) job = read_job_file((fs::path(bundle_path) / *files.job).string());
  return workflow_of(files, job, bundle_path);
}

GnpsBundle load_gnps_job(const std::string& bundle_path, const GnpsColumnManifest& manifest, RunReport& report) {
  BundleFiles files = scan_bundle(bundle_path, manifest);
  fs::path root(bundle_path);
  std::map<std::string, std::string> jobinfo;
  if (files.job) jobinfo = read_job_file((root / *files.job).string());

  GnpsBundle out;
  out.manifest = &manifest;
  GnpsJob& job = out.job;
  job.bundle_name = root.lexically_normal().filename().string();
  if (job.bundle_name.empty()) job.bundle_name = root.lexically_normal().parent_path().filename().string();
  job.workflow = workflow_of(files, jobinfo, bundle_path);
  job.job_id = jobinfo.contains("job_id") ? jobinfo["job_id"] : job.bundle_name;
  if (jobinfo.contains("software")) job.software = jobinfo["software"];
  if (jobinfo.contains("version")) job.version = jobinfo["version"];
  if (jobinfo.contains("collection_id")) job.default_collection = jobinfo["collection_id"];
  if (!files.annotation) throw Error(ErrorCode::UnknownLayout, bundle_path + ": no annotation table");
  job.annotation_path = *files.annotation;
  if (job.workflow == Workflow::FBMN) {
    if (!files.quant) throw Error(ErrorCode::UnknownLayout, bundle_path + ": FBMN declared without a quantification table");
    job.quant_path = files.quant;
  }
  if (files.collections) {
    Table ct = read_table((root / *files.collections).string(), '\t');
    auto id = ct.column("collection_id");
    auto title = ct.column("title");
    if (id && title)
      for (const auto& row : ct.rows) {
        std::string k(text::trim(row[*id]));
        std::string v = text::normalize_label(row[*title]);
        if (!k.empty() && !v.empty()) job.titles[k] = v;
      }
  }

  Table t = read_table((root / job.annotation_path).string());
  std::map<std::string, std::optional<std::size_t>> col;
  std::set<std::size_t> claimed;
  for (const auto& r : manifest.rules) {
    auto c = find_column(t, &r);
    if (c) claimed.insert(*c);
    if (!r.field.empty()) col[r.field] = c;
  }
  auto need = [&](const char* f) {
    if (!col[f]) {
      const auto* r = manifest.field(f);
      return std::string(r ? r->names.front() : f);
    }
    return std::string();
  };
  if (auto missing = need("accession"); !missing.empty())
    throw Error(ErrorCode::MissingMandatoryColumn, job.annotation_path + ": " + missing);
  if (auto missing = need("collection"); !missing.empty() && !job.default_collection)
    throw Error(ErrorCode::MissingMandatoryColumn, job.annotation_path + ": " + missing);

  // Generic columns: manifest entries without a field, plus unknown headers.
  std::vector<std::size_t> generic;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    bool is_field = false;
    for (const auto& [f, c] : col) is_field |= (c && *c == i);
    if (is_field) continue;
    generic.push_back(i);
    if (!claimed.contains(i))
      report.warn("gnps", job.bundle_name + ":" + t.header[i], "column not in manifest; harmonized as literal");
  }

  std::map<std::string, std::string> fallback_files;
  if (job.workflow == Workflow::FBMN && job.quant_path)
    fallback_files = quant_files(read_table((root / *job.quant_path).string()));
  else if (files.cluster)
    fallback_files = cluster_files(read_table((root / *files.cluster).string()));

  const std::string annotation_file = fs::path(job.annotation_path).filename().string();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    std::string where = job.bundle_name + ":" + annotation_file + ":" + std::to_string(r + 2);
    auto skip = [&](const std::string& why) { report.warn("gnps", where, why + "; row skipped"); };

    AnnotationRecord rec;
    rec.row = r + 1;
    rec.workflow = job.workflow;
    auto accession = cell(row, col["accession"]);
    if (!accession) {
      skip("empty accession");
      continue;
    }
    rec.library_spectrum_key = *accession;
    rec.library.accession = *accession;
    auto coll = cell(row, col["collection"]);
    if (!coll) coll = job.default_collection;
    if (!coll) {
      skip("no collection id");
      continue;
    }
    rec.uai.collection_id = coll;
    auto scan = cell(row, col["scan"]);
    auto feature = cell(row, col["feature_id"]);
    if (!feature) feature = scan;
    auto mzml = cell(row, col["spectrum_file"]);
    if (!mzml) {
      std::string key = (job.workflow == Workflow::FBMN ? feature : scan).value_or("");
      if (auto it = fallback_files.find(key); it != fallback_files.end()) mzml = it->second;
    }
    if (!mzml) {
      skip("no spectrum file for the row");
      continue;
    }
    rec.uai.mzml = mzml;
    rec.uai.annotation_file = annotation_file;
    rec.uai.hit_number = 1;
    if (auto hit = cell(row, col["hit_number"])) {
      auto n = canonical_integer(*hit);
      if (!n) {
        skip("hit number '" + *hit + "' is not an integer");
        continue;
      }
      long long v = std::stoll(*n);
      rec.uai.hit_number = v > 0 && v < (1LL << 32) ? static_cast<std::uint32_t>(v) : 0;
    }
    if (job.workflow == Workflow::FBMN) {
      if (!feature) {
        skip("FBMN row without feature id");
        continue;
      }
      rec.uai.feature_id = feature;
      rec.uai.feature_table = fs::path(*job.quant_path).filename().string();
    } else {
      rec.uai.scan = scan;
    }
    if (auto v = uai_gnps_violations(rec.uai); !v.empty()) {
      skip(v.front());
      continue;
    }

    auto mq = cell(row, col["mq_score"]);
    auto mq_dec = mq ? canonical_decimal(*mq) : std::nullopt;
    if (!mq_dec) {
      skip("missing or non-numeric MQScore");
      continue;
    }
    rec.identification.mq_score = std::stod(*mq_dec);
    rec.identification.mq_lexical = *mq_dec;
    if (rec.identification.mq_score < 0.0 || rec.identification.mq_score > 1.0) {
      skip("MQScore outside [0, 1]");
      continue;
    }
    if (auto sp = cell(row, col["shared_peaks"])) {
      auto d = canonical_decimal(*sp);
      if (!d || !d->ends_with(".0") || d->front() == '-') {
        skip("shared peaks '" + *sp + "' is not a non-negative integer");
        continue;
      }
      rec.identification.shared_peaks = std::stoll(*d);
    }
    if (auto v = cell(row, col["mz_error_ppm"])) rec.identification.mz_error_ppm = canonical_decimal(*v);
    if (auto v = cell(row, col["mass_diff"])) rec.identification.mass_diff = canonical_decimal(*v);

    ClassificationSet::ClassyFire cf{cell(row, col["cf_kingdom"]), cell(row, col["cf_superclass"]),
                                     cell(row, col["cf_class"]), cell(row, col["cf_subclass"])};
    if (cf.kingdom || cf.superclass || cf.klass || cf.subclass) rec.classifications.classyfire = cf;
    ClassificationSet::NpClassifier npc{cell(row, col["npc_pathway"]), cell(row, col["npc_superclass"]),
                                        cell(row, col["npc_class"])};
    if (npc.pathway || npc.superclass || npc.klass) rec.classifications.npclassifier = npc;

    rec.compound_name = cell(row, col["compound_name"]);
    rec.inchikey = cell(row, col["inchikey"]);
    rec.library.compound_name = rec.compound_name;
    rec.library.inchikey = rec.inchikey;
    if (auto v = cell(row, col["precursor_mz"])) rec.library.precursor_mz = canonical_decimal(*v);
    rec.library.adduct = cell(row, col["adduct"]);
    rec.library.instrument = cell(row, col["instrument"]);
    rec.library.ionization = cell(row, col["ionization"]);
    rec.library.quality = cell(row, col["quality"]);

    for (std::size_t i : generic)
      if (auto v = cell(row, i)) rec.raw_columns[t.header[i]] = *v;
    out.records.push_back(std::move(rec));
  }
  if (out.records.empty()) report.warn("gnps", job.bundle_name, "no usable annotation rows");
  return out;
}

namespace {

OntologyTermRef mbs(std::string local) { return OntologyTermRef("MBS", std::move(local)); }

const GnpsColumnRule* rule_for_column(const GnpsColumnManifest& m, const std::string& column) {
  for (const auto& r : m.rules)
    if (std::find(r.names.begin(), r.names.end(), column) != r.names.end()) return &r;
  return nullptr;
}

void classification(NodeSpec& ann, const std::optional<std::string>& label, const char* type_local,
                    const OntologyTermRef& designator, const NamespaceRegistry& registry) {
  if (!label) return;
  NodeSpec v = NodeSpec::value_node({mbs(type_local)}, string_literal(*label));
  v.edge(vocab::kIsDesignatedBy, IriRef{expand(designator, registry)});
  ann.edge(vocab::kHasAttribute, std::move(v));
}

void generic_column(NodeSpec& target, const std::string& column, const std::string& value,
                    const GnpsColumnRule* rule, const GnpsEmitContext& ctx) {
  if (!rule) {
    target.edge(mbs("column_" + text::iri_safe(column)), string_literal(value));
    return;
  }
  OntologyTermRef pred = rule->predicate.value_or(vocab::kHasAttribute);
  switch (rule->strategy) {
    case GnpsStrategy::Ignore: return;
    case GnpsStrategy::Literal:
      target.edge(rule->predicate.value_or(mbs("column_" + text::iri_safe(column))), string_literal(value));
      return;
    case GnpsStrategy::DirectMap: {
      TypedLiteral lit = string_literal(value);
      if (rule->datatype) {
        try {
          lit = make_literal(value, *rule->datatype);
        } catch (const Error&) {
        }
      }
      target.edge(pred, NodeSpec::value_node({*rule->target_class}, std::move(lit)));
      return;
    }
    case GnpsStrategy::OntologyLookup: {
      std::vector<OntologyTermRef> types = {*rule->target_class};
      if (auto exact = resolve_exact(value, ctx.index); exact && *exact != types.front()) types.push_back(*exact);
      target.edge(pred, NodeSpec::named_individual(text::kebab(rule->target_class->local_id), std::move(types), value));
      return;
    }
  }
}

}  // namespace

AnnotationNodes emit_annotation_nodes(const AnnotationRecord& rec, const GnpsJob& job,
                                      const GnpsColumnManifest& manifest, const GnpsEmitContext& ctx) {
  if (!ctx.registry) throw Error(ErrorCode::InvalidSpec, "GNPS emit context has no registry");
  const NamespaceRegistry& reg = *ctx.registry;
  const std::string uai_text = uai_serialize(rec.uai);
  Attributes identity = {{"uai", uai_text}, {"job", job.job_id}};

  NodeSpec ann = NodeSpec::prov_entity("annotation", {vocab::kProvEntity, vocab::kMolecularAnnotation}, identity);

  UaiLocators loc;
  loc.annotation_file = job.bundle_name + "/" + job.annotation_path;
  if (job.quant_path) loc.feature_table = job.bundle_name + "/" + *job.quant_path;
  ann.edge(vocab::kHasIdentifier, uai_node(rec.uai, loc));

  NodeSpec ir = NodeSpec::prov_entity("identification-result", {vocab::kProvEntity, vocab::kIdentificationResult},
                                      identity);
  ir.edge(vocab::kProvHadMember, NodeSpec::value_node({vocab::kMqScore}, decimal_literal(rec.identification.mq_lexical)));
  ir.edge(vocab::kProvHadMember,
          NodeSpec::value_node({vocab::kSharedPeaks}, integer_literal(rec.identification.shared_peaks)));
  if (rec.identification.mz_error_ppm)
    ir.edge(vocab::kProvHadMember,
            NodeSpec::value_node({vocab::kMzErrorPpm}, decimal_literal(*rec.identification.mz_error_ppm)));
  if (rec.identification.mass_diff)
    ir.edge(vocab::kProvHadMember, NodeSpec::value_node({vocab::kMassDiff}, decimal_literal(*rec.identification.mass_diff)));
  ann.edge(vocab::kProvHasPrimarySource, std::move(ir));

  if (const auto& cf = rec.classifications.classyfire) {
    classification(ann, cf->kingdom, "ClassyFireKingdom", mbs("CF_Kingdom"), reg);
    classification(ann, cf->superclass, "ClassyFireSuperclass", mbs("CF_Superclass"), reg);
    classification(ann, cf->klass, "ClassyFireClass", mbs("CF_Class"), reg);
    classification(ann, cf->subclass, "ClassyFireSubclass", mbs("CF_Subclass"), reg);
  }
  if (const auto& npc = rec.classifications.npclassifier) {
    classification(ann, npc->pathway, "NPClassifierPathway", OntologyTermRef("NPC", "Pathway"), reg);
    classification(ann, npc->superclass, "NPClassifierSuperclass", OntologyTermRef("NPC", "Superclass"), reg);
    classification(ann, npc->klass, "NPClassifierClass", OntologyTermRef("NPC", "Class"), reg);
  }

  AnnotationNodes out;
  NodeSpec lib = NodeSpec::named_individual("library-spectrum", {vocab::kLibrarySpectrum}, rec.library.accession);
  const LibrarySpectrumSpec& l = rec.library;
  if (l.inchikey) lib.edge(vocab::kHasAttribute, NodeSpec::value_node({vocab::kInchiKey}, string_literal(*l.inchikey)));
  if (l.compound_name)
    lib.edge(vocab::kHasAttribute, NodeSpec::value_node({mbs("CompoundName")}, string_literal(*l.compound_name)));
  if (l.precursor_mz)
    lib.edge(vocab::kHasAttribute, NodeSpec::value_node({OntologyTermRef("MS", "1000744")}, decimal_literal(*l.precursor_mz)));
  if (l.adduct) lib.edge(vocab::kHasAttribute, NodeSpec::value_node({mbs("Adduct")}, string_literal(*l.adduct)));
  if (l.instrument)
    lib.edge(vocab::kHasAttribute, NodeSpec::named_individual("instrument", {OntologyTermRef("MS", "1000031")}, *l.instrument));
  if (l.ionization)
    lib.edge(vocab::kHasAttribute, NodeSpec::named_individual("ionization", {OntologyTermRef("MS", "1000008")}, *l.ionization));
  if (l.quality)
    lib.edge(vocab::kHasAttribute, NodeSpec::named_individual("library-quality", {mbs("LibraryQuality")}, *l.quality));

  for (const auto& [column, value] : rec.raw_columns) {
    const GnpsColumnRule* rule = rule_for_column(manifest, column);
    generic_column(rule && rule->on_library ? lib : ann, column, value, rule, ctx);
  }

  ann.edge(vocab::kHasAttribute, IriRef{node_iri(lib, EmitOptions{ctx.registry, ctx.global_prefix})});
  out.library = std::move(lib);

  OntologyTermRef wf_class = rec.workflow == Workflow::FBMN ? mbs("FeatureBasedMolecularNetworking")
                                                            : mbs("MolecularNetworking");
  NodeSpec activity = NodeSpec::prov_activity(
      "gnps-job", {vocab::kProvActivity, wf_class},
      {{"job", job.job_id}, {"collection", rec.uai.collection_id.value_or("")}, {"workflow", std::string(to_string(rec.workflow))}});
  std::string software = job.software + (job.version.empty() ? "" : " " + job.version);
  activity.edge(vocab::kProvWasAssociatedWith,
                NodeSpec::named_individual("software", {vocab::kProvSoftwareAgent}, software));
  ann.edge(vocab::kProvWasGeneratedBy, std::move(activity));

  out.annotation = std::move(ann);
  return out;
}

BundleSpecs bundle_specs(const GnpsBundle& bundle, const GnpsEmitContext& ctx) {
  if (!bundle.manifest) throw Error(ErrorCode::InvalidSpec, "bundle without column manifest");
  BundleSpecs out;
  std::set<std::string> collections;
  for (const auto& rec : bundle.records) {
    AnnotationNodes n = emit_annotation_nodes(rec, bundle.job, *bundle.manifest, ctx);
    out.bundle.push_back(std::move(n.annotation));
    if (n.library) out.library.push_back(std::move(*n.library));
    collections.insert(*rec.uai.collection_id);
  }
  for (const auto& c : collections) {
    auto it = bundle.job.titles.find(c);
    if (it != bundle.job.titles.end()) out.bundle.push_back(collection_node(c, it->second));
  }
  return out;
}

}  // namespace mskg
