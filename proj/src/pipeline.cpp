#include "mskg/pipeline.hpp"

#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <set>

#include "mskg/cq.hpp"
#include "mskg/emitter.hpp"
#include "mskg/endpoint.hpp"
#include "mskg/error.hpp"
#include "mskg/gnps.hpp"
#include "mskg/linkage.hpp"
#include "mskg/mapping.hpp"
#include "mskg/metadata.hpp"
#include "mskg/ols_client.hpp"
#include "mskg/serialize.hpp"
#include "mskg/text.hpp"
#include "mskg/validate.hpp"

namespace fs = std::filesystem;

namespace mskg {

namespace {

constexpr std::string_view kLinkageStem = "linkage";
constexpr std::string_view kLibraryStem = "library";

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

std::string reports_dir(const RunConfig& c) { return (fs::path(c.output_dir) / "reports").string(); }

void write_report(const RunConfig& c, const std::string& name, std::string_view content) {
  text::write_file((fs::path(reports_dir(c)) / name).string(), content);
}

EmitOptions emit_options(const Workspace& ws) { return EmitOptions{&ws.registry, ws.config.global_prefix}; }

}  // namespace

RunConfig RunConfig::from_json(std::string_view json, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
  RunConfig c;
  static const std::set<std::string> kPaths = {"registry", "metadata_manifest", "gnps_columns", "term_index",
                                               "curation", "cache_dir", "output_dir", "query_dir"};
  static const std::set<std::string> kStrings = {"endpoint", "ols_endpoint", "global_prefix"};
  static const std::set<std::string> kFlags = {"strict", "offline"};
  for (const auto& [key, value] : j.items()) {
    if (kPaths.contains(key) || kStrings.contains(key)) {
      if (!value.is_string()) throw Error(ErrorCode::ConfigError, "'" + key + "' must be a string");
      std::string v = value.get<std::string>();
      if (kPaths.contains(key)) v = resolve(base_dir, v);
      if (key == "registry") c.registry_path = v;
      else if (key == "metadata_manifest") c.metadata_manifest = v;
      else if (key == "gnps_columns") c.gnps_columns = v;
      else if (key == "term_index") c.term_index = v;
      else if (key == "curation") c.curation = v;
      else if (key == "cache_dir") c.cache_dir = v;
      else if (key == "output_dir") c.output_dir = v;
      else if (key == "query_dir") c.query_dir = v;
      else if (key == "endpoint") c.endpoint = v;
      else if (key == "ols_endpoint") c.ols_endpoint = v;
      else c.global_prefix = v;
    } else if (kFlags.contains(key)) {
      if (!value.is_boolean()) throw Error(ErrorCode::ConfigError, "'" + key + "' must be true or false");
      (key == "strict" ? c.strict : c.offline) = value.get<bool>();
    } else {
      throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::ConfigError, "config file not found: " + path);
  return from_json(text::read_file(path), fs::path(path).parent_path().string());
}

void RunConfig::validate() const {
  auto need = [](const std::string& what, const std::string& p) {
    if (!fs::exists(p)) throw Error(ErrorCode::ConfigError, what + " not found: " + p);
  };
  need("registry", registry_path);
  need("metadata manifest", metadata_manifest);
  need("GNPS column manifest", gnps_columns);
  need("term index", term_index);
  need("query directory", query_dir);
  if (curation) need("curation file", *curation);
  if (output_dir.empty()) throw Error(ErrorCode::ConfigError, "output_dir is empty");
  if (global_prefix.empty() || (global_prefix.back() != '/' && global_prefix.back() != '#'))
    throw Error(ErrorCode::ConfigError, "global_prefix must end with '/' or '#'");
}

Workspace Workspace::open(const RunConfig& config) {
  config.validate();
  Workspace ws{config, NamespaceRegistry::load(config.registry_path), {}, std::nullopt};
  ws.registry.with_builtins();
  ws.index = TermIndex::load(config.term_index, ws.registry);
  if (config.curation) ws.curation = CurationFile::load(*config.curation, ws.registry);
  return ws;
}

int cmd_ingest_metadata(const Workspace& ws, const std::string& input, std::ostream& out) {
  const RunConfig& c = ws.config;
  MappingManifest manifest = MappingManifest::load(c.metadata_manifest, ws.registry);
  MetadataTable table = load_metadata(input, manifest);
  RunReport report;
  for (const auto& w : table.warnings) report.warn("metadata", input, w);

  auto missing = missingness_report(table.records);
  MappingContext ctx{&manifest, &ws.registry, &ws.index, ws.curation ? &*ws.curation : nullptr, c.strict,
                     c.global_prefix};
  MetadataGraph graph = map_metadata(table.records, ctx, report);

  std::string stem = "metadata-" + text::kebab(fs::path(input).stem().string());
  std::string graph_iri = batch_graph_iri("metadata/" + sha256_hex(text::read_file(input)), c.global_prefix);
  DedupRegistry dedup;
  TripleDoc doc = emit(graph.specs, dedup, graph_iri, emit_options(ws));
  store_doc(c.output_dir, stem, doc, ws.registry);

  write_report(c, stem + ".missingness.tsv", missingness_tsv(missing));
  write_report(c, stem + ".organisms.tsv", graph.organisms.to_tsv());
  write_report(c, stem + ".mapping.json", graph.dictionary.to_json());
  write_report(c, stem + ".stats.tsv", stats_tsv(doc));
  write_report(c, stem + ".log.tsv", report.to_tsv());

  out << "ingest-metadata " << input << ": " << table.records.size() << " records, " << doc.size()
      << " triples, " << graph.organisms.uris.size() << " organism individuals (dedup ratio "
      << graph.organisms.dedup_ratio << "), " << report.count("warning") << " warnings\n";
  out << "  graph " << graph_iri << " -> " << (fs::path(c.output_dir) / "graphs" / (stem + ".nt")).string() << "\n";
  return report.count("error") == 0 ? 0 : 1;
}

int cmd_ingest_gnps(const Workspace& ws, const std::vector<std::string>& bundles, std::ostream& out) {
  const RunConfig& c = ws.config;
  GnpsColumnManifest manifest = GnpsColumnManifest::load(c.gnps_columns, ws.registry);
  GnpsEmitContext ctx{&ws.registry, &ws.index, c.global_prefix};
  DedupRegistry dedup;
  std::string library_iri = batch_graph_iri("library", c.global_prefix);
  TripleDoc library(library_iri);
  for (const auto& e : list_docs(c.output_dir))
    if (e.stem == kLibraryStem) library.append(load_doc(c.output_dir, e));

  std::string summary = "bundle\tstatus\tworkflow\tjob\trecords\ttriples\tmessage\n";
  std::size_t failed = 0, library_added = 0;
  RunReport log;
  for (const auto& path : bundles) {
    auto line = [&](const std::string& status, const std::string& wf, const std::string& job, std::size_t records,
                    std::size_t triples, const std::string& msg) {
      summary += path + '\t' + status + '\t' + wf + '\t' + job + '\t' + std::to_string(records) + '\t' +
                 std::to_string(triples) + '\t' + msg + '\n';
      out << "  " << path << ": " << status << (msg.empty() ? "" : " (" + msg + ")") << "\n";
    };
    try {
      bool has_files = false;
      if (fs::is_directory(path))
        for (const auto& e : fs::recursive_directory_iterator(path)) has_files |= e.is_regular_file();
      if (!has_files) {
        line("skipped", "", "", 0, 0, "empty bundle");
        continue;
      }
      RunReport report;
      GnpsBundle bundle = load_gnps_job(path, manifest, report);
      log.append(report);
      std::string wf = bundle.job.workflow == Workflow::FBMN ? "FBMN" : "MN";
      if (bundle.records.empty()) {
        line("skipped", wf, bundle.job.job_id, 0, 0, "no usable annotation rows");
        continue;
      }
      BundleSpecs specs = bundle_specs(bundle, ctx);
      std::string stem = "gnps-" + text::kebab(bundle.job.job_id);
      TripleDoc doc = emit(specs.bundle, dedup, batch_graph_iri("gnps/" + bundle.job.job_id, c.global_prefix),
                           emit_options(ws));
      TripleDoc lib = emit(specs.library, dedup, library_iri, emit_options(ws));
      library_added += lib.size();
      library.append(lib);
      store_doc(c.output_dir, stem, doc, ws.registry);
      write_report(c, stem + ".stats.tsv", stats_tsv(doc));
      line("ok", wf, bundle.job.job_id, bundle.records.size(), doc.size(),
           report.entries.empty() ? "" : std::to_string(report.entries.size()) + " warnings");
    } catch (const Error& e) {
      ++failed;
      log.error("gnps", path, e.what());
      line("error", "", "", 0, 0, e.what());
    }
  }
  library.finalize();
  if (!library.empty()) store_doc(c.output_dir, std::string(kLibraryStem), library, ws.registry);
  write_report(c, "gnps_summary.tsv", summary);
  write_report(c, "gnps.log.tsv", log.to_tsv());
  out << "ingest-gnps: " << bundles.size() << " bundles, " << failed << " failed, library document "
      << library.size() << " triples\n";
  return failed == 0 ? 0 : 1;
}

int cmd_link(const Workspace& ws, std::ostream& out) {
  const RunConfig& c = ws.config;
  std::vector<TripleDoc> docs;
  std::set<Triple> previous;
  for (const auto& e : list_docs(c.output_dir)) {
    if (e.stem == kLinkageStem) {
      TripleDoc old = load_doc(c.output_dir, e);
      previous.insert(old.triples().begin(), old.triples().end());
    } else {
      docs.push_back(load_doc(c.output_dir, e));
    }
  }
  TripleDoc links = link_batches(docs, ws.registry, LinkRule::defaults(), c.global_prefix);
  store_doc(c.output_dir, std::string(kLinkageStem), links, ws.registry);

  std::map<std::string, std::size_t> by_predicate;
  std::size_t added = 0;
  for (const auto& t : links.triples()) {
    ++by_predicate[t.predicate];
    added += !previous.contains(t);
  }
  std::string tsv = "predicate\tlinks\n";
  for (const auto& [p, n] : by_predicate) tsv += p + '\t' + std::to_string(n) + '\n';
  write_report(c, "linkage.tsv", tsv);
  out << "link: " << docs.size() << " documents, " << links.size() << " links (" << added << " new)\n";
  return 0;
}

namespace {

std::vector<GraphVersion> graph_versions(const RunConfig& c) {
  std::vector<GraphVersion> out;
  for (const auto& e : list_docs(c.output_dir)) {
    std::string path = (fs::path(c.output_dir) / "graphs" / (e.stem + ".nt")).string();
    out.push_back({e.graph, e.triples, sha256_hex(text::read_file(path))});
  }
  return out;
}

}  // namespace

int cmd_load(const Workspace& ws, std::ostream& out) {
  const RunConfig& c = ws.config;
  auto endpoint = make_endpoint(c.endpoint);
  LoadReport report = load_endpoint(load_docs(c.output_dir), *endpoint);
  write_report(c, "load.tsv", report.to_tsv());
  out << "load: " << report.entries.size() << " graphs into " << endpoint->describe() << ", counts verified\n";
  return 0;
}

int cmd_query(const Workspace& ws, const std::string& cq_id, const std::map<std::string, std::string>& params,
              std::ostream& out) {
  const RunConfig& c = ws.config;
  CqSpec spec = load_cq(cq_id, c.query_dir);
  auto endpoint = make_endpoint(c.endpoint);
  std::vector<TripleDoc> docs = load_docs(c.output_dir);
  std::vector<TripleDoc> pending;
  for (auto& d : docs)
    if (endpoint->graph_size(d.graph_name()) != d.size()) pending.push_back(std::move(d));
  if (!pending.empty()) load_endpoint(pending, *endpoint);

  ResultTable table = run_cq(spec, *endpoint, params);
  CqRunManifest manifest{spec.id, endpoint->describe(), params, sha256_hex(instantiate(spec, params)),
                         graph_versions(c), table.rows.size(), run_timestamp()};
  std::string stem = text::to_lower_ascii(spec.id);
  fs::path dir = fs::path(c.output_dir) / "results";
  text::write_file((dir / (stem + ".tsv")).string(), table.to_tsv());
  text::write_file((dir / (stem + ".manifest.json")).string(), manifest.to_json());
  out << spec.id << ": " << table.rows.size() << " rows -> " << (dir / (stem + ".tsv")).string() << "\n";
  return 0;
}

int cmd_validate(const Workspace& ws, std::ostream& out) {
  const RunConfig& c = ws.config;
  auto violations = validate_docs(load_docs(c.output_dir), ws.registry);
  write_report(c, "violations.tsv", violations_tsv(violations));
  std::map<std::string, std::size_t> by_check;
  for (const auto& v : violations) ++by_check[v.check];
  out << "validate: " << violations.size() << " violations\n";
  for (const auto& [check, n] : by_check) out << "  " << check << ": " << n << "\n";
  return violations.empty() ? 0 : 1;
}

int cmd_report(const Workspace& ws, std::ostream& out) {
  const RunConfig& c = ws.config;
  std::string tsv = "graph\ttriples\tsha256\n";
  std::size_t total = 0;
  for (const auto& g : graph_versions(c)) {
    tsv += g.graph + '\t' + std::to_string(g.triples) + '\t' + g.sha256 + '\n';
    total += g.triples;
  }
  write_report(c, "graphs.tsv", tsv);
  out << "report: " << total << " triples in " << list_docs(c.output_dir).size() << " graphs\n";
  if (ws.curation) {
    AccuracyReport acc = evaluate_matching(*ws.curation, ws.index, {1, 3, 5, 10});
    write_report(c, "term_accuracy.tsv", acc.to_tsv());
    for (const auto& a : acc.by_k)
      out << "  accuracy@" << a.k << ": macro " << a.macro << ", micro " << a.micro << "\n";
    if (!c.offline || c.cache_dir) {
      // OLS ranking, from the cache when offline; local index when neither answers.
      OlsConfig ols{c.ols_endpoint, !c.offline, c.cache_dir.value_or(""), 20};
      std::size_t fell_back = 0;
      Matcher remote = [&](std::string_view raw, int k) {
        auto r = fetch_remote_candidates(raw, ws.index.filter(), k, ols, ws.registry, &ws.index);
        fell_back += r.fell_back;
        return r.candidates;
      };
      AccuracyReport remote_acc = evaluate_matching(*ws.curation, remote, {1, 3, 5, 10});
      write_report(c, "term_accuracy_ols.tsv", remote_acc.to_tsv());
      out << "  OLS ranking: " << fell_back << " lookups answered by the local index\n";
    }
  }
  return 0;
}

void write_error_report(const std::string& output_dir, const std::string& command, const std::string& code,
                        const std::string& message) {
  std::string msg = message;
  for (auto& ch : msg)
    if (ch == '\t' || ch == '\n') ch = ' ';
  text::write_file((fs::path(output_dir) / "reports" / (command + ".error.tsv")).string(),
                   "command\tcode\tmessage\n" + command + '\t' + code + '\t' + msg + '\n');
}

}  // namespace mskg
