// Command-line entry point: ingestion, linkage, loading, queries, checks.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "mskg/error.hpp"
#include "mskg/pipeline.hpp"

namespace {

constexpr int kUsageError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metabolomics knowledge-graph pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, endpoint, out_dir;
  bool offline = false, online = false, strict = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* off = app.add_flag("--offline", offline, "no remote term lookups (default)");
  app.add_flag("--online", online, "allow remote term lookups")->excludes(off);
  app.add_flag("--strict", strict, "unmapped metadata columns are errors");
  app.add_option("--endpoint", endpoint, "'embedded' or a SPARQL endpoint URL (env MSKG_ENDPOINT)");
  app.add_option("--out", out_dir, "output directory");

  std::string input;
  auto* ingest_metadata = app.add_subcommand("ingest-metadata", "map a sample metadata table to RDF");
  ingest_metadata->add_option("input", input, "tab-separated metadata export")->required()->check(CLI::ExistingFile);

  std::vector<std::string> bundles;
  auto* ingest_gnps = app.add_subcommand("ingest-gnps", "map GNPS job bundles to RDF");
  ingest_gnps->add_option("bundles", bundles, "bundle directories")->required();

  auto* link = app.add_subcommand("link", "derive UAI linkage across ingested batches");
  auto* load = app.add_subcommand("load", "load the emitted graphs into the endpoint");

  std::string cq;
  std::vector<std::string> params;
  std::string inchikey;
  auto* query = app.add_subcommand("query", "run a competency question");
  query->add_option("cq", cq, "CQ1..CQ4")->required();
  query->add_option("--param", params, "name=value query parameter");
  query->add_option("--inchikey", inchikey, "restrict CQ4 to one InChIKey");

  auto* validate = app.add_subcommand("validate", "check graph invariants");
  auto* report = app.add_subcommand("report", "summarize graphs and term matching accuracy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int status = app.exit(e);
    return status == 0 ? 0 : kUsageError;
  }

  mskg::RunConfig config;
  try {
    if (!config_path.empty()) config = mskg::RunConfig::load(config_path);
    if (const char* env = std::getenv("MSKG_ENDPOINT"); env && *env) config.endpoint = env;
    if (!endpoint.empty()) config.endpoint = endpoint;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (offline) config.offline = true;
    if (online) config.offline = false;
    if (strict) config.strict = true;
  } catch (const mskg::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    mskg::Workspace ws = mskg::Workspace::open(config);
    if (*ingest_metadata) return mskg::cmd_ingest_metadata(ws, input, std::cout);
    if (*ingest_gnps) return mskg::cmd_ingest_gnps(ws, bundles, std::cout);
    if (*link) return mskg::cmd_link(ws, std::cout);
    if (*load) return mskg::cmd_load(ws, std::cout);
    if (*query) {
      std::map<std::string, std::string> values;
      for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) {
          std::cerr << "--param expects name=value, got '" << p << "'\n";
          return kUsageError;
        }
        values[p.substr(0, eq)] = p.substr(eq + 1);
      }
      if (!inchikey.empty()) values["inchikey"] = inchikey;
      return mskg::cmd_query(ws, cq, values, std::cout);
    }
    if (*validate) return mskg::cmd_validate(ws, std::cout);
    if (*report) return mskg::cmd_report(ws, std::cout);
  } catch (const mskg::Error& e) {
    std::cerr << command << ": " << e.what() << "\n";
    try {
      mskg::write_error_report(config.output_dir, command, std::string(mskg::to_string(e.code())), e.what());
    } catch (const mskg::Error&) {
    }
    return e.code() == mskg::ErrorCode::ConfigError ? kUsageError : 1;
  }
  return 0;
}
