#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mskg/curation.hpp"
#include "mskg/namespaces.hpp"
#include "mskg/term_index.hpp"
#include "mskg/uri.hpp"

namespace mskg {

// Command configuration. Relative paths in a config file resolve against
// the file's directory.
struct RunConfig {
  std::string registry_path = std::string(MSKG_DATA_DIR) + "/namespaces.tsv";
  std::string metadata_manifest = std::string(MSKG_DATA_DIR) + "/metadata_manifest.json";
  std::string gnps_columns = std::string(MSKG_DATA_DIR) + "/gnps_columns.json";
  std::string term_index = std::string(MSKG_DATA_DIR) + "/term_index.tsv";
  std::optional<std::string> curation;
  std::optional<std::string> cache_dir;
  std::string output_dir = "out";
  std::string query_dir = MSKG_QUERY_DIR;
  std::string endpoint = "embedded";
  std::string ols_endpoint = "https://www.ebi.ac.uk/ols4";
  std::string global_prefix = std::string(kDefaultGlobalPrefix);
  bool strict = false;
  bool offline = true;  // no remote term lookups; cached replies still apply

  // Throws ConfigError (unknown keys, wrong types).
  static RunConfig from_json(std::string_view json, const std::string& base_dir = ".");
  static RunConfig load(const std::string& path);

  // Referenced input files must exist. Throws ConfigError.
  void validate() const;
};

// Everything a command needs, loaded once from a RunConfig.
struct Workspace {
  RunConfig config;
  NamespaceRegistry registry;
  TermIndex index;
  std::optional<CurationFile> curation;

  static Workspace open(const RunConfig& config);
};

// Commands return the process exit status; summaries go to `out`,
// artifacts under config.output_dir. Library errors propagate as Error.
int cmd_ingest_metadata(const Workspace& ws, const std::string& input, std::ostream& out);
int cmd_ingest_gnps(const Workspace& ws, const std::vector<std::string>& bundles, std::ostream& out);
int cmd_link(const Workspace& ws, std::ostream& out);
int cmd_load(const Workspace& ws, std::ostream& out);
int cmd_query(const Workspace& ws, const std::string& cq_id, const std::map<std::string, std::string>& params,
              std::ostream& out);
int cmd_validate(const Workspace& ws, std::ostream& out);
int cmd_report(const Workspace& ws, std::ostream& out);

// Machine-readable failure record written by the CLI: <out>/reports/<command>.error.tsv.
void write_error_report(const std::string& output_dir, const std::string& command, const std::string& code,
                        const std::string& message);

}  // namespace mskg
