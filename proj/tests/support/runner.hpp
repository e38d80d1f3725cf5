#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mskg/pipeline.hpp"

namespace mskg::testing {

// Default data files, offline, artifacts under `out_dir`.
Workspace workspace_for(const fs::path& out_dir);

// Writes the fixture under <dir>/input, then ingest-metadata, ingest-gnps
// and link into <dir>/out. Returns the workspace used.
Workspace build_cq_graph(const CqFixture& f, const fs::path& dir);

// Path of the built command-line tool.
std::string cli_path();

struct CliResult {
  int status = -1;
  std::string output;  // stdout and stderr
};
// Runs the CLI with the given arguments (shell-quoted here).
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace mskg::testing
