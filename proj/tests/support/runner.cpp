#include "runner.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>

#include "mskg/error.hpp"

namespace mskg::testing {

Workspace workspace_for(const fs::path& out_dir) {
  RunConfig c;
  c.output_dir = out_dir.string();
  return Workspace::open(c);
}

Workspace build_cq_graph(const CqFixture& f, const fs::path& dir) {
  f.write(dir / "input");
  Workspace ws = workspace_for(dir / "out");
  std::ostringstream log;
  if (cmd_ingest_metadata(ws, (dir / "input" / "metadata.tsv").string(), log) != 0 ||
      cmd_ingest_gnps(ws, f.bundle_paths(dir / "input"), log) != 0 || cmd_link(ws, log) != 0)
    throw Error(ErrorCode::IOFailure, "fixture pipeline failed:\n" + log.str());
  return ws;
}

std::string cli_path() { return MSKG_CLI_PATH; }

CliResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = "'" + cli_path() + "'";
  for (const auto& a : args) {
    std::string q;
    for (char c : a) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    cmd += " '" + q + "'";
  }
  cmd += " 2>&1";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.output.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace mskg::testing
