#include <gtest/gtest.h>

#include <cstdlib>

#include "fixtures.hpp"
#include "mskg/serialize.hpp"
#include "mskg/text.hpp"
#include "runner.hpp"

using namespace mskg;
using namespace mskg::testing;

namespace {

std::string samples() { return (fixture_dir() / "metadata/samples.tsv").string(); }
std::string bundle(const char* name) { return (fixture_dir() / "gnps" / name).string(); }

std::map<std::string, std::string> graph_files(const fs::path& out) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(out / "graphs"))
    files[e.path().filename().string()] = text::read_file(e.path().string());
  return files;
}

}  // namespace

TEST(Cli, IngestMetadataWritesArtifacts) {
  fs::path out = scratch_dir("cli_metadata");
  auto r = run_cli({"--out", out.string(), "ingest-metadata", samples()});
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "graphs/metadata-samples.nt"));
  EXPECT_TRUE(fs::exists(out / "reports/metadata-samples.missingness.tsv"));
  EXPECT_TRUE(fs::exists(out / "reports/metadata-samples.organisms.tsv"));
  EXPECT_TRUE(fs::exists(out / "reports/metadata-samples.mapping.json"));
  auto first = graph_files(out);
  ASSERT_EQ(run_cli({"--out", out.string(), "ingest-metadata", samples()}).status, 0);
  EXPECT_EQ(graph_files(out), first);
}

TEST(Cli, StrictModeFailsOnUnmappedColumn) {
  fs::path out = scratch_dir("cli_strict");
  std::string table = (fixture_dir() / "metadata/unmapped_column.tsv").string();
  auto r = run_cli({"--strict", "--out", out.string(), "ingest-metadata", table});
  EXPECT_NE(r.status, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "reports/ingest-metadata.error.tsv"));
  std::string report = text::read_file((out / "reports/ingest-metadata.error.tsv").string());
  EXPECT_NE(report.find("UnmappedColumn"), std::string::npos);
  EXPECT_EQ(run_cli({"--out", out.string(), "ingest-metadata", table}).status, 0);
}

TEST(Cli, IngestGnpsBundles) {
  fs::path out = scratch_dir("cli_gnps");
  fs::path empty = scratch_dir("cli_gnps_empty_bundle");
  auto r = run_cli({"--out", out.string(), "ingest-gnps", bundle("mn_job"), bundle("fbmn_job"), empty.string()});
  ASSERT_EQ(r.status, 0) << r.output;
  auto docs = list_docs(out.string());
  EXPECT_EQ(docs.size(), 3u);
  std::string summary = text::read_file((out / "reports/gnps_summary.tsv").string());
  EXPECT_NE(summary.find("skipped"), std::string::npos);
  auto first = graph_files(out);
  ASSERT_EQ(run_cli({"--out", out.string(), "ingest-gnps", bundle("mn_job"), bundle("fbmn_job")}).status, 0);
  EXPECT_EQ(graph_files(out), first);
}

TEST(Cli, BrokenBundleDoesNotStopTheRun) {
  fs::path out = scratch_dir("cli_gnps_broken");
  fs::path broken = scratch_dir("cli_broken_bundle");
  text::write_file((broken / "notes.txt").string(), "nothing useful\n");
  auto r = run_cli({"--out", out.string(), "ingest-gnps", broken.string(), bundle("mn_job")});
  EXPECT_EQ(r.status, 1) << r.output;
  EXPECT_EQ(list_docs(out.string()).size(), 2u);
  EXPECT_NE(text::read_file((out / "reports/gnps_summary.tsv").string()).find("UnknownLayout"), std::string::npos);
}

TEST(Cli, LinkWithoutDocsGivesEmptyLinkage) {
  fs::path out = scratch_dir("cli_link_empty");
  auto r = run_cli({"--out", out.string(), "link"});
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(text::read_file((out / "graphs/linkage.nt").string()), "");
}

TEST(Cli, FullRunQueryAndValidate) {
  fs::path out = scratch_dir("cli_full");
  ASSERT_EQ(run_cli({"--out", out.string(), "ingest-metadata", samples()}).status, 0);
  ASSERT_EQ(run_cli({"--out", out.string(), "ingest-gnps", bundle("mn_job"), bundle("fbmn_job")}).status, 0);
  auto link = run_cli({"--out", out.string(), "link"});
  ASSERT_EQ(link.status, 0) << link.output;
  EXPECT_NE(link.output.find("7 links"), std::string::npos) << link.output;
  auto v = run_cli({"--out", out.string(), "validate"});
  EXPECT_EQ(v.status, 0) << v.output;
  ASSERT_EQ(run_cli({"--out", out.string(), "load"}).status, 0);
  for (const char* cq : {"CQ1", "CQ2", "CQ3", "CQ4"}) {
    auto q = run_cli({"--out", out.string(), "--offline", "query", cq});
    EXPECT_EQ(q.status, 0) << q.output;
  }
  std::string cq1 = text::read_file((out / "results/cq1.tsv").string());
  EXPECT_NE(cq1.find("\"Human plasma cohort\""), std::string::npos);
  auto rep = run_cli({"--out", out.string(), "report"});
  EXPECT_EQ(rep.status, 0) << rep.output;
  EXPECT_TRUE(fs::exists(out / "reports/graphs.tsv"));
}

TEST(Cli, UsageErrors) {
  fs::path out = scratch_dir("cli_usage");
  EXPECT_EQ(run_cli({"--out", out.string(), "query", "CQ7"}).status, 2);
  EXPECT_EQ(run_cli({"--out", out.string(), "frobnicate"}).status, 2);
  EXPECT_EQ(run_cli({"--out", out.string(), "--endpoint", "ftp://x", "query", "CQ1"}).status, 2);
  EXPECT_EQ(run_cli({"--offline", "--online", "link"}).status, 2);
  EXPECT_EQ(run_cli({"--out", out.string(), "query", "CQ1", "--param", "novalue"}).status, 2);
}

TEST(Cli, EndpointFromEnvironment) {
  fs::path out = scratch_dir("cli_env");
  ::setenv("MSKG_ENDPOINT", "ftp://from-env", 1);
  auto r = run_cli({"--out", out.string(), "query", "CQ1"});
  auto overridden = run_cli({"--out", out.string(), "--endpoint", "embedded", "query", "CQ1"});
  ::unsetenv("MSKG_ENDPOINT");
  EXPECT_EQ(r.status, 2) << r.output;
  EXPECT_EQ(overridden.status, 0) << overridden.output;
}

TEST(Cli, ConfigFile) {
  fs::path dir = scratch_dir("cli_config");
  text::write_file((dir / "run.json").string(), "{\"output_dir\": \"artifacts\", \"strict\": true}\n");
  auto r = run_cli({"--config", (dir / "run.json").string(), "ingest-metadata",
                    (fixture_dir() / "metadata/unmapped_column.tsv").string()});
  EXPECT_NE(r.status, 0);
  EXPECT_TRUE(fs::exists(dir / "artifacts/reports/ingest-metadata.error.tsv"));
  text::write_file((dir / "bad.json").string(), "{\"colour\": 1}\n");
  EXPECT_EQ(run_cli({"--config", (dir / "bad.json").string(), "link"}).status, 2);
}
