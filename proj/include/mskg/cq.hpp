#pragma once

#include <map>
#include <string>
#include <vector>

#include "mskg/endpoint.hpp"
#include "mskg/namespaces.hpp"
#include "mskg/results.hpp"

namespace mskg {

// A competency question: a SELECT template shipped as <id>.rq.
struct CqSpec {
  std::string id;  // "CQ1".."CQ4"
  std::string description;
  std::string template_text;
  std::vector<std::string> expected_shape;
  // Parameter name -> variable it restricts through a trailing VALUES block.
  std::map<std::string, std::string> parameters;
};

// The four built-in questions, without template text.
const std::vector<CqSpec>& cq_catalog();

// Accepts "CQ1", "cq1" or "1". Reads <query_dir>/cqN.rq. Throws ConfigError
// for unknown ids, IOFailure for a missing file.
CqSpec load_cq(const std::string& id, const std::string& query_dir = MSKG_QUERY_DIR);

// "PREFIX p: <ns>" lines for every registry entry, in registry order.
std::string prefix_block(const NamespaceRegistry& registry);

// Template plus one VALUES block per supplied parameter. Throws InvalidSpec
// for parameters the question does not declare.
std::string instantiate(const CqSpec& spec, const std::map<std::string, std::string>& params);

// Runs the instantiated query and checks the result columns against the
// expected shape (QueryFailure otherwise).
ResultTable run_cq(const CqSpec& spec, Endpoint& endpoint, const std::map<std::string, std::string>& params = {});

struct GraphVersion {
  std::string graph;
  std::size_t triples = 0;
  std::string sha256;  // of the N-Triples file
};

struct CqRunManifest {
  std::string cq;
  std::string endpoint;
  std::map<std::string, std::string> params;
  std::string query_sha256;
  std::vector<GraphVersion> graphs;
  std::size_t rows = 0;
  std::string timestamp;

  std::string to_json() const;
};

// UTC ISO-8601; SOURCE_DATE_EPOCH wins over the clock.
std::string run_timestamp();

}  // namespace mskg
