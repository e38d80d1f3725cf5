#include "mskg/cq.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <json.hpp>

#include "mskg/error.hpp"
#include "mskg/text.hpp"
#include "mskg/uri.hpp"

namespace mskg {

const std::vector<CqSpec>& cq_catalog() {
  static const std::vector<CqSpec> kCatalog = {
      {"CQ1", "Annotations and samples per collection, with an example source taxon", {},
       {"title", "nAnn", "nSamp", "taxonExample"}, {}},
      {"CQ2", "Average MQScore and shared peaks of library matches per collection", {},
       {"title", "avgMQ", "avgSharedPeaks", "n"}, {}},
      {"CQ3", "Co-occurrence of ClassyFire classes and NPClassifier pathways", {},
       {"cfClassLabel", "npcPathwayLabel", "n"}, {}},
      {"CQ4", "Compounds seen in more than three studies, by sample type", {},
       {"sampleType", "ik", "nSamples", "nStudies"}, {{"inchikey", "ik"}}},
  };
  return kCatalog;
}

CqSpec load_cq(const std::string& id, const std::string& query_dir) {
  std::string key = text::to_lower_ascii(text::trim(id));
  if (!key.starts_with("cq")) key = "cq" + key;
  for (const auto& spec : cq_catalog()) {
    if (text::to_lower_ascii(spec.id) != key) continue;
    CqSpec out = spec;
    std::string path = (std::filesystem::path(query_dir) / (key + ".rq")).string();
    if (!std::filesystem::exists(path)) throw Error(ErrorCode::IOFailure, "missing query template " + path);
    out.template_text = text::read_file(path);
    return out;
  }
  throw Error(ErrorCode::ConfigError, "unknown competency question '" + id + "' (expected CQ1..CQ4)");
}

std::string prefix_block(const NamespaceRegistry& registry) {
  std::string out;
  for (const auto& [p, ns] : registry.entries()) out += "PREFIX " + p + ": <" + ns + ">\n";
  return out;
}

std::string instantiate(const CqSpec& spec, const std::map<std::string, std::string>& params) {
  std::string q = spec.template_text;
  for (const auto& [name, value] : params) {
    auto it = spec.parameters.find(text::to_lower_ascii(name));
    if (it == spec.parameters.end()) throw Error(ErrorCode::InvalidSpec, spec.id + " has no parameter '" + name + "'");
    if (!q.empty() && q.back() != '\n') q += '\n';
    q += "VALUES ?" + it->second + " { " + nt_literal(text::trim(value)) + " }\n";
  }
  return q;
}

ResultTable run_cq(const CqSpec& spec, Endpoint& endpoint, const std::map<std::string, std::string>& params) {
  ResultTable t = endpoint.select(instantiate(spec, params));
  if (t.vars != spec.expected_shape) {
    std::string got;
    for (const auto& v : t.vars) got += " ?" + v;
    throw Error(ErrorCode::QueryFailure, spec.id + " returned unexpected columns:" + got);
  }
  return t;
}

std::string CqRunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["cq"] = cq;
  j["endpoint"] = endpoint;
  j["params"] = params;
  j["query_sha256"] = query_sha256;
  j["graphs"] = nlohmann::ordered_json::array();
  for (const auto& g : graphs) j["graphs"].push_back({{"graph", g.graph}, {"triples", g.triples}, {"sha256", g.sha256}});
  j["rows"] = rows;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

std::string run_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    long long v = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace mskg
