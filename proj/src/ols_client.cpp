#include "mskg/ols_client.hpp"

#include <httplib.h>

#include <filesystem>
#include <json.hpp>
#include <mutex>

#include "mskg/error.hpp"
#include "mskg/text.hpp"
#include "mskg/uri.hpp"

namespace mskg {

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::string joined_lower(const std::set<std::string>& ontologies) {
  std::set<std::string> lower;
  for (const auto& o : ontologies) lower.insert(text::to_lower_ascii(o));
  std::string out;
  for (const auto& o : lower) {
    if (!out.empty()) out += ',';
    out += o;
  }
  return out;
}

// Splits "https://host:port/base" into ("https://host:port", "/base").
}  // namespace

std::string ols_cache_key(std::string_view raw, const std::set<std::string>& ontologies, int k) {
  return sha256_hex(text::normalize_label(raw) + "\x1f" + joined_lower(ontologies) + "\x1f" +
                    std::to_string(k));
}

std::vector<MatchCandidate> parse_ols_response(std::string_view body, std::string_view raw, int k,
                                               const NamespaceRegistry& registry) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, e.what());
  }
  if (!doc.contains("response") || !doc["response"].contains("docs") ||
      !doc["response"]["docs"].is_array())
    throw Error(ErrorCode::MalformedResponse, "missing response.docs");
  std::vector<MatchCandidate> out;
  for (const auto& d : doc["response"]["docs"]) {
    if (static_cast<int>(out.size()) >= k) break;
    if (!d.contains("iri") || !d["iri"].is_string() || !d.contains("label"))
      throw Error(ErrorCode::MalformedResponse, "doc without iri/label");
    std::string iri = d["iri"].get<std::string>();
    auto term = to_term(iri, registry);
    if (!term && d.contains("obo_id") && d["obo_id"].is_string())
      term = to_term(d["obo_id"].get<std::string>(), registry);
    if (!term) continue;
    std::string label = d["label"].is_string() ? d["label"].get<std::string>() : std::string();
    std::vector<std::string> synonyms;
    if (d.contains("synonym") && d["synonym"].is_array())
      for (const auto& s : d["synonym"])
        if (s.is_string()) synonyms.push_back(s.get<std::string>());
    term->label = text::normalize_label(label);
    if (d.contains("ontology_name") && d["ontology_name"].is_string())
      term->source_ontology = d["ontology_name"].get<std::string>();
    LexicalScore s = score_label(raw, label, synonyms);
    MatchCandidate c;
    c.term = *term;
    c.iri = expand(*term, registry);
    c.score = s.score;
    c.match_kind = s.kind;
    c.rank = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(c));
  }
  return out;
}

RemoteCandidates fetch_remote_candidates(std::string_view raw, const std::set<std::string>& ontologies,
                                         int k, const OlsConfig& config,
                                         const NamespaceRegistry& registry,
                                         const TermIndex* fallback) {
  if (text::trim(raw).empty()) throw Error(ErrorCode::EmptyQuery, "blank query");
  RemoteCandidates result;
  std::string cache_file;
  if (!config.cache_dir.empty()) {
    cache_file = (std::filesystem::path(config.cache_dir) / (ols_cache_key(raw, ontologies, k) + ".json"))
                     .string();
    std::lock_guard lock(cache_mutex());
    if (std::filesystem::exists(cache_file)) {
      result.candidates = parse_ols_response(text::read_file(cache_file), raw, k, registry);
      result.from_cache = true;
      return result;
    }
  }

  auto fall_back = [&](const std::string& why) {
    if (!fallback) throw Error(ErrorCode::NetworkUnavailable, why);
    result.candidates = match_term(raw, *fallback, k);
    result.fell_back = true;
    result.warning = why + "; using local term index";
    return result;
  };

  if (!config.enabled) return fall_back("remote lookups disabled");

  auto [host, base] = text::split_url(config.endpoint);
  std::string body;
  try {
    httplib::Client client(host);
    client.set_connection_timeout(config.timeout_seconds);
    client.set_read_timeout(config.timeout_seconds);
    client.set_follow_location(true);
    httplib::Params params{{"q", text::normalize_label(raw)},
                           {"ontology", joined_lower(ontologies)},
                           {"rows", std::to_string(k)},
                           {"type", "class"}};
    auto res = client.Get(base + "/api/search", params, httplib::Headers{});
    if (!res) return fall_back("OLS unreachable: " + httplib::to_string(res.error()));
    if (res->status != 200) return fall_back("OLS returned HTTP " + std::to_string(res->status));
    body = res->body;
  } catch (const std::exception& e) {
    return fall_back(std::string("OLS request failed: ") + e.what());
  }

  result.candidates = parse_ols_response(body, raw, k, registry);
  if (!cache_file.empty()) {
    std::lock_guard lock(cache_mutex());
    text::write_file(cache_file, body);
  }
  return result;
}

}  // namespace mskg
