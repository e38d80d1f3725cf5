#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/term_index.hpp"

namespace mskg {

struct OlsConfig {
  std::string endpoint = "https://www.ebi.ac.uk/ols4";
  bool enabled = false;  // network mode; cached replies are used either way
  std::string cache_dir;
  int timeout_seconds = 20;
};

struct RemoteCandidates {
  std::vector<MatchCandidate> candidates;
  bool from_cache = false;
  bool fell_back = false;
  std::string warning;
};

// Cache file name for a query (hex SHA-256 of the normalized key).
std::string ols_cache_key(std::string_view raw, const std::set<std::string>& ontologies, int k);

// Converts an OLS search response body to ranked candidates (response order
// gives the rank). Throws MalformedResponse.
std::vector<MatchCandidate> parse_ols_response(std::string_view body, std::string_view raw, int k,
                                               const NamespaceRegistry& registry);

// Cached OLS search restricted to `ontologies`. With the network disabled or
// unreachable, falls back to match_term over `fallback` and reports it in
// the result; without a fallback index NetworkUnavailable is thrown.
RemoteCandidates fetch_remote_candidates(std::string_view raw, const std::set<std::string>& ontologies,
                                         int k, const OlsConfig& config,
                                         const NamespaceRegistry& registry,
                                         const TermIndex* fallback = nullptr);

}  // namespace mskg
