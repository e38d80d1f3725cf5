#include "mskg/endpoint.hpp"

#include <httplib.h>

#include <map>
#include <set>

#include "mskg/error.hpp"
#include "mskg/serialize.hpp"
#include "mskg/sparql/engine.hpp"
#include "mskg/text.hpp"

namespace mskg {

ResultTable EmbeddedEndpoint::select(const std::string& query) {
  return sparql::execute(dataset_, query);
}

void EmbeddedEndpoint::add_graph(const TripleDoc& doc) { dataset_.load(doc); }

std::size_t EmbeddedEndpoint::graph_size(const std::string& graph_iri) {
  return dataset_.graph_size(graph_iri);
}

namespace {

std::string default_store_url(const std::string& query_url) {
  for (std::string_view tail : {"/sparql", "/query"})
    if (query_url.ends_with(tail)) return query_url.substr(0, query_url.size() - tail.size()) + "/data";
  return query_url;
}

[[noreturn]] void unreachable(const std::string& url, httplib::Error err) {
  throw Error(ErrorCode::EndpointUnreachable,
              url + " (" + httplib::to_string(err) +
                  "); check that the store is running and retry, or use --endpoint embedded");
}

httplib::Client client_for(const std::string& host, int timeout) {
  httplib::Client c(host);
  c.set_connection_timeout(timeout);
  c.set_read_timeout(timeout);
  c.set_write_timeout(timeout);
  return c;
}

}  // namespace

HttpEndpoint::HttpEndpoint(HttpEndpointConfig config) : config_(std::move(config)) {
  if (config_.store_url.empty()) config_.store_url = default_store_url(config_.query_url);
}

ResultTable HttpEndpoint::select(const std::string& query) {
  auto [host, path] = text::split_url(config_.query_url);
  auto client = client_for(host, config_.timeout_seconds);
  httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
  httplib::Params form{{"query", query}};
  auto res = client.Post(path.empty() ? "/" : path, headers, form);
  if (!res) unreachable(config_.query_url, res.error());
  if (res->status != 200)
    throw Error(ErrorCode::QueryFailure, "HTTP " + std::to_string(res->status) + " from " +
                                             config_.query_url + ": " + res->body.substr(0, 2000));
  return ResultTable::from_json(res->body);
}

void HttpEndpoint::add_graph(const TripleDoc& doc) {
  auto [host, path] = text::split_url(config_.store_url);
  auto client = client_for(host, config_.timeout_seconds);
  std::string target = (path.empty() ? "/" : path) + "?graph=" +
                       httplib::detail::encode_query_param(doc.graph_name());
  auto res = client.Post(target, serialize(doc, RdfFormat::NTriples, NamespaceRegistry{}),
                         "application/n-triples");
  if (!res) unreachable(config_.store_url, res.error());
  if (res->status < 200 || res->status >= 300)
    throw Error(ErrorCode::QueryFailure, "graph store rejected " + doc.graph_name() + ": HTTP " +
                                             std::to_string(res->status) + " " + res->body.substr(0, 2000));
}

std::size_t HttpEndpoint::graph_size(const std::string& graph_iri) {
  ResultTable t = select("SELECT (COUNT(*) AS ?n) WHERE { GRAPH " + nt_iri(graph_iri) + " { ?s ?p ?o } }");
  if (t.rows.size() != 1 || t.rows[0].empty() || !t.rows[0][0])
    throw Error(ErrorCode::MalformedResponse, "count query returned no value");
  auto n = numeric_value(*t.rows[0][0]);
  if (!n) throw Error(ErrorCode::MalformedResponse, "count is not numeric: " + t.rows[0][0]->value);
  return static_cast<std::size_t>(*n);
}

std::unique_ptr<Endpoint> make_endpoint(const std::string& spec) {
  if (spec.empty() || spec == "embedded") return std::make_unique<EmbeddedEndpoint>();
  if (spec.starts_with("http://") || spec.starts_with("https://"))
    return std::make_unique<HttpEndpoint>(HttpEndpointConfig{spec, {}, 60});
  throw Error(ErrorCode::ConfigError, "endpoint must be 'embedded' or an http(s) URL: " + spec);
}

std::string LoadReport::to_tsv() const {
  std::string out = "graph\texpected\tloaded\n";
  for (const auto& e : entries)
    out += e.graph + '\t' + std::to_string(e.expected) + '\t' + std::to_string(e.loaded) + '\n';
  return out;
}

LoadReport load_endpoint(const std::vector<TripleDoc>& docs, Endpoint& endpoint) {
  std::map<std::string, std::set<Triple>> expected;
  for (const auto& doc : docs) {
    if (doc.graph_name().empty()) throw Error(ErrorCode::InvalidSpec, "document without a graph name");
    endpoint.add_graph(doc);
    auto& set = expected[doc.graph_name()];
    set.insert(doc.triples().begin(), doc.triples().end());
  }
  LoadReport report;
  std::string mismatches;
  for (const auto& [graph, triples] : expected) {
    std::size_t loaded = endpoint.graph_size(graph);
    report.entries.push_back({graph, triples.size(), loaded});
    if (loaded != triples.size())
      mismatches += " " + graph + " (expected " + std::to_string(triples.size()) + ", found " +
                    std::to_string(loaded) + ")";
  }
  if (!mismatches.empty()) throw Error(ErrorCode::LoadMismatch, "post-load counts differ:" + mismatches);
  return report;
}

}  // namespace mskg
