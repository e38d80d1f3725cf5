#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mskg/rdf.hpp"
#include "mskg/results.hpp"
#include "mskg/sparql/dataset.hpp"

namespace mskg {

// A SPARQL 1.1 store: SELECT queries plus named-graph loading.
class Endpoint {
 public:
  virtual ~Endpoint() = default;

  virtual std::string describe() const = 0;
  // Throws QueryFailure or EndpointUnreachable.
  virtual ResultTable select(const std::string& query) = 0;
  // Adds the document's triples to its named graph (set semantics).
  virtual void add_graph(const TripleDoc& doc) = 0;
  virtual std::size_t graph_size(const std::string& graph_iri) = 0;
};

// In-process store backed by the bundled query engine.
class EmbeddedEndpoint : public Endpoint {
 public:
  std::string describe() const override { return "embedded"; }
  ResultTable select(const std::string& query) override;
  void add_graph(const TripleDoc& doc) override;
  std::size_t graph_size(const std::string& graph_iri) override;

  const sparql::Dataset& dataset() const { return dataset_; }

 private:
  sparql::Dataset dataset_;
};

// Remote store over the SPARQL protocol (query) and the Graph Store HTTP
// protocol (loading).
struct HttpEndpointConfig {
  std::string query_url;
  // Defaults to query_url with a trailing /sparql or /query replaced by /data.
  std::string store_url;
  int timeout_seconds = 60;
};

class HttpEndpoint : public Endpoint {
 public:
  explicit HttpEndpoint(HttpEndpointConfig config);

  std::string describe() const override { return config_.query_url; }
  ResultTable select(const std::string& query) override;
  void add_graph(const TripleDoc& doc) override;
  std::size_t graph_size(const std::string& graph_iri) override;

 private:
  HttpEndpointConfig config_;
};

// "embedded" or an http(s) URL. Throws ConfigError otherwise.
std::unique_ptr<Endpoint> make_endpoint(const std::string& spec);

struct LoadReport {
  struct Entry {
    std::string graph;
    std::size_t expected = 0;
    std::size_t loaded = 0;
  };
  std::vector<Entry> entries;

  std::string to_tsv() const;
};

// Loads each document into its named graph and checks the post-load counts
// against the distinct triples sent per graph. Throws LoadMismatch.
LoadReport load_endpoint(const std::vector<TripleDoc>& docs, Endpoint& endpoint);

}  // namespace mskg
