#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mskg/rdf.hpp"

namespace mskg {

// SELECT results. Unbound cells are nullopt.
struct ResultTable {
  std::vector<std::string> vars;
  std::vector<std::vector<std::optional<Term>>> rows;

  std::optional<std::size_t> column(std::string_view var) const;

  // SPARQL TSV: "?var" header, terms in N-Triples syntax.
  std::string to_tsv() const;
  // SPARQL 1.1 Query Results JSON.
  std::string to_json() const;
  // Throws MalformedResponse.
  static ResultTable from_json(std::string_view body);

  // Rows in lexicographic order of their TSV rendering.
  ResultTable canonical() const;
};

// Numeric value of a literal (integer, decimal, float, double, or a
// numeric-looking plain string).
std::optional<double> numeric_value(const Term& t);

}  // namespace mskg
