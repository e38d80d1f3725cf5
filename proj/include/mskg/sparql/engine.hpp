#pragma once

#include <string_view>

#include "mskg/results.hpp"
#include "mskg/sparql/ast.hpp"
#include "mskg/sparql/dataset.hpp"

namespace mskg::sparql {

// Evaluates a SELECT query over the dataset. The default graph is the
// union of all named graphs. Throws QueryFailure or ParseError.
ResultTable execute(const Dataset& dataset, const Query& query);
ResultTable execute(const Dataset& dataset, std::string_view query_text);

}  // namespace mskg::sparql
