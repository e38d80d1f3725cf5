#pragma once

#include <string>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/rdf.hpp"

namespace mskg {

struct Violation {
  std::string check;  // duplicate-value-node, merged-prov-node, missing-uai, invalid-uai, gnps-hit-number
  std::string subject;
  std::string detail;
};

// Graph-level invariant checks over a set of emitted documents.
std::vector<Violation> validate_docs(const std::vector<TripleDoc>& docs, const NamespaceRegistry& registry);

std::string violations_tsv(const std::vector<Violation>& violations);

}  // namespace mskg
