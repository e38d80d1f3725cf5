#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mskg/term.hpp"
#include "mskg/term_index.hpp"

namespace mskg {

struct MixtureComponent {
  std::string name;
  std::optional<OntologyTermRef> chemical;  // unresolved names keep only the label
  std::optional<double> proportion;
};

struct MixtureAdditive {
  std::string name;
  std::optional<OntologyTermRef> chemical;
  double concentration = 0.0;
  std::string unit;
};

struct SolventMixture {
  std::vector<MixtureComponent> components;
  std::vector<MixtureAdditive> additives;
  std::vector<std::string> warnings;
};

// Grammar:
//   mixture   := names [ "(" ratio ")" ] { "+" additive }
//   names     := name { ("-" | "/") name }
//   ratio     := number { ":" number }        (one per name, positionally)
//   additive  := number unit name             e.g. "0.1% formic acid"
// A '-' only separates names when it sits between two letters, so
// "2-propanol" stays whole. Names are resolved through `index` when an exact
// (score 1.0) candidate exists. Throws UnparseableMixture.
SolventMixture parse_solvent_mixture(std::string_view raw, const TermIndex* index = nullptr);

// Canonical text form; reparsing it yields the same structure.
std::string render_solvent_mixture(const SolventMixture& m);

bool same_structure(const SolventMixture& a, const SolventMixture& b);

// Ordered steps of a collection/extraction method phrase, split on ';' and ','.
std::vector<std::string> parse_method_phrase(std::string_view raw);

// Exact-tier (score 1.0) resolution of a label against the index.
std::optional<OntologyTermRef> resolve_exact(std::string_view label, const TermIndex* index);

// UO term (or nullopt) for a concentration unit.
std::optional<OntologyTermRef> unit_term(std::string_view unit);

}  // namespace mskg
