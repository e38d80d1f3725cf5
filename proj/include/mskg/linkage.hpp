#pragma once

#include <string>
#include <vector>

#include "mskg/namespaces.hpp"
#include "mskg/rdf.hpp"
#include "mskg/uai.hpp"
#include "mskg/uri.hpp"

namespace mskg {

struct LinkTier {
  ComponentSet required;
  OntologyTermRef predicate;
};

// Tiers, highest precedence first.
struct LinkRule {
  std::vector<LinkTier> tiers;

  static LinkRule defaults();
  // Union of the components named by any tier; only these take part in
  // the comparison of two identifiers.
  ComponentSet compared() const;
};

// A UAI node found in a document.
struct UaiOccurrence {
  std::size_t batch = 0;
  std::string iri;
  Uai uai;
};

// UAI nodes (typed MBS:UniversalAnnotationIdentifier) with their labels
// parsed back into identifiers. Unparseable labels are skipped.
std::vector<UaiOccurrence> find_uais(const std::vector<TripleDoc>& docs, const NamespaceRegistry& registry);

// Drops components the rule does not compare.
Uai project_uai(const Uai& u, const ComponentSet& keep);

// Tier index for a pair, or -1 when no tier applies.
int link_tier(const Uai& a, const Uai& b, const LinkRule& rule);

// One triple per linkable UAI pair drawn from different documents, at the
// highest matching tier, subject < object by IRI.
TripleDoc link_batches(const std::vector<TripleDoc>& docs, const NamespaceRegistry& registry,
                       const LinkRule& rule = LinkRule::defaults(),
                       std::string_view global_prefix = kDefaultGlobalPrefix);

}  // namespace mskg
