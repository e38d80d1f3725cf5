#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mskg/rdf.hpp"

namespace mskg::sparql {

using TermId = std::uint32_t;
inline constexpr TermId kUnbound = 0;

// Interned RDF terms; ids start at 1.
class Dictionary {
 public:
  TermId intern(const std::string& nt);
  TermId intern(const Term& t) { return intern(t.nt()); }
  // kUnbound when unknown.
  TermId find(const std::string& nt) const;

  const Term& term(TermId id) const { return terms_.at(id - 1); }
  const std::string& nt(TermId id) const { return nts_.at(id - 1); }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<Term> terms_;
  std::vector<std::string> nts_;
  std::unordered_map<std::string, TermId> ids_;
};

using IdTriple = std::array<TermId, 3>;

// One graph in three sorted permutations (SPO, POS, OSP).
class TripleTable {
 public:
  void insert(const std::vector<IdTriple>& triples);  // set semantics
  std::size_t size() const { return spo_.size(); }
  const std::vector<IdTriple>& spo() const { return spo_; }

  // Calls fn(s, p, o) for every triple matching the bound positions
  // (kUnbound = wildcard). fn returns false to stop.
  template <typename Fn>
  void match(TermId s, TermId p, TermId o, Fn&& fn) const;
  std::size_t count(TermId s, TermId p, TermId o) const;

 private:
  using Range = std::pair<const IdTriple*, const IdTriple*>;
  // Picks a permutation and returns the range plus the column order used.
  Range range(TermId s, TermId p, TermId o, int& perm) const;

  std::vector<IdTriple> spo_, pos_, osp_;
};

// Named graphs plus a default graph holding their set union.
class Dataset {
 public:
  // Adds a document to its named graph (existing triples are kept).
  // Returns the graph size afterwards.
  std::size_t load(const TripleDoc& doc);

  Dictionary& dictionary() { return dict_; }
  const Dictionary& dictionary() const { return dict_; }

  const TripleTable& default_graph() const { return default_; }
  // nullptr when the graph is unknown.
  const TripleTable* graph(TermId name) const;
  const TripleTable* graph(const std::string& iri) const;
  std::vector<TermId> graph_names() const;
  std::size_t graph_size(const std::string& iri) const;

 private:
  Dictionary dict_;
  std::map<TermId, TripleTable> graphs_;
  TripleTable default_;
};

template <typename Fn>
void TripleTable::match(TermId s, TermId p, TermId o, Fn&& fn) const {
  int perm = 0;
  auto [b, e] = range(s, p, o, perm);
  for (const IdTriple* it = b; it != e; ++it) {
    TermId ts, tp, to;
    switch (perm) {
      case 0: ts = (*it)[0], tp = (*it)[1], to = (*it)[2]; break;
      case 1: tp = (*it)[0], to = (*it)[1], ts = (*it)[2]; break;
      default: to = (*it)[0], ts = (*it)[1], tp = (*it)[2]; break;
    }
    if ((s && ts != s) || (p && tp != p) || (o && to != o)) continue;
    if (!fn(ts, tp, to)) return;
  }
}

}  // namespace mskg::sparql
