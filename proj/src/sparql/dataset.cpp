#include "mskg/sparql/dataset.hpp"

#include <algorithm>

#include "mskg/error.hpp"

namespace mskg::sparql {

TermId Dictionary::intern(const std::string& nt) {
  auto it = ids_.find(nt);
  if (it != ids_.end()) return it->second;
  terms_.push_back(parse_nt_term(nt));
  nts_.push_back(nt);
  TermId id = static_cast<TermId>(terms_.size());
  ids_.emplace(nt, id);
  return id;
}

TermId Dictionary::find(const std::string& nt) const {
  auto it = ids_.find(nt);
  return it == ids_.end() ? kUnbound : it->second;
}

namespace {

IdTriple rotate(const IdTriple& t, int perm) {
  switch (perm) {
    case 1: return {t[1], t[2], t[0]};  // POS
    case 2: return {t[2], t[0], t[1]};  // OSP
    default: return t;
  }
}

void merge_into(std::vector<IdTriple>& dst, std::vector<IdTriple> add) {
  std::sort(add.begin(), add.end());
  add.erase(std::unique(add.begin(), add.end()), add.end());
  std::vector<IdTriple> out;
  out.reserve(dst.size() + add.size());
  std::set_union(dst.begin(), dst.end(), add.begin(), add.end(), std::back_inserter(out));
  dst.swap(out);
}

}  // namespace

void TripleTable::insert(const std::vector<IdTriple>& triples) {
  merge_into(spo_, triples);
  for (int perm = 1; perm <= 2; ++perm) {
    std::vector<IdTriple> rotated;
    rotated.reserve(triples.size());
    for (const auto& t : triples) rotated.push_back(rotate(t, perm));
    merge_into(perm == 1 ? pos_ : osp_, std::move(rotated));
  }
}

TripleTable::Range TripleTable::range(TermId s, TermId p, TermId o, int& perm) const {
  // Key prefix in the chosen permutation's column order.
  IdTriple key{};
  int len = 0;
  const std::vector<IdTriple>* v = &spo_;
  if (s && p) {
    perm = 0, key = {s, p, o}, len = o ? 3 : 2;
  } else if (s && o) {
    perm = 2, v = &osp_, key = {o, s, 0}, len = 2;
  } else if (s) {
    perm = 0, key = {s, 0, 0}, len = 1;
  } else if (p) {
    perm = 1, v = &pos_, key = {p, o, 0}, len = o ? 2 : 1;
  } else if (o) {
    perm = 2, v = &osp_, key = {o, 0, 0}, len = 1;
  } else {
    perm = 0;
    return {v->data(), v->data() + v->size()};
  }
  auto less = [len](const IdTriple& a, const IdTriple& b) {
    for (int i = 0; i < len; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  };
  auto [b, e] = std::equal_range(v->begin(), v->end(), key, less);
  return {v->data() + (b - v->begin()), v->data() + (e - v->begin())};
}

std::size_t TripleTable::count(TermId s, TermId p, TermId o) const {
  int perm = 0;
  auto [b, e] = range(s, p, o, perm);
  return static_cast<std::size_t>(e - b);
}

std::size_t Dataset::load(const TripleDoc& doc) {
  if (doc.graph_name().empty()) throw Error(ErrorCode::InvalidSpec, "document has no graph name");
  TermId g = dict_.intern(nt_iri(doc.graph_name()));
  std::vector<IdTriple> ids;
  ids.reserve(doc.size());
  std::unordered_map<std::string, TermId> local;
  auto id_of = [&](const std::string& nt) {
    auto it = local.find(nt);
    if (it != local.end()) return it->second;
    TermId id = dict_.intern(nt);
    local.emplace(nt, id);
    return id;
  };
  for (const auto& t : doc.triples())
    ids.push_back({id_of(nt_iri(t.subject)), id_of(nt_iri(t.predicate)), id_of(t.object)});
  auto& table = graphs_[g];
  table.insert(ids);
  default_.insert(ids);
  return table.size();
}

const TripleTable* Dataset::graph(TermId name) const {
  auto it = graphs_.find(name);
  return it == graphs_.end() ? nullptr : &it->second;
}

const TripleTable* Dataset::graph(const std::string& iri) const {
  TermId id = dict_.find(nt_iri(iri));
  return id ? graph(id) : nullptr;
}

std::vector<TermId> Dataset::graph_names() const {
  std::vector<TermId> out;
  for (const auto& [g, t] : graphs_) out.push_back(g);
  return out;
}

std::size_t Dataset::graph_size(const std::string& iri) const {
  const TripleTable* t = graph(iri);
  return t ? t->size() : 0;
}

}  // namespace mskg::sparql
