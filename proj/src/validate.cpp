#include "mskg/validate.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <set>

#include "mskg/error.hpp"
#include "mskg/term.hpp"
#include "mskg/uai.hpp"

namespace mskg {

namespace {

struct SubjectView {
  std::set<std::string> types;
  std::vector<std::string> values;
  std::vector<std::string> labels;
  std::set<std::string> identifiers;  // SIO:000675 objects
  std::set<std::string> associated;   // prov:wasAssociatedWith objects
  std::set<std::size_t> docs;
};

std::string join(const std::set<std::string>& s, std::string_view sep) {
  std::string out;
  for (const auto& x : s) {
    if (!out.empty()) out += sep;
    out += x;
  }
  return out;
}

}  // namespace

std::vector<Violation> validate_docs(const std::vector<TripleDoc>& docs, const NamespaceRegistry& registry) {
  // Subjects and predicates are bare IRIs, objects are N-Triples terms.
  auto pred = [&](const OntologyTermRef& t) { return expand(t, registry); };
  auto iri = [&](const OntologyTermRef& t) { return nt_iri(expand(t, registry)); };
  const std::string type = pred(vocab::kRdfType), value = pred(vocab::kProvValue), label = pred(vocab::kRdfsLabel);
  const std::string has_id = pred(vocab::kHasIdentifier), assoc = pred(vocab::kProvWasAssociatedWith);
  const std::string annotation = iri(vocab::kMolecularAnnotation), sample = iri(vocab::kSampleClass);
  const std::string uai_class = iri(vocab::kUai), activity = iri(vocab::kProvActivity);
  const std::string prov_ns = "<" + expand(OntologyTermRef("prov", ""), registry);

  std::map<std::string, SubjectView> subjects;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& t : docs[d].triples()) {
      auto& v = subjects[t.subject];
      v.docs.insert(d);
      if (t.predicate == type) v.types.insert(t.object);
      else if (t.predicate == value) v.values.push_back(t.object);
      else if (t.predicate == label) v.labels.push_back(t.object);
      else if (t.predicate == has_id) v.identifiers.insert(t.object_term().value);
      else if (t.predicate == assoc) v.associated.insert(t.object);
    }
  }

  std::vector<Violation> out;
  auto is_prov = [&](const SubjectView& v) {
    for (const auto& t : v.types)
      if (t.starts_with(prov_ns)) return true;
    return false;
  };

  // Value nodes: one subject per (types, literal).
  std::map<std::string, std::set<std::string>> by_key;
  for (const auto& [s, v] : subjects) {
    if (v.values.empty()) continue;
    if (is_prov(v)) {
      out.push_back({"merged-prov-node", s, "PROV node carries prov:value"});
      continue;
    }
    std::set<std::string> vals(v.values.begin(), v.values.end());
    if (vals.size() > 1) {
      out.push_back({"duplicate-value-node", s, "one node holds several values: " + join(vals, " ")});
      continue;
    }
    by_key[join(v.types, " ") + "\x1f" + *vals.begin()].insert(s);
  }
  for (const auto& [key, subs] : by_key)
    if (subs.size() > 1)
      out.push_back({"duplicate-value-node", *subs.begin(),
                     std::to_string(subs.size()) + " subjects share one (type, value) key: " + join(subs, " ")});

  for (const auto& [s, v] : subjects) {
    // Activities are minted per job or per record, so one appearing in two
    // documents or with two agents was merged across identities.
    if (v.types.contains(activity)) {
      if (v.docs.size() > 1)
        out.push_back({"merged-prov-node", s, "activity appears in " + std::to_string(v.docs.size()) + " documents"});
      else if (v.associated.size() > 1)
        out.push_back({"merged-prov-node", s, "activity associated with several agents: " + join(v.associated, " ")});
    }

    bool is_annotation = v.types.contains(annotation);
    if (is_annotation || v.types.contains(sample)) {
      bool found = false;
      for (const auto& id : v.identifiers) {
        auto it = subjects.find(id);
        found |= it != subjects.end() && it->second.types.contains(uai_class);
      }
      if (!found)
        out.push_back({"missing-uai", s, is_annotation ? "annotation without a UAI node" : "sample without a UAI node"});
      if (!is_annotation) continue;
      for (const auto& id : v.identifiers) {
        auto it = subjects.find(id);
        if (it == subjects.end() || it->second.labels.empty()) continue;
        try {
          Uai u = uai_parse(parse_nt_term(it->second.labels.front()).value);
          if (u.hit_number && *u.hit_number != 1)
            out.push_back({"gnps-hit-number", id, "hit number " + std::to_string(*u.hit_number) + ", expected 1"});
        } catch (const Error&) {
        }
      }
    }

    if (v.types.contains(uai_class)) {
      if (v.labels.size() != 1) {
        out.push_back({"invalid-uai", s, "expected exactly one label, found " + std::to_string(v.labels.size())});
        continue;
      }
      try {
        Uai u = uai_parse(parse_nt_term(v.labels.front()).value);
        for (const auto& msg : uai_violations(u)) out.push_back({"invalid-uai", s, msg});
      } catch (const Error& e) {
        out.push_back({"invalid-uai", s, e.what()});
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.check, a.subject, a.detail) < std::tie(b.check, b.subject, b.detail);
  });
  return out;
}

std::string violations_tsv(const std::vector<Violation>& violations) {
  std::string out = "check\tsubject\tdetail\n";
  for (const auto& v : violations) out += v.check + '\t' + v.subject + '\t' + v.detail + '\n';
  return out;
}

}  // namespace mskg
