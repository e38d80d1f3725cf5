#include "cq_oracle.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace mskg::testing {

namespace {

Cell text(std::string s) { return Cell{std::move(s), std::nullopt}; }
Cell num(double d) { return Cell{std::nullopt, d}; }

const std::string kTaxon = "http://purl.obolibrary.org/obo/NCBITaxon_";
const std::string kSampleType = "https://ns.inria.fr/metaboKG/schema/sampletype_";

}  // namespace

Expected oracle_cq(int cq, const CqFixture& f) {
  Expected e;
  switch (cq) {
    case 1: {
      // Per study title: annotations and samples that share the collection,
      // with an example taxon of those samples.
      e.vars = {"title", "nAnn", "nSamp", "taxonExample"};
      e.key_vars = {"title"};
      e.order_var = "nAnn";
      for (std::size_t c = 0; c < f.collections.size(); ++c) {
        std::size_t n_ann = 0;
        for (const auto& a : f.annotations) n_ann += a.collection == c;
        const auto& col = f.collections[c];
        if (!n_ann || col.samples.empty()) continue;
        e.rows.push_back({{"title", text(col.title)},
                          {"nAnn", num(static_cast<double>(n_ann))},
                          {"nSamp", num(static_cast<double>(col.samples.size()))},
                          {"taxonExample", text(kTaxon + col.taxon_id)}});
      }
      break;
    }
    case 2: {
      e.vars = {"title", "avgMQ", "avgSharedPeaks", "n"};
      e.key_vars = {"title"};
      e.order_var = "avgMQ";
      for (std::size_t c = 0; c < f.collections.size(); ++c) {
        double mq = 0, sp = 0;
        std::size_t n = 0;
        for (const auto& a : f.annotations) {
          if (a.collection != c) continue;
          mq += std::stod(a.mq);
          sp += static_cast<double>(a.shared_peaks);
          ++n;
        }
        if (!n) continue;
        e.rows.push_back({{"title", text(f.collections[c].title)},
                          {"avgMQ", num(mq / static_cast<double>(n))},
                          {"avgSharedPeaks", num(sp / static_cast<double>(n))},
                          {"n", num(static_cast<double>(n))}});
      }
      break;
    }
    case 3: {
      e.vars = {"cfClassLabel", "npcPathwayLabel", "n"};
      e.key_vars = {"cfClassLabel", "npcPathwayLabel"};
      e.order_var = "n";
      std::map<std::pair<std::string, std::string>, std::size_t> counts;
      for (const auto& a : f.annotations) {
        const auto& cp = f.compounds[a.compound];
        if (cp.cf_class.empty() || cp.npc_pathway.empty()) continue;
        ++counts[{cp.cf_class, cp.npc_pathway}];
      }
      for (const auto& [k, n] : counts)
        e.rows.push_back({{"cfClassLabel", text(k.first)},
                          {"npcPathwayLabel", text(k.second)},
                          {"n", num(static_cast<double>(n))}});
      break;
    }
    case 4: {
      // (sample type, InChIKey) pairs co-occurring in more than three studies.
      e.vars = {"sampleType", "ik", "nSamples", "nStudies"};
      e.key_vars = {"sampleType", "ik"};
      e.order_var = "nSamples";
      std::set<std::string> types;
      for (const auto& c : f.collections)
        for (const auto& s : c.samples) types.insert(s.sample_type);
      for (const auto& st : types) {
        for (std::size_t k = 0; k < f.compounds.size(); ++k) {
          std::set<std::string> studies, samples;
          for (std::size_t c = 0; c < f.collections.size(); ++c) {
            bool has_ik = false;
            for (const auto& a : f.annotations) has_ik |= a.collection == c && a.compound == k;
            if (!has_ik) continue;
            for (const auto& s : f.collections[c].samples)
              if (s.sample_type == st) {
                studies.insert(f.collections[c].title);
                samples.insert(f.collections[c].id + "/" + s.filename);
              }
          }
          if (studies.size() <= 3) continue;
          e.rows.push_back({{"sampleType", text(kSampleType + st)},
                            {"ik", text(f.compounds[k].inchikey)},
                            {"nSamples", num(static_cast<double>(samples.size()))},
                            {"nStudies", num(static_cast<double>(studies.size()))}});
        }
      }
      break;
    }
    default:
      break;
  }
  return e;
}

std::string diff_results(const ResultTable& actual, const Expected& expected, double tolerance) {
  std::ostringstream out;
  if (actual.vars != expected.vars) {
    out << "columns differ:";
    for (const auto& v : actual.vars) out << ' ' << v;
    return out.str();
  }
  auto key_of_actual = [&](const std::vector<std::optional<Term>>& row) {
    std::string k;
    for (const auto& v : expected.key_vars) {
      const auto& cell = row[*actual.column(v)];
      k += (cell ? cell->value : std::string("<unbound>")) + '\x1f';
    }
    return k;
  };
  auto key_of_expected = [&](const ExpectedRow& row) {
    std::string k;
    for (const auto& v : expected.key_vars) k += row.at(v).text.value_or("<unbound>") + '\x1f';
    return k;
  };

  std::map<std::string, const std::vector<std::optional<Term>>*> got;
  for (const auto& r : actual.rows)
    if (!got.emplace(key_of_actual(r), &r).second) out << "duplicate result row for key " << key_of_actual(r) << '\n';
  if (actual.rows.size() != expected.rows.size())
    out << "row count " << actual.rows.size() << ", expected " << expected.rows.size() << '\n';

  for (const auto& er : expected.rows) {
    std::string key = key_of_expected(er);
    auto it = got.find(key);
    if (it == got.end()) {
      out << "missing row " << key << '\n';
      continue;
    }
    for (const auto& v : expected.vars) {
      const Cell& want = er.at(v);
      const auto& have = (*it->second)[*actual.column(v)];
      if (want.number) {
        auto n = have ? numeric_value(*have) : std::nullopt;
        if (!n || std::fabs(*n - *want.number) > tolerance)
          out << key << ' ' << v << ": got " << (have ? have->nt() : "unbound") << ", expected " << *want.number
              << '\n';
      } else if (!have || have->value != *want.text) {
        out << key << ' ' << v << ": got " << (have ? have->nt() : "unbound") << ", expected " << *want.text << '\n';
      }
    }
  }

  auto order_col = actual.column(expected.order_var);
  for (std::size_t i = 1; order_col && i < actual.rows.size(); ++i) {
    auto a = actual.rows[i - 1][*order_col], b = actual.rows[i][*order_col];
    auto x = a ? numeric_value(*a) : std::nullopt, y = b ? numeric_value(*b) : std::nullopt;
    if (x && y && *x < *y) out << "rows " << i - 1 << ", " << i << " not ordered by DESC(?" << expected.order_var << ")\n";
  }
  return out.str();
}

}  // namespace mskg::testing
