#include "mskg/sparql/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <regex>
#include <set>
#include <unordered_map>

#include "mskg/error.hpp"
#include "mskg/term.hpp"
#include "mskg/text.hpp"

namespace mskg::sparql {

namespace {

using Val = std::optional<Term>;
using Row = std::vector<TermId>;
using Rows = std::vector<Row>;

constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr std::string_view kLangString = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

struct Num {
  double v = 0;
  int rank = 0;  // 0 integer, 1 decimal, 2 float, 3 double
};

int numeric_rank(std::string_view dt) {
  if (!dt.starts_with(kXsd)) return -1;
  std::string_view local = dt.substr(kXsd.size());
  static const std::set<std::string_view> kIntegers = {
      "integer", "int", "long", "short", "byte", "nonNegativeInteger", "positiveInteger",
      "nonPositiveInteger", "negativeInteger", "unsignedInt", "unsignedLong", "unsignedShort", "unsignedByte"};
  if (kIntegers.contains(local)) return 0;
  if (local == "decimal") return 1;
  if (local == "float") return 2;
  if (local == "double") return 3;
  return -1;
}

bool parse_double(std::string_view s, double& out) {
  s = text::trim(s);
  if (s.empty()) return false;
  std::string tmp(s);
  if (tmp == "INF" || tmp == "+INF") return out = HUGE_VAL, true;
  if (tmp == "-INF") return out = -HUGE_VAL, true;
  if (tmp == "NaN") return out = NAN, true;
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size();
}

std::optional<Num> as_num(const Val& v) {
  if (!v || !v->is_literal()) return std::nullopt;
  int rank = numeric_rank(v->datatype);
  if (rank < 0) return std::nullopt;
  Num n{0, rank};
  if (!parse_double(v->value, n.v)) return std::nullopt;
  return n;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

Term num_term(const Num& n) {
  switch (n.rank) {
    case 0: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.0f", n.v);
      return Term::literal(buf, std::string(xsd::kInteger));
    }
    case 1: {
      std::string s = format_double(n.v);
      return Term::literal(canonical_decimal(s).value_or(s), std::string(xsd::kDecimal));
    }
    case 2: return Term::literal(format_double(n.v), std::string(xsd::kFloat));
    default: return Term::literal(format_double(n.v), std::string(xsd::kDouble));
  }
}

Term bool_term(bool b) { return Term::literal(b ? "true" : "false", std::string(xsd::kBoolean)); }

bool is_stringish(const Term& t) {
  return t.is_literal() && (t.datatype.empty() || t.datatype == xsd::kString);
}

std::optional<bool> ebv(const Val& v) {
  if (!v || !v->is_literal()) return std::nullopt;
  if (v->datatype == xsd::kBoolean) return v->value == "true" || v->value == "1";
  if (auto n = as_num(v)) return n->v != 0 && !std::isnan(n->v);
  if (is_stringish(*v) || !v->lang.empty()) return !v->value.empty();
  return std::nullopt;
}

// Ordering used by ORDER BY, MIN, MAX and SAMPLE.
int order_cmp(const Val& a, const Val& b) {
  if (!a || !b) return (a ? 1 : 0) - (b ? 1 : 0);
  if (a->is_iri() != b->is_iri()) return a->is_iri() ? -1 : 1;
  if (a->is_iri()) return a->value.compare(b->value) < 0 ? -1 : (a->value == b->value ? 0 : 1);
  auto na = as_num(a), nb = as_num(b);
  if (na && nb && na->v != nb->v) return na->v < nb->v ? -1 : 1;
  if (na && nb) return 0;
  if (int c = a->value.compare(b->value)) return c < 0 ? -1 : 1;
  if (int c = a->datatype.compare(b->datatype)) return c < 0 ? -1 : 1;
  if (int c = a->lang.compare(b->lang)) return c < 0 ? -1 : 1;
  return 0;
}

Val compare(const std::string& op, const Val& a, const Val& b) {
  if (!a || !b) return std::nullopt;
  int c = 0;
  bool ordered = true;
  auto na = as_num(a), nb = as_num(b);
  if (na && nb) {
    if (std::isnan(na->v) || std::isnan(nb->v)) return bool_term(op == "!=");
    c = na->v < nb->v ? -1 : (na->v > nb->v ? 1 : 0);
  } else if ((is_stringish(*a) && is_stringish(*b)) || (a->is_literal() && b->is_literal() && !a->lang.empty() &&
                                                        a->lang == b->lang)) {
    c = a->value.compare(b->value);
  } else if (a->is_literal() && b->is_literal() && a->datatype == xsd::kBoolean && b->datatype == xsd::kBoolean) {
    c = (a->value == "true") - (b->value == "true");
  } else {
    ordered = false;
  }
  if (op == "=" || op == "!=") {
    bool eq = ordered ? c == 0 : *a == *b;
    return bool_term(op == "=" ? eq : !eq);
  }
  if (!ordered) return std::nullopt;
  if (op == "<") return bool_term(c < 0);
  if (op == ">") return bool_term(c > 0);
  if (op == "<=") return bool_term(c <= 0);
  return bool_term(c >= 0);
}

Val arith(const std::string& op, const Val& a, const Val& b) {
  auto na = as_num(a), nb = as_num(b);
  if (!na || !nb) return std::nullopt;
  Num r{0, std::max(na->rank, nb->rank)};
  if (op == "+") r.v = na->v + nb->v;
  else if (op == "-") r.v = na->v - nb->v;
  else if (op == "*") r.v = na->v * nb->v;
  else {
    if (nb->v == 0 && r.rank <= 1) return std::nullopt;
    r.v = na->v / nb->v;
    r.rank = std::max(r.rank, 1);
  }
  return num_term(r);
}

Term simple(std::string s) { return Term::literal(std::move(s)); }

// String result keeping the language tag / xsd:string of the first argument.
Term like(const Term& model, std::string s) {
  return Term::literal(std::move(s), model.datatype, model.lang);
}

std::string ascii_case(std::string s, bool up) {
  for (auto& c : s) c = static_cast<char>(up ? std::toupper(static_cast<unsigned char>(c)) : std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::regex make_regex(const std::string& pattern, const std::string& flags) {
  auto f = std::regex::ECMAScript;
  if (flags.find('i') != std::string::npos) f |= std::regex::icase;
  try {
    return std::regex(pattern, f);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::QueryFailure, "bad regular expression '" + pattern + "'");
  }
}

struct RowHash {
  std::size_t operator()(const Row& r) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (TermId id : r) h = (h ^ id) * 1099511628211ull;
    return h;
  }
};

void collect_vars(const Group& g, std::set<VarId>& out);

void collect_expr_vars(const Expr* e, std::set<VarId>& out) {
  if (!e) return;
  if (e->kind == Expr::Kind::Var) out.insert(e->var);
  for (const auto& a : e->args) collect_expr_vars(a.get(), out);
  if (e->pattern) collect_vars(*e->pattern, out);
}

void collect_vars(const Group& g, std::set<VarId>& out) {
  for (const auto& el : g.elements) {
    for (const auto& t : el.triples)
      for (const PatternTerm* pt : {&t.s, &t.p, &t.o})
        if (pt->is_var()) out.insert(pt->var);
    for (const auto& sub : el.groups) collect_vars(*sub, out);
    if (el.graph.is_var()) out.insert(el.graph.var);
    collect_expr_vars(el.expr.get(), out);
    if (el.bind_var >= 0) out.insert(el.bind_var);
    for (VarId v : el.values.vars) out.insert(v);
  }
}

class Evaluator {
 public:
  Evaluator(const Dataset& ds, const Query& q)
      : ds_(ds), q_(q), width_(q.var_names.size()), base_(static_cast<TermId>(ds.dictionary().size())) {}

  ResultTable run();

 private:
  struct Scope {
    const TripleTable* table;
  };

  const Term& term(TermId id) const {
    return id <= base_ ? ds_.dictionary().term(id) : local_terms_[id - base_ - 1];
  }

  TermId intern(const Term& t) {
    std::string nt = t.nt();
    if (TermId id = ds_.dictionary().find(nt)) return id;
    auto it = local_ids_.find(nt);
    if (it != local_ids_.end()) return it->second;
    local_terms_.push_back(t);
    TermId id = base_ + static_cast<TermId>(local_terms_.size());
    local_ids_.emplace(std::move(nt), id);
    return id;
  }

  TermId const_id(const PatternTerm& pt) {
    auto it = const_ids_.find(&pt);
    if (it != const_ids_.end()) return it->second;
    TermId id = ds_.dictionary().find(pt.term.nt());
    const_ids_.emplace(&pt, id);
    return id;
  }

  Rows eval_group(const Group& g, Rows in, Scope scope);
  Rows eval_bgp(const std::vector<TriplePattern>& pats, Rows in, Scope scope);
  Rows eval_graph(const Element& el, Rows in);
  Rows left_join(const Group& g, Rows in, Scope scope);
  Rows join_values(const InlineData& d, Rows in);
  Rows minus(const Group& g, Rows in, Scope scope);

  // Group-scoped memo: evaluates `g` seeded with the part of `row` that
  // the group mentions.
  const Rows& seeded(const Group& g, const Row& row, Scope scope);

  Val eval(const Expr& e, const Row& row, const std::vector<Val>* aggs);
  Val call(const Expr& e, const Row& row, const std::vector<Val>* aggs);
  Val cast(const std::string& dt, const Val& v);
  std::vector<Val> aggregate(const std::vector<const Row*>& rows);

  const Dataset& ds_;
  const Query& q_;
  std::size_t width_;
  TermId base_;
  std::vector<Term> local_terms_;
  std::unordered_map<std::string, TermId> local_ids_;
  std::unordered_map<const PatternTerm*, TermId> const_ids_;
  std::map<std::pair<const Group*, const TripleTable*>,
           std::pair<std::vector<VarId>, std::unordered_map<Row, Rows, RowHash>>>
      memo_;
  Scope scope_{nullptr};
  std::map<std::string, std::regex> regex_cache_;
};

Rows Evaluator::eval_group(const Group& g, Rows cur, Scope scope) {
  Scope saved = scope_;
  scope_ = scope;
  for (const auto& el : g.elements) {
    if (cur.empty()) break;
    switch (el.kind) {
      case Element::Kind::Triples: cur = eval_bgp(el.triples, std::move(cur), scope); break;
      case Element::Kind::Optional: cur = left_join(*el.groups.front(), std::move(cur), scope); break;
      case Element::Kind::Union: {
        Rows out;
        for (const auto& branch : el.groups) {
          Rows part = eval_group(*branch, cur, scope);
          std::move(part.begin(), part.end(), std::back_inserter(out));
        }
        cur = std::move(out);
        break;
      }
      case Element::Kind::Minus: cur = minus(*el.groups.front(), std::move(cur), scope); break;
      case Element::Kind::Graph: cur = eval_graph(el, std::move(cur)); break;
      case Element::Kind::Group: cur = eval_group(*el.groups.front(), std::move(cur), scope); break;
      case Element::Kind::Values: cur = join_values(el.values, std::move(cur)); break;
      case Element::Kind::Bind: {
        scope_ = scope;
        for (auto& row : cur) {
          if (row[el.bind_var] != kUnbound) throw Error(ErrorCode::QueryFailure, "BIND to an already bound variable");
          Val v = eval(*el.expr, row, nullptr);
          if (v) row[el.bind_var] = intern(*v);
        }
        break;
      }
      case Element::Kind::Filter: break;
    }
  }
  scope_ = scope;
  for (const auto& el : g.elements) {
    if (el.kind != Element::Kind::Filter || cur.empty()) continue;
    Rows kept;
    kept.reserve(cur.size());
    for (auto& row : cur)
      if (ebv(eval(*el.expr, row, nullptr)).value_or(false)) kept.push_back(std::move(row));
    cur = std::move(kept);
  }
  scope_ = saved;
  return cur;
}

Rows Evaluator::eval_bgp(const std::vector<TriplePattern>& pats, Rows in, Scope scope) {
  if (!scope.table || in.empty()) return {};
  const std::size_t n = pats.size();
  std::vector<std::array<TermId, 3>> cids(n);
  std::vector<std::array<VarId, 3>> vars(n);
  std::vector<std::size_t> estimate(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PatternTerm* pos[3] = {&pats[i].s, &pats[i].p, &pats[i].o};
    for (int k = 0; k < 3; ++k) {
      vars[i][k] = pos[k]->is_var() ? pos[k]->var : -1;
      cids[i][k] = pos[k]->is_var() ? kUnbound : const_id(*pos[k]);
      if (!pos[k]->is_var() && cids[i][k] == kUnbound) return {};  // constant absent from the data
    }
    estimate[i] = scope.table->count(cids[i][0], cids[i][1], cids[i][2]);
    if (estimate[i] == 0) return {};
  }

  // Greedy order: most bound positions first, then smallest estimate.
  std::vector<bool> bound(width_, false);
  for (std::size_t v = 0; v < width_; ++v) bound[v] = in.front()[v] != kUnbound;
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    int best_bound = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      int b = 0;
      for (int k = 0; k < 3; ++k) b += (vars[i][k] < 0 || bound[vars[i][k]]) ? 1 : 0;
      if (b > best_bound || (b == best_bound && estimate[i] < estimate[best])) {
        best = i;
        best_bound = b;
      }
    }
    used[best] = true;
    order.push_back(best);
    for (int k = 0; k < 3; ++k)
      if (vars[best][k] >= 0) bound[vars[best][k]] = true;
  }

  Rows out;
  const TripleTable& table = *scope.table;
  std::function<void(std::size_t, Row&)> step = [&](std::size_t depth, Row& row) {
    if (depth == n) {
      out.push_back(row);
      return;
    }
    std::size_t i = order[depth];
    TermId key[3];
    for (int k = 0; k < 3; ++k) key[k] = vars[i][k] >= 0 ? row[vars[i][k]] : cids[i][k];
    table.match(key[0], key[1], key[2], [&](TermId s, TermId p, TermId o) {
      TermId got[3] = {s, p, o};
      VarId newly[3];
      int count = 0;
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k) {
        VarId v = vars[i][k];
        if (v < 0) continue;
        if (row[v] == kUnbound) {
          row[v] = got[k];
          newly[count++] = v;
        } else if (row[v] != got[k]) {
          ok = false;
        }
      }
      if (ok) step(depth + 1, row);
      for (int k = 0; k < count; ++k) row[newly[k]] = kUnbound;
      return true;
    });
  };
  for (auto& row : in) step(0, row);
  return out;
}

Rows Evaluator::eval_graph(const Element& el, Rows in) {
  const Group& inner = *el.groups.front();
  if (!el.graph.is_var()) {
    TermId g = const_id(el.graph);
    return eval_group(inner, std::move(in), Scope{g ? ds_.graph(g) : nullptr});
  }
  VarId gv = el.graph.var;
  Rows out;
  for (TermId g : ds_.graph_names()) {
    Rows part;
    for (const auto& row : in) {
      if (row[gv] != kUnbound && row[gv] != g) continue;
      part.push_back(row);
      part.back()[gv] = g;
    }
    if (part.empty()) continue;
    Rows res = eval_group(inner, std::move(part), Scope{ds_.graph(g)});
    std::move(res.begin(), res.end(), std::back_inserter(out));
  }
  return out;
}

const Rows& Evaluator::seeded(const Group& g, const Row& row, Scope scope) {
  auto& [vars, cache] = memo_[{&g, scope.table}];
  if (vars.empty()) {
    std::set<VarId> s;
    collect_vars(g, s);
    vars.assign(s.begin(), s.end());
    if (vars.empty()) vars.push_back(-1);
  }
  Row key;
  key.reserve(vars.size());
  for (VarId v : vars) key.push_back(v >= 0 ? row[v] : 0);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Row seed(width_, kUnbound);
  for (VarId v : vars)
    if (v >= 0) seed[v] = row[v];
  Rows res = eval_group(g, Rows{seed}, scope);
  return cache.emplace(std::move(key), std::move(res)).first->second;
}

Rows Evaluator::left_join(const Group& g, Rows in, Scope scope) {
  Rows out;
  out.reserve(in.size());
  for (auto& row : in) {
    const Rows& ext = seeded(g, row, scope);
    if (ext.empty()) {
      out.push_back(std::move(row));
      continue;
    }
    for (const auto& e : ext) {
      Row merged = row;
      for (std::size_t v = 0; v < width_; ++v)
        if (merged[v] == kUnbound) merged[v] = e[v];
      out.push_back(std::move(merged));
    }
  }
  return out;
}

Rows Evaluator::minus(const Group& g, Rows in, Scope scope) {
  Rows rhs = eval_group(g, Rows{Row(width_, kUnbound)}, scope);
  Rows out;
  for (auto& row : in) {
    bool removed = false;
    for (const auto& r : rhs) {
      bool shared = false, compatible = true;
      for (std::size_t v = 0; v < width_ && compatible; ++v) {
        if (row[v] == kUnbound || r[v] == kUnbound) continue;
        shared = true;
        compatible = row[v] == r[v];
      }
      if (shared && compatible) {
        removed = true;
        break;
      }
    }
    if (!removed) out.push_back(std::move(row));
  }
  return out;
}

Rows Evaluator::join_values(const InlineData& d, Rows in) {
  std::vector<std::vector<TermId>> data;
  for (const auto& r : d.rows) {
    std::vector<TermId> ids;
    for (const auto& t : r) ids.push_back(t ? intern(*t) : kUnbound);
    data.push_back(std::move(ids));
  }
  Rows out;
  for (const auto& row : in) {
    for (const auto& ids : data) {
      Row merged = row;
      bool ok = true;
      for (std::size_t k = 0; k < d.vars.size() && ok; ++k) {
        if (ids[k] == kUnbound) continue;
        TermId& slot = merged[d.vars[k]];
        if (slot == kUnbound) slot = ids[k];
        else ok = slot == ids[k];
      }
      if (ok) out.push_back(std::move(merged));
    }
  }
  return out;
}

Val Evaluator::eval(const Expr& e, const Row& row, const std::vector<Val>* aggs) {
  switch (e.kind) {
    case Expr::Kind::Var:
      if (row[e.var] == kUnbound) return std::nullopt;
      return term(row[e.var]);
    case Expr::Kind::Const: return e.constant;
    case Expr::Kind::Not: {
      auto b = ebv(eval(*e.args[0], row, aggs));
      if (!b) return std::nullopt;
      return bool_term(!*b);
    }
    case Expr::Kind::Neg: {
      auto n = as_num(eval(*e.args[0], row, aggs));
      if (!n) return std::nullopt;
      n->v = -n->v;
      return num_term(*n);
    }
    case Expr::Kind::Binary: {
      const std::string& op = e.name;
      if (op == "&&" || op == "||") {
        auto a = ebv(eval(*e.args[0], row, aggs));
        auto b = ebv(eval(*e.args[1], row, aggs));
        bool is_and = op == "&&";
        if (a && b) return bool_term(is_and ? (*a && *b) : (*a || *b));
        // Error propagation per the three-valued logic tables.
        if (is_and && ((a && !*a) || (b && !*b))) return bool_term(false);
        if (!is_and && ((a && *a) || (b && *b))) return bool_term(true);
        return std::nullopt;
      }
      Val a = eval(*e.args[0], row, aggs);
      Val b = eval(*e.args[1], row, aggs);
      if (op == "+" || op == "-" || op == "*" || op == "/") return arith(op, a, b);
      return compare(op, a, b);
    }
    case Expr::Kind::In: {
      Val a = eval(*e.args[0], row, aggs);
      if (!a) return std::nullopt;
      bool found = false;
      for (std::size_t i = 1; i < e.args.size() && !found; ++i) {
        auto r = ebv(compare("=", a, eval(*e.args[i], row, aggs)));
        found = r.value_or(false);
      }
      return bool_term(e.negated ? !found : found);
    }
    case Expr::Kind::Aggregate:
      if (!aggs) throw Error(ErrorCode::QueryFailure, "aggregate outside a grouped query");
      return (*aggs)[e.agg_index];
    case Expr::Kind::Exists: {
      bool any = !seeded(*e.pattern, row, scope_).empty();
      return bool_term(e.negated ? !any : any);
    }
    case Expr::Kind::Call: return call(e, row, aggs);
  }
  return std::nullopt;
}

Val Evaluator::cast(const std::string& dt, const Val& v) {
  if (!v) return std::nullopt;
  if (dt == xsd::kString) return simple(v->value);
  if (v->is_iri()) return std::nullopt;
  auto n = as_num(v);
  bool plain = is_stringish(*v);
  if (dt == xsd::kBoolean) {
    if (n) return bool_term(n->v != 0);
    if (v->datatype == xsd::kBoolean) return *v;
    if (plain && (v->value == "true" || v->value == "1")) return bool_term(true);
    if (plain && (v->value == "false" || v->value == "0")) return bool_term(false);
    return std::nullopt;
  }
  int rank = numeric_rank(dt);
  if (rank < 0) return std::nullopt;
  if (!n) {
    if (v->datatype == xsd::kBoolean) {
      n = Num{v->value == "true" ? 1.0 : 0.0, 0};
    } else if (plain) {
      if (rank <= 1) {
        auto canon = rank == 0 ? canonical_integer(v->value) : canonical_decimal(v->value);
        if (!canon) return std::nullopt;
        return Term::literal(*canon, dt);
      }
      double d;
      if (!parse_double(v->value, d)) return std::nullopt;
      n = Num{d, rank};
    } else {
      return std::nullopt;
    }
  }
  if (rank <= 1 && !std::isfinite(n->v)) return std::nullopt;
  Num r{rank == 0 ? std::trunc(n->v) : n->v, rank};
  if (rank <= 1 && n->rank <= 1 && v->datatype == dt) return *v;
  return num_term(r);
}

Val Evaluator::call(const Expr& e, const Row& row, const std::vector<Val>* aggs) {
  const std::string& f = e.name;
  auto arg = [&](std::size_t i) -> Val {
    if (i >= e.args.size()) throw Error(ErrorCode::QueryFailure, f + ": missing argument");
    return eval(*e.args[i], row, aggs);
  };
  auto need = [&](std::size_t k) {
    if (e.args.size() != k) throw Error(ErrorCode::QueryFailure, f + " expects " + std::to_string(k) + " arguments");
  };

  if (f == "BOUND") {
    need(1);
    if (e.args[0]->kind != Expr::Kind::Var) throw Error(ErrorCode::QueryFailure, "BOUND needs a variable");
    return bool_term(row[e.args[0]->var] != kUnbound);
  }
  if (f == "IF") {
    need(3);
    auto c = ebv(arg(0));
    if (!c) return std::nullopt;
    return *c ? arg(1) : arg(2);
  }
  if (f == "COALESCE") {
    for (std::size_t i = 0; i < e.args.size(); ++i)
      if (Val v = arg(i)) return v;
    return std::nullopt;
  }
  if (f.starts_with(kXsd)) {
    need(1);
    return cast(f, arg(0));
  }

  std::vector<Val> a;
  for (std::size_t i = 0; i < e.args.size(); ++i) a.push_back(arg(i));
  auto lit = [&](std::size_t i) -> const Term* {
    return a[i] && a[i]->is_literal() ? &*a[i] : nullptr;
  };
  auto strarg = [&](std::size_t i) -> const Term* {
    const Term* t = lit(i);
    return t && (is_stringish(*t) || !t->lang.empty()) ? t : nullptr;
  };

  if (f == "STR") {
    need(1);
    if (!a[0]) return std::nullopt;
    return simple(a[0]->value);
  }
  if (f == "LANG") {
    need(1);
    if (!lit(0)) return std::nullopt;
    return simple(a[0]->lang);
  }
  if (f == "DATATYPE") {
    need(1);
    if (!lit(0)) return std::nullopt;
    return Term::iri(a[0]->effective_datatype());
  }
  if (f == "IRI" || f == "URI") {
    need(1);
    if (!a[0]) return std::nullopt;
    return Term::iri(a[0]->value);
  }
  if (f == "ISIRI" || f == "ISURI") return a.size() == 1 && a[0] ? Val(bool_term(a[0]->is_iri())) : std::nullopt;
  if (f == "ISLITERAL") return a.size() == 1 && a[0] ? Val(bool_term(a[0]->is_literal())) : std::nullopt;
  if (f == "ISBLANK") return a.size() == 1 && a[0] ? Val(bool_term(false)) : std::nullopt;
  if (f == "ISNUMERIC") return a.size() == 1 && a[0] ? Val(bool_term(as_num(a[0]).has_value())) : std::nullopt;
  if (f == "SAMETERM") {
    need(2);
    if (!a[0] || !a[1]) return std::nullopt;
    return bool_term(*a[0] == *a[1]);
  }
  if (f == "STRLEN") {
    need(1);
    if (!strarg(0)) return std::nullopt;
    return Term::literal(std::to_string(text::to_u32(a[0]->value).size()), std::string(xsd::kInteger));
  }
  if (f == "UCASE" || f == "LCASE") {
    need(1);
    if (!strarg(0)) return std::nullopt;
    return like(*a[0], ascii_case(a[0]->value, f == "UCASE"));
  }
  if (f == "STRSTARTS" || f == "STRENDS" || f == "CONTAINS" || f == "STRBEFORE" || f == "STRAFTER") {
    need(2);
    if (!strarg(0) || !strarg(1)) return std::nullopt;
    const std::string& s = a[0]->value;
    const std::string& t = a[1]->value;
    if (f == "STRSTARTS") return bool_term(s.starts_with(t));
    if (f == "STRENDS") return bool_term(s.ends_with(t));
    if (f == "CONTAINS") return bool_term(s.find(t) != std::string::npos);
    auto pos = s.find(t);
    if (pos == std::string::npos) return simple("");
    return like(*a[0], f == "STRBEFORE" ? s.substr(0, pos) : s.substr(pos + t.size()));
  }
  if (f == "CONCAT") {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!strarg(i)) return std::nullopt;
      out += a[i]->value;
    }
    return simple(out);
  }
  if (f == "SUBSTR") {
    if (a.size() < 2 || a.size() > 3 || !strarg(0)) return std::nullopt;
    auto start = as_num(a[1]);
    if (!start) return std::nullopt;
    std::u32string u = text::to_u32(a[0]->value);
    long long from = std::llround(start->v) - 1;
    long long len = static_cast<long long>(u.size());
    if (a.size() == 3) {
      auto l = as_num(a[2]);
      if (!l) return std::nullopt;
      len = std::llround(l->v);
    }
    long long end = std::min<long long>(static_cast<long long>(u.size()), from + len);
    from = std::max<long long>(0, from);
    std::string out;
    for (long long i = from; i < end; ++i) {
      char32_t c = u[static_cast<std::size_t>(i)];
      // UTF-8 encode
      if (c < 0x80) out.push_back(static_cast<char>(c));
      else if (c < 0x800) out += {static_cast<char>(0xC0 | (c >> 6)), static_cast<char>(0x80 | (c & 0x3F))};
      else if (c < 0x10000)
        out += {static_cast<char>(0xE0 | (c >> 12)), static_cast<char>(0x80 | ((c >> 6) & 0x3F)),
                static_cast<char>(0x80 | (c & 0x3F))};
      else
        out += {static_cast<char>(0xF0 | (c >> 18)), static_cast<char>(0x80 | ((c >> 12) & 0x3F)),
                static_cast<char>(0x80 | ((c >> 6) & 0x3F)), static_cast<char>(0x80 | (c & 0x3F))};
    }
    return like(*a[0], out);
  }
  if (f == "REGEX" || f == "REPLACE") {
    std::size_t nargs = f == "REGEX" ? 2 : 3;
    if (a.size() < nargs || a.size() > nargs + 1 || !strarg(0)) return std::nullopt;
    for (std::size_t i = 1; i < a.size(); ++i)
      if (!lit(i)) return std::nullopt;
    std::string flags = a.size() > nargs ? a[nargs]->value : "";
    std::string key = flags + "/" + a[1]->value;
    auto it = regex_cache_.find(key);
    if (it == regex_cache_.end()) it = regex_cache_.emplace(key, make_regex(a[1]->value, flags)).first;
    if (f == "REGEX") return bool_term(std::regex_search(a[0]->value, it->second));
    return like(*a[0], std::regex_replace(a[0]->value, it->second, a[2]->value));
  }
  if (f == "LANGMATCHES") {
    need(2);
    if (!lit(0) || !lit(1)) return std::nullopt;
    std::string tag = ascii_case(a[0]->value, false), range = ascii_case(a[1]->value, false);
    if (range == "*") return bool_term(!tag.empty());
    return bool_term(tag == range || tag.starts_with(range + "-"));
  }
  if (f == "STRDT") {
    need(2);
    if (!strarg(0) || !a[1] || !a[1]->is_iri()) return std::nullopt;
    return Term::literal(a[0]->value, a[1]->value);
  }
  if (f == "STRLANG") {
    need(2);
    if (!strarg(0) || !strarg(1)) return std::nullopt;
    return Term::literal(a[0]->value, {}, a[1]->value);
  }
  if (f == "ABS" || f == "CEIL" || f == "FLOOR" || f == "ROUND") {
    need(1);
    auto n = as_num(a[0]);
    if (!n) return std::nullopt;
    if (f == "ABS") n->v = std::fabs(n->v);
    else if (f == "CEIL") n->v = std::ceil(n->v);
    else if (f == "FLOOR") n->v = std::floor(n->v);
    else n->v = std::floor(n->v + 0.5);
    return num_term(*n);
  }
  throw Error(ErrorCode::QueryFailure, "unsupported function " + f);
}

std::vector<Val> Evaluator::aggregate(const std::vector<const Row*>& rows) {
  std::vector<Val> out;
  out.reserve(q_.aggregates.size());
  for (const auto& ap : q_.aggregates) {
    const Expr& e = *ap;
    if (e.agg == AggFunc::Count && e.star) {
      if (!e.distinct) {
        out.push_back(Term::literal(std::to_string(rows.size()), std::string(xsd::kInteger)));
      } else {
        std::set<Row> distinct;
        for (const Row* r : rows) distinct.insert(*r);
        out.push_back(Term::literal(std::to_string(distinct.size()), std::string(xsd::kInteger)));
      }
      continue;
    }
    std::vector<Term> values;
    bool error = false;
    std::set<std::string> seen;
    for (const Row* r : rows) {
      Val v = eval(*e.args[0], *r, nullptr);
      if (!v) {
        error = true;
        continue;
      }
      if (e.distinct && !seen.insert(v->nt()).second) continue;
      values.push_back(std::move(*v));
    }
    switch (e.agg) {
      case AggFunc::Count:
        out.push_back(Term::literal(std::to_string(values.size()), std::string(xsd::kInteger)));
        break;
      case AggFunc::Sum:
      case AggFunc::Avg: {
        Num acc{0, 0};
        bool ok = !error || e.agg == AggFunc::Avg ? true : true;
        for (const auto& v : values) {
          auto n = as_num(v);
          if (!n) {
            ok = false;
            break;
          }
          acc.v += n->v;
          acc.rank = std::max(acc.rank, n->rank);
        }
        if (!ok || error) {
          out.emplace_back(std::nullopt);
          break;
        }
        if (e.agg == AggFunc::Avg) {
          if (values.empty()) {
            out.push_back(Term::literal("0", std::string(xsd::kInteger)));
            break;
          }
          acc.v /= static_cast<double>(values.size());
          acc.rank = std::max(acc.rank, 1);
        }
        out.push_back(num_term(acc));
        break;
      }
      case AggFunc::Min:
      case AggFunc::Max:
      case AggFunc::Sample: {
        Val best;
        for (const auto& v : values) {
          if (!best) {
            best = v;
            continue;
          }
          int c = order_cmp(v, best);
          if (e.agg == AggFunc::Max ? c > 0 : c < 0) best = v;
        }
        out.push_back(best);
        break;
      }
      case AggFunc::GroupConcat: {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
          if (i) s += e.separator;
          s += values[i].value;
        }
        out.push_back(simple(s));
        break;
      }
    }
  }
  return out;
}

ResultTable Evaluator::run() {
  Rows seed;
  if (q_.values) {
    seed = join_values(*q_.values, Rows{Row(width_, kUnbound)});
  } else {
    seed.push_back(Row(width_, kUnbound));
  }
  Rows rows = eval_group(*q_.where, std::move(seed), Scope{&ds_.default_graph()});

  // Output variables.
  std::vector<VarId> out_vars;
  if (q_.select_star) {
    std::set<VarId> vs;
    collect_vars(*q_.where, vs);
    out_vars.assign(vs.begin(), vs.end());
  } else {
    for (const auto& p : q_.projections) out_vars.push_back(p.var);
  }

  // Solution rows plus (for grouped queries) the aggregate values of each.
  Rows final_rows;
  std::vector<std::vector<Val>> final_aggs;
  if (q_.is_aggregate()) {
    std::unordered_map<Row, std::size_t, RowHash> index;
    std::vector<Row> keys;
    std::vector<std::vector<const Row*>> members;
    for (const auto& r : rows) {
      Row key;
      for (const auto& g : q_.group_by) {
        Val v = eval(*g, r, nullptr);
        key.push_back(v ? intern(*v) : kUnbound);
      }
      auto [it, fresh] = index.emplace(key, keys.size());
      if (fresh) {
        keys.push_back(key);
        members.emplace_back();
      }
      members[it->second].push_back(&r);
    }
    if (keys.empty() && q_.group_by.empty()) {
      keys.emplace_back();
      members.emplace_back();
    }
    for (std::size_t gi = 0; gi < keys.size(); ++gi) {
      std::vector<Val> aggs = aggregate(members[gi]);
      Row row(width_, kUnbound);
      // Only grouping variables are visible after aggregation.
      for (std::size_t k = 0; k < q_.group_by.size(); ++k) {
        const Expr& g = *q_.group_by[k];
        if (g.kind == Expr::Kind::Var) row[g.var] = keys[gi][k];
        if (q_.group_by_alias[k] >= 0) row[q_.group_by_alias[k]] = keys[gi][k];
      }
      bool keep = true;
      for (const auto& h : q_.having)
        if (!ebv(eval(*h, row, &aggs)).value_or(false)) {
          keep = false;
          break;
        }
      if (!keep) continue;
      for (const auto& p : q_.projections)
        if (p.expr) {
          Val v = eval(*p.expr, row, &aggs);
          row[p.var] = v ? intern(*v) : kUnbound;
        }
      final_rows.push_back(std::move(row));
      final_aggs.push_back(std::move(aggs));
    }
  } else {
    for (auto& row : rows) {
      for (const auto& p : q_.projections)
        if (p.expr) {
          Val v = eval(*p.expr, row, nullptr);
          row[p.var] = v ? intern(*v) : kUnbound;
        }
    }
    final_rows = std::move(rows);
  }

  std::vector<std::size_t> perm(final_rows.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  if (!q_.order_by.empty()) {
    std::vector<std::vector<Val>> keys(final_rows.size());
    for (std::size_t i = 0; i < final_rows.size(); ++i)
      for (const auto& k : q_.order_by)
        keys[i].push_back(eval(*k.expr, final_rows[i], final_aggs.empty() ? nullptr : &final_aggs[i]));
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
      for (std::size_t k = 0; k < q_.order_by.size(); ++k) {
        int c = order_cmp(keys[x][k], keys[y][k]);
        if (c != 0) return q_.order_by[k].descending ? c > 0 : c < 0;
      }
      return false;
    });
  }

  ResultTable out;
  for (VarId v : out_vars) out.vars.push_back(q_.var_names[v]);
  std::set<Row> distinct;
  std::size_t skipped = 0;
  for (std::size_t i : perm) {
    Row projected;
    for (VarId v : out_vars) projected.push_back(final_rows[i][v]);
    if (q_.distinct && !distinct.insert(projected).second) continue;
    if (skipped < q_.offset) {
      ++skipped;
      continue;
    }
    if (q_.limit && out.rows.size() >= *q_.limit) break;
    std::vector<std::optional<Term>> cells;
    for (TermId id : projected) cells.push_back(id == kUnbound ? std::nullopt : std::optional<Term>(term(id)));
    out.rows.push_back(std::move(cells));
  }
  return out;
}

}  // namespace

ResultTable execute(const Dataset& dataset, const Query& query) {
  Evaluator ev(dataset, query);
  return ev.run();
}

ResultTable execute(const Dataset& dataset, std::string_view query_text) {
  Query q = parse_query(query_text);
  return execute(dataset, q);
}

}  // namespace mskg::sparql
