#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mskg/rdf.hpp"

namespace mskg::sparql {

using VarId = int;

// A triple-pattern position: variable or constant term.
struct PatternTerm {
  VarId var = -1;  // >= 0 for variables
  Term term;       // constants
  bool is_var() const { return var >= 0; }
};

struct TriplePattern {
  PatternTerm s, p, o;
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;
struct Group;
using GroupPtr = std::shared_ptr<Group>;

enum class AggFunc { Count, Sum, Avg, Min, Max, Sample, GroupConcat };

struct Expr {
  enum class Kind { Var, Const, Call, Not, Neg, Binary, In, Aggregate, Exists };
  Kind kind = Kind::Const;
  VarId var = -1;
  Term constant;
  std::string name;  // function name (upper-case builtin or full IRI) / binary operator
  std::vector<ExprPtr> args;
  bool negated = false;  // NOT IN / NOT EXISTS
  // Aggregates
  AggFunc agg = AggFunc::Count;
  bool distinct = false;
  bool star = false;
  std::string separator = " ";
  int agg_index = -1;
  GroupPtr pattern;  // EXISTS
};

struct InlineData {
  std::vector<VarId> vars;
  std::vector<std::vector<std::optional<Term>>> rows;  // nullopt == UNDEF
};

struct Element {
  enum class Kind { Triples, Optional, Union, Minus, Graph, Filter, Bind, Values, Group };
  Kind kind = Kind::Triples;
  std::vector<TriplePattern> triples;
  std::vector<GroupPtr> groups;  // Optional/Minus/Graph/Group: one; Union: two or more
  PatternTerm graph;
  ExprPtr expr;
  VarId bind_var = -1;
  InlineData values;
};

struct Group {
  std::vector<Element> elements;
};

struct Projection {
  VarId var = -1;
  ExprPtr expr;  // null for plain variables
};

struct OrderKey {
  ExprPtr expr;
  bool descending = false;
};

struct Query {
  std::map<std::string, std::string> prefixes;
  std::vector<std::string> var_names;  // VarId -> name
  bool distinct = false;
  bool select_star = false;
  std::vector<Projection> projections;
  GroupPtr where;
  std::vector<ExprPtr> group_by;
  std::vector<VarId> group_by_alias;  // -1 when the condition has no AS
  std::vector<ExprPtr> having;
  std::vector<OrderKey> order_by;
  std::optional<std::size_t> limit;
  std::size_t offset = 0;
  std::optional<InlineData> values;
  std::vector<ExprPtr> aggregates;  // every aggregate node, indexed by agg_index

  bool is_aggregate() const { return !group_by.empty() || !aggregates.empty(); }
  VarId var(const std::string& name);
};

// Throws Error(ParseError).
Query parse_query(std::string_view text);

}  // namespace mskg::sparql
