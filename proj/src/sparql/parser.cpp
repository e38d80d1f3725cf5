#include <algorithm>
#include <cctype>
#include <set>

#include "mskg/error.hpp"
#include "mskg/sparql/ast.hpp"
#include "mskg/term.hpp"
#include "mskg/text.hpp"

namespace mskg::sparql {

VarId Query::var(const std::string& name) {
  auto it = std::find(var_names.begin(), var_names.end(), name);
  if (it != var_names.end()) return static_cast<VarId>(it - var_names.begin());
  var_names.push_back(name);
  return static_cast<VarId>(var_names.size() - 1);
}

namespace {

enum class Tok { Iri, PName, Var, String, Integer, Decimal, Double, LangTag, Word, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

bool is_iri_char(char c) {
  return !(static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
           c == '^' || c == '`' || c == '\\');
}

bool pn_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= s_.size()) break;
      out.push_back(next());
    }
    out.push_back(Token{Tok::End, "", s_.size()});
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, "SPARQL: " + why + " at offset " + std::to_string(i_));
  }

  void skip_space() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  Token next() {
    std::size_t start = i_;
    char c = s_[i_];
    if (c == '<') {
      std::size_t j = i_ + 1;
      while (j < s_.size() && is_iri_char(s_[j]) && s_[j] != '>') ++j;
      if (j < s_.size() && s_[j] == '>') {
        Token t{Tok::Iri, std::string(s_.substr(i_ + 1, j - i_ - 1)), start};
        i_ = j + 1;
        return t;
      }
    }
    if (c == '?' || c == '$') {
      std::size_t j = i_ + 1;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      if (j == i_ + 1) fail("empty variable name");
      Token t{Tok::Var, std::string(s_.substr(i_ + 1, j - i_ - 1)), start};
      i_ = j;
      return t;
    }
    if (c == '"' || c == '\'') return string_token(c);
    if (c == '@') {
      std::size_t j = i_ + 1;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '-')) ++j;
      Token t{Tok::LangTag, std::string(s_.substr(i_ + 1, j - i_ - 1)), start};
      i_ = j;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))))
      return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':') return word();
    static const char* kMulti[] = {"&&", "||", "!=", "<=", ">=", "^^"};
    for (const char* m : kMulti)
      if (s_.substr(i_, 2) == m) {
        i_ += 2;
        return Token{Tok::Punct, m, start};
      }
    if (std::string_view("{}().;,*=<>!+-/[]").find(c) != std::string_view::npos) {
      ++i_;
      return Token{Tok::Punct, std::string(1, c), start};
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Token string_token(char quote) {
    std::size_t start = i_;
    bool long_form = s_.substr(i_, 3) == std::string(3, quote);
    i_ += long_form ? 3 : 1;
    std::string out;
    while (true) {
      if (i_ >= s_.size()) fail("unterminated string");
      char c = s_[i_];
      if (long_form ? s_.substr(i_, 3) == std::string(3, quote) : c == quote) {
        i_ += long_form ? 3 : 1;
        break;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("newline in string");
      if (c == '\\') {
        if (++i_ >= s_.size()) fail("dangling escape");
        switch (s_[i_]) {
          case 't': out.push_back('\t'); break;
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 'b': out.push_back('\b'); break;
          case 'f': out.push_back('\f'); break;
          case '"': out.push_back('"'); break;
          case '\'': out.push_back('\''); break;
          case '\\': out.push_back('\\'); break;
          default: fail("unknown escape");
        }
        ++i_;
        continue;
      }
      out.push_back(c);
      ++i_;
    }
    return Token{Tok::String, out, start};
  }

  Token number() {
    std::size_t start = i_;
    Tok kind = Tok::Integer;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ + 1 < s_.size() && s_[i_] == '.' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
      kind = Tok::Decimal;
      ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
      if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        kind = Tok::Double;
        i_ = j;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
    }
    return Token{kind, std::string(s_.substr(start, i_ - start)), start};
  }

  Token word() {
    std::size_t start = i_;
    while (i_ < s_.size() && (pn_char(s_[i_]) && s_[i_] != '.')) ++i_;
    if (i_ < s_.size() && s_[i_] == ':') {
      ++i_;
      while (i_ < s_.size() && (pn_char(s_[i_]) || s_[i_] == ':' || s_[i_] == '%')) ++i_;
      while (s_[i_ - 1] == '.') --i_;  // a trailing '.' ends the statement
      return Token{Tok::PName, std::string(s_.substr(start, i_ - start)), start};
    }
    return Token{Tok::Word, std::string(s_.substr(start, i_ - start)), start};
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

const std::set<std::string> kBuiltins = {
    "STR",     "LANG",     "LANGMATCHES", "DATATYPE",  "BOUND",    "IRI",       "URI",      "ABS",
    "CEIL",    "FLOOR",    "ROUND",       "CONCAT",    "STRLEN",   "UCASE",     "LCASE",    "CONTAINS",
    "STRSTARTS", "STRENDS", "STRBEFORE",  "STRAFTER",  "REGEX",    "ISIRI",     "ISURI",    "ISLITERAL",
    "ISBLANK", "ISNUMERIC", "IF",         "COALESCE",  "SAMETERM", "SUBSTR",    "REPLACE",  "STRDT",
    "STRLANG"};

const std::map<std::string, AggFunc> kAggregates = {
    {"COUNT", AggFunc::Count}, {"SUM", AggFunc::Sum},       {"AVG", AggFunc::Avg},
    {"MIN", AggFunc::Min},     {"MAX", AggFunc::Max},       {"SAMPLE", AggFunc::Sample},
    {"GROUP_CONCAT", AggFunc::GroupConcat}};

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  Query run() {
    prologue();
    expect_word("SELECT");
    select_clause();
    if (is_word("WHERE")) ++i_;
    q_.where = group();
    modifiers();
    if (is_word("VALUES")) {
      ++i_;
      q_.values = inline_data();
    }
    if (peek().kind != Tok::End) fail("unexpected trailing input");
    return std::move(q_);
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    const Token& t = toks_[std::min(i_, toks_.size() - 1)];
    throw Error(ErrorCode::ParseError, "SPARQL: " + why + " near '" + t.text + "' at offset " + std::to_string(t.pos));
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  bool is_punct(const char* p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool is_word(const char* w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Word && upper(peek(ahead).text) == w;
  }
  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'");
    ++i_;
  }
  void expect_word(const char* w) {
    if (!is_word(w)) fail(std::string("expected ") + w);
    ++i_;
  }

  void prologue() {
    while (true) {
      if (is_word("PREFIX")) {
        ++i_;
        if (peek().kind != Tok::PName || peek().text.back() != ':') fail("expected prefix name");
        std::string p = peek().text.substr(0, peek().text.size() - 1);
        ++i_;
        if (peek().kind != Tok::Iri) fail("expected namespace IRI");
        q_.prefixes[p] = peek().text;
        ++i_;
      } else if (is_word("BASE")) {
        fail("BASE is not supported");
      } else {
        return;
      }
    }
  }

  std::string expand_pname(const std::string& pname) {
    auto colon = pname.find(':');
    std::string prefix = pname.substr(0, colon);
    auto it = q_.prefixes.find(prefix);
    if (it == q_.prefixes.end()) fail("undeclared prefix '" + prefix + "'");
    return it->second + text::percent_unescape(pname.substr(colon + 1));
  }

  void select_clause() {
    if (is_word("DISTINCT")) {
      q_.distinct = true;
      ++i_;
    } else if (is_word("REDUCED")) {
      ++i_;
    }
    if (is_punct("*")) {
      q_.select_star = true;
      ++i_;
      return;
    }
    while (true) {
      if (peek().kind == Tok::Var) {
        q_.projections.push_back(Projection{q_.var(peek().text), nullptr});
        ++i_;
      } else if (is_punct("(")) {
        ++i_;
        ExprPtr e = expression();
        expect_word("AS");
        if (peek().kind != Tok::Var) fail("expected variable after AS");
        q_.projections.push_back(Projection{q_.var(peek().text), e});
        ++i_;
        expect_punct(")");
      } else {
        break;
      }
    }
    if (q_.projections.empty()) fail("empty projection");
  }

  void modifiers() {
    if (is_word("GROUP")) {
      ++i_;
      expect_word("BY");
      while (true) {
        if (peek().kind == Tok::Var) {
          q_.group_by.push_back(var_expr(q_.var(peek().text)));
          q_.group_by_alias.push_back(-1);
          ++i_;
        } else if (is_punct("(")) {
          ++i_;
          ExprPtr e = expression();
          VarId alias = -1;
          if (is_word("AS")) {
            ++i_;
            if (peek().kind != Tok::Var) fail("expected variable after AS");
            alias = q_.var(peek().text);
            ++i_;
          }
          expect_punct(")");
          q_.group_by.push_back(e);
          q_.group_by_alias.push_back(alias);
        } else if (call_ahead()) {
          q_.group_by.push_back(primary());
          q_.group_by_alias.push_back(-1);
        } else {
          break;
        }
      }
      if (q_.group_by.empty()) fail("empty GROUP BY");
    }
    if (is_word("HAVING")) {
      ++i_;
      while (is_punct("(") || call_ahead()) q_.having.push_back(constraint());
      if (q_.having.empty()) fail("empty HAVING");
    }
    if (is_word("ORDER")) {
      ++i_;
      expect_word("BY");
      while (true) {
        if (is_word("ASC") || is_word("DESC")) {
          bool desc = is_word("DESC");
          ++i_;
          expect_punct("(");
          ExprPtr e = expression();
          expect_punct(")");
          q_.order_by.push_back(OrderKey{e, desc});
        } else if (peek().kind == Tok::Var) {
          q_.order_by.push_back(OrderKey{var_expr(q_.var(peek().text)), false});
          ++i_;
        } else if (is_punct("(") || call_ahead()) {
          q_.order_by.push_back(OrderKey{constraint(), false});
        } else {
          break;
        }
      }
      if (q_.order_by.empty()) fail("empty ORDER BY");
    }
    for (int k = 0; k < 2; ++k) {
      if (is_word("LIMIT")) {
        ++i_;
        if (peek().kind != Tok::Integer) fail("expected integer");
        q_.limit = std::stoul(peek().text);
        ++i_;
      } else if (is_word("OFFSET")) {
        ++i_;
        if (peek().kind != Tok::Integer) fail("expected integer");
        q_.offset = std::stoul(peek().text);
        ++i_;
      }
    }
  }

  // A builtin, aggregate or IRI function call starts here.
  bool call_ahead() const {
    if (peek().kind == Tok::Word) {
      std::string w = upper(peek().text);
      return (kBuiltins.contains(w) || kAggregates.contains(w) || w == "EXISTS" || w == "NOT") &&
             (is_punct("(", 1) || w == "EXISTS" || w == "NOT");
    }
    return (peek().kind == Tok::PName || peek().kind == Tok::Iri) && is_punct("(", 1);
  }

  ExprPtr constraint() {
    if (is_punct("(")) {
      ++i_;
      ExprPtr e = expression();
      expect_punct(")");
      return e;
    }
    if (!call_ahead()) fail("expected constraint");
    return primary();
  }

  GroupPtr group() {
    expect_punct("{");
    auto g = std::make_shared<Group>();
    if (is_word("SELECT")) fail("sub-queries are not supported");
    while (!is_punct("}")) {
      if (peek().kind == Tok::End) fail("unterminated group");
      if (is_punct("{")) {
        GroupPtr first = group();
        if (is_word("UNION")) {
          Element u;
          u.kind = Element::Kind::Union;
          u.groups.push_back(first);
          while (is_word("UNION")) {
            ++i_;
            u.groups.push_back(group());
          }
          g->elements.push_back(std::move(u));
        } else {
          Element e;
          e.kind = Element::Kind::Group;
          e.groups.push_back(first);
          g->elements.push_back(std::move(e));
        }
      } else if (is_word("OPTIONAL") || is_word("MINUS")) {
        Element e;
        e.kind = is_word("OPTIONAL") ? Element::Kind::Optional : Element::Kind::Minus;
        ++i_;
        e.groups.push_back(group());
        g->elements.push_back(std::move(e));
      } else if (is_word("GRAPH")) {
        ++i_;
        Element e;
        e.kind = Element::Kind::Graph;
        e.graph = var_or_term(false);
        e.groups.push_back(group());
        g->elements.push_back(std::move(e));
      } else if (is_word("FILTER")) {
        ++i_;
        Element e;
        e.kind = Element::Kind::Filter;
        e.expr = constraint();
        g->elements.push_back(std::move(e));
      } else if (is_word("BIND")) {
        ++i_;
        expect_punct("(");
        Element e;
        e.kind = Element::Kind::Bind;
        e.expr = expression();
        expect_word("AS");
        if (peek().kind != Tok::Var) fail("expected variable after AS");
        e.bind_var = q_.var(peek().text);
        ++i_;
        expect_punct(")");
        g->elements.push_back(std::move(e));
      } else if (is_word("VALUES")) {
        ++i_;
        Element e;
        e.kind = Element::Kind::Values;
        e.values = inline_data();
        g->elements.push_back(std::move(e));
      } else {
        triples_same_subject(*g);
        if (!is_punct(".") && !is_punct("}") && !block_keyword()) fail("expected '.' or '}'");
      }
      if (is_punct(".")) ++i_;
    }
    ++i_;
    return g;
  }

  bool block_keyword() const {
    return is_word("OPTIONAL") || is_word("MINUS") || is_word("GRAPH") || is_word("FILTER") ||
           is_word("BIND") || is_word("VALUES") || is_punct("{");
  }

  std::vector<TriplePattern>& triples_target(Group& g) {
    for (auto it = g.elements.rbegin(); it != g.elements.rend(); ++it) {
      if (it->kind == Element::Kind::Filter) continue;
      if (it->kind == Element::Kind::Triples) return it->triples;
      break;
    }
    Element e;
    e.kind = Element::Kind::Triples;
    g.elements.push_back(std::move(e));
    return g.elements.back().triples;
  }

  void triples_same_subject(Group& g) {
    PatternTerm s = var_or_term(false);
    if (!s.is_var() && s.term.is_literal()) fail("literal subject");
    auto& out = triples_target(g);
    while (true) {
      PatternTerm p;
      if (is_word("A") && peek().text == "a") {
        ++i_;
        p.term = Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
      } else {
        p = var_or_term(false);
        if (!p.is_var() && !p.term.is_iri()) fail("predicate must be an IRI or variable");
      }
      while (true) {
        out.push_back(TriplePattern{s, p, var_or_term(true)});
        if (!is_punct(",")) break;
        ++i_;
      }
      if (!is_punct(";")) break;
      while (is_punct(";")) ++i_;
      if (is_punct(".") || is_punct("}")) break;
    }
  }

  PatternTerm var_or_term(bool allow_literal) {
    PatternTerm t;
    const Token& k = peek();
    if (k.kind == Tok::Var) {
      t.var = q_.var(k.text);
      ++i_;
      return t;
    }
    if (is_punct("[")) fail("blank nodes are not supported");
    if (k.kind == Tok::Iri || k.kind == Tok::PName) {
      t.term = Term::iri(k.kind == Tok::Iri ? k.text : expand_pname(k.text));
      ++i_;
      return t;
    }
    if (!allow_literal) fail("expected variable or IRI");
    t.term = literal();
    return t;
  }

  Term literal() {
    const Token& k = peek();
    bool neg = false;
    if (is_punct("-") || is_punct("+")) {
      neg = is_punct("-");
      ++i_;
    }
    const Token& n = peek();
    switch (n.kind) {
      case Tok::Integer: ++i_; return Term::literal((neg ? "-" : "") + n.text, std::string(xsd::kInteger));
      case Tok::Decimal: ++i_; return Term::literal((neg ? "-" : "") + n.text, std::string(xsd::kDecimal));
      case Tok::Double: ++i_; return Term::literal((neg ? "-" : "") + n.text, std::string(xsd::kDouble));
      default: break;
    }
    if (neg) fail("expected number");
    if (k.kind == Tok::String) {
      std::string lex = k.text;
      ++i_;
      if (peek().kind == Tok::LangTag) {
        std::string lang = peek().text;
        ++i_;
        return Term::literal(lex, {}, lang);
      }
      if (is_punct("^^")) {
        ++i_;
        const Token& d = peek();
        if (d.kind == Tok::Iri) {
          ++i_;
          return Term::literal(lex, d.text);
        }
        if (d.kind == Tok::PName) {
          ++i_;
          return Term::literal(lex, expand_pname(d.text));
        }
        fail("expected datatype IRI");
      }
      return Term::literal(lex);
    }
    if (k.kind == Tok::Word && (k.text == "true" || k.text == "false")) {
      ++i_;
      return Term::literal(k.text, std::string(xsd::kBoolean));
    }
    fail("expected term");
  }

  InlineData inline_data() {
    InlineData d;
    bool multi = false;
    if (peek().kind == Tok::Var) {
      d.vars.push_back(q_.var(peek().text));
      ++i_;
    } else {
      expect_punct("(");
      multi = true;
      while (peek().kind == Tok::Var) {
        d.vars.push_back(q_.var(peek().text));
        ++i_;
      }
      expect_punct(")");
    }
    expect_punct("{");
    while (!is_punct("}")) {
      std::vector<std::optional<Term>> row;
      if (multi) expect_punct("(");
      for (std::size_t k = 0; k < d.vars.size(); ++k) {
        if (is_word("UNDEF")) {
          ++i_;
          row.emplace_back(std::nullopt);
        } else {
          row.emplace_back(var_or_term(true).term);
        }
      }
      if (multi) expect_punct(")");
      d.rows.push_back(std::move(row));
    }
    ++i_;
    return d;
  }

  // Expressions --------------------------------------------------------

  static ExprPtr var_expr(VarId v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->var = v;
    return e;
  }

  static ExprPtr binary(std::string op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->name = std::move(op);
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  ExprPtr expression() {
    ExprPtr e = conjunction();
    while (is_punct("||")) {
      ++i_;
      e = binary("||", e, conjunction());
    }
    return e;
  }

  ExprPtr conjunction() {
    ExprPtr e = relational();
    while (is_punct("&&")) {
      ++i_;
      e = binary("&&", e, relational());
    }
    return e;
  }

  ExprPtr relational() {
    ExprPtr e = additive();
    static const char* kOps[] = {"=", "!=", "<=", ">=", "<", ">"};
    for (const char* op : kOps)
      if (is_punct(op)) {
        ++i_;
        return binary(op, e, additive());
      }
    bool negated = false;
    if (is_word("NOT") && is_word("IN", 1)) {
      negated = true;
      ++i_;
    }
    if (is_word("IN")) {
      ++i_;
      auto in = std::make_shared<Expr>();
      in->kind = Expr::Kind::In;
      in->negated = negated;
      in->args.push_back(e);
      expect_punct("(");
      while (!is_punct(")")) {
        in->args.push_back(expression());
        if (is_punct(",")) ++i_;
      }
      ++i_;
      return in;
    }
    return e;
  }

  ExprPtr additive() {
    ExprPtr e = multiplicative();
    while (is_punct("+") || is_punct("-")) {
      std::string op = peek().text;
      ++i_;
      e = binary(op, e, multiplicative());
    }
    return e;
  }

  ExprPtr multiplicative() {
    ExprPtr e = unary();
    while (is_punct("*") || is_punct("/")) {
      std::string op = peek().text;
      ++i_;
      e = binary(op, e, unary());
    }
    return e;
  }

  ExprPtr unary() {
    if (is_punct("!")) {
      ++i_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Not;
      e->args.push_back(unary());
      return e;
    }
    if (is_punct("-")) {
      ++i_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Neg;
      e->args.push_back(unary());
      return e;
    }
    if (is_punct("+")) ++i_;
    return primary();
  }

  std::vector<ExprPtr> arg_list() {
    std::vector<ExprPtr> args;
    expect_punct("(");
    while (!is_punct(")")) {
      args.push_back(expression());
      if (is_punct(",")) {
        ++i_;
      } else if (!is_punct(")")) {
        fail("expected ',' or ')'");
      }
    }
    ++i_;
    return args;
  }

  ExprPtr primary() {
    const Token& k = peek();
    if (is_punct("(")) {
      ++i_;
      ExprPtr e = expression();
      expect_punct(")");
      return e;
    }
    if (k.kind == Tok::Var) {
      ++i_;
      return var_expr(q_.var(k.text));
    }
    if (k.kind == Tok::Word) {
      std::string w = upper(k.text);
      if (w == "EXISTS" || (w == "NOT" && is_word("EXISTS", 1))) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Exists;
        e->negated = w == "NOT";
        i_ += w == "NOT" ? 2 : 1;
        e->pattern = group();
        return e;
      }
      if (auto a = kAggregates.find(w); a != kAggregates.end() && is_punct("(", 1)) {
        ++i_;
        return aggregate(a->second);
      }
      if (kBuiltins.contains(w) && is_punct("(", 1)) {
        ++i_;
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Call;
        e->name = w;
        e->args = arg_list();
        return e;
      }
    }
    if ((k.kind == Tok::PName || k.kind == Tok::Iri) && is_punct("(", 1)) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Call;
      e->name = k.kind == Tok::Iri ? k.text : expand_pname(k.text);
      ++i_;
      e->args = arg_list();
      return e;
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Const;
    e->constant = var_or_term(true).term;
    return e;
  }

  ExprPtr aggregate(AggFunc f) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Aggregate;
    e->agg = f;
    expect_punct("(");
    if (is_word("DISTINCT")) {
      e->distinct = true;
      ++i_;
    }
    if (is_punct("*")) {
      if (f != AggFunc::Count) fail("'*' is only allowed in COUNT");
      e->star = true;
      ++i_;
    } else {
      e->args.push_back(expression());
    }
    if (f == AggFunc::GroupConcat && is_punct(";")) {
      ++i_;
      if (!is_word("SEPARATOR")) fail("expected SEPARATOR");
      ++i_;
      expect_punct("=");
      if (peek().kind != Tok::String) fail("expected separator string");
      e->separator = peek().text;
      ++i_;
    }
    expect_punct(")");
    e->agg_index = static_cast<int>(q_.aggregates.size());
    q_.aggregates.push_back(e);
    return e;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Query q_;
};

}  // namespace

Query parse_query(std::string_view text) { return Parser(text).run(); }

}  // namespace mskg::sparql
