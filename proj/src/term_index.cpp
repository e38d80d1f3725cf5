#include "mskg/term_index.hpp"

#include <algorithm>

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

std::string_view to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::Exact: return "Exact";
    case MatchKind::CaseInsensitive: return "CaseInsensitive";
    case MatchKind::SynonymExact: return "SynonymExact";
    case MatchKind::TokenOverlap: return "TokenOverlap";
    case MatchKind::EditDistance: return "EditDistance";
  }
  return "?";
}

namespace {

std::set<std::string> token_set(std::string_view folded) {
  auto toks = text::split_whitespace(folded);
  return {toks.begin(), toks.end()};
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& t : a) inter += b.count(t);
  std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double edit_sim(std::u32string_view a, std::u32string_view b) {
  std::size_t m = std::max(a.size(), b.size());
  if (m == 0) return 0.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

struct PreparedQuery {
  std::string normalized;
  std::string folded;
  std::set<std::string> tokens;
  std::u32string codepoints;
};

PreparedQuery prepare(std::string_view raw) {
  PreparedQuery q;
  q.normalized = text::normalize_label(raw);
  q.folded = text::casefold(q.normalized);
  q.tokens = token_set(q.folded);
  q.codepoints = text::to_u32(q.folded);
  return q;
}

LexicalScore score_entry(const PreparedQuery& q, const TermEntry& e) {
  if (e.label == q.normalized) return {MatchKind::Exact, 1.0};
  if (e.folded[0] == q.folded) return {MatchKind::CaseInsensitive, 1.0};
  for (std::size_t i = 1; i < e.folded.size(); ++i)
    if (e.folded[i] == q.folded) return {MatchKind::SynonymExact, 1.0};
  double best_jaccard = 0.0;
  for (const auto& toks : e.tokens) best_jaccard = std::max(best_jaccard, jaccard(q.tokens, toks));
  if (best_jaccard > 0.0) return {MatchKind::TokenOverlap, best_jaccard};
  double best_edit = 0.0;
  for (const auto& cp : e.codepoints) best_edit = std::max(best_edit, edit_sim(q.codepoints, cp));
  return {MatchKind::EditDistance, best_edit};
}

TermEntry make_entry(OntologyTermRef term, std::string iri, std::string_view label,
                     const std::vector<std::string>& synonyms, std::string_view ontology) {
  TermEntry e;
  e.term = std::move(term);
  e.iri = std::move(iri);
  e.label = text::normalize_label(label);
  for (const auto& s : synonyms) {
    std::string n = text::normalize_label(s);
    if (!n.empty()) e.synonyms.push_back(std::move(n));
  }
  e.ontology = std::string(ontology);
  e.term.label = e.label;
  e.term.source_ontology = e.ontology;
  e.folded.push_back(text::casefold(e.label));
  for (const auto& s : e.synonyms) e.folded.push_back(text::casefold(s));
  for (const auto& f : e.folded) {
    e.tokens.push_back(token_set(f));
    e.codepoints.push_back(text::to_u32(f));
  }
  return e;
}

}  // namespace

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double token_jaccard(std::string_view a, std::string_view b) {
  return jaccard(token_set(text::casefold(a)), token_set(text::casefold(b)));
}

double edit_similarity(std::string_view a, std::string_view b) {
  return edit_sim(text::to_u32(text::casefold(a)), text::to_u32(text::casefold(b)));
}

LexicalScore score_label(std::string_view query, std::string_view label,
                         const std::vector<std::string>& synonyms) {
  PreparedQuery q = prepare(query);
  TermEntry e = make_entry({}, {}, label, synonyms, {});
  return score_entry(q, e);
}

void TermIndex::add(const std::string& iri, std::string_view label,
                    const std::vector<std::string>& synonyms, std::string_view ontology,
                    const NamespaceRegistry& registry) {
  auto term = to_term(iri, registry);
  if (!term) throw Error(ErrorCode::UnknownPrefix, "term IRI outside registry: " + iri);
  std::string full = term ? expand(*term, registry) : iri;
  entries_.push_back(make_entry(*term, std::move(full), label, synonyms, ontology));
}

TermIndex TermIndex::from_tsv(std::string_view content, const NamespaceRegistry& registry,
                              std::set<std::string> ontology_filter) {
  TermIndex index(std::move(ontology_filter));
  std::size_t line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto cols = text::split(line, '\t');
    if (line_no == 1 && cols[0] == "iri") continue;
    if (cols.size() != 4)
      throw Error(ErrorCode::ConfigError,
                  "term index line " + std::to_string(line_no) + ": expected 4 columns");
    std::vector<std::string> synonyms;
    if (!cols[2].empty()) synonyms = text::split(cols[2], '|');
    index.add(cols[0], cols[1], synonyms, cols[3], registry);
  }
  return index;
}

TermIndex TermIndex::load(const std::string& path, const NamespaceRegistry& registry,
                          std::set<std::string> ontology_filter) {
  return from_tsv(text::read_file(path), registry, std::move(ontology_filter));
}

std::vector<MatchCandidate> match_term(std::string_view raw, const TermIndex& index, int k) {
  if (text::trim(raw).empty()) throw Error(ErrorCode::EmptyQuery, "blank query");
  if (k < 1) throw Error(ErrorCode::InvalidSpec, "k must be >= 1");
  PreparedQuery q = prepare(raw);

  struct Scored {
    const TermEntry* entry;
    LexicalScore s;
  };
  std::vector<Scored> scored;
  for (const auto& e : index.entries()) {
    if (!index.filter().empty() && !index.filter().count(e.ontology)) continue;
    LexicalScore s = score_entry(q, e);
    if (s.score <= 0.0) continue;
    scored.push_back({&e, s});
  }
  auto better = [](const Scored& a, const Scored& b) {
    if (a.s.kind != b.s.kind) return a.s.kind < b.s.kind;
    if (a.s.score != b.s.score) return a.s.score > b.s.score;
    return a.entry->iri < b.entry->iri;
  };
  std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);
  std::vector<MatchCandidate> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& s = scored[i];
    out.push_back(MatchCandidate{s.entry->term, s.entry->iri, s.s.score, static_cast<int>(i + 1),
                                 s.s.kind});
  }
  return out;
}

}  // namespace mskg
