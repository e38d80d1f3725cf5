#include "mskg/mapping.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

#include "mskg/emitter.hpp"
#include "mskg/error.hpp"
#include "mskg/solvent.hpp"
#include "mskg/text.hpp"

namespace mskg {

bool MappingDictionary::add(const std::string& column, const std::string& raw, const std::string& iri) {
  auto [it, inserted] = entries_[column].emplace(raw, iri);
  if (!inserted && it->second != iri)
    throw Error(ErrorCode::InvalidSpec, "dictionary conflict for " + column + "=" + raw);
  return inserted;
}

void MappingDictionary::merge(const MappingDictionary& other) {
  for (const auto& [col, m] : other.entries_)
    for (const auto& [raw, iri] : m) add(col, raw, iri);
}

std::size_t MappingDictionary::size() const {
  std::size_t n = 0;
  for (const auto& [col, m] : entries_) n += m.size();
  return n;
}

std::string MappingDictionary::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [col, m] : entries_) {
    auto& o = j[col] = nlohmann::ordered_json::object();
    for (const auto& [raw, iri] : m) o[raw] = iri;
  }
  return j.dump(2) + "\n";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string decimal_text(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, p);
  return canonical_decimal(s).value_or(s);
}

OntologyTermRef chemical_term(const std::string& name, const std::optional<OntologyTermRef>& resolved) {
  if (resolved) return *resolved;
  return OntologyTermRef("MBS", "chemical_" + text::iri_safe(text::to_lower_ascii(name)));
}

struct Subjects {
  NodeSpec* sample;
  NodeSpec* process;
  NodeSpec* organism;

  NodeSpec& pick(RuleSubject s) const {
    switch (s) {
      case RuleSubject::Process: return *process;
      case RuleSubject::Organism: return *organism;
      case RuleSubject::Sample: break;
    }
    return *sample;
  }
};

class RecordMapper {
 public:
  RecordMapper(const SampleRecord& rec, const MappingContext& ctx, MappingDictionary& dict, RunReport& report)
      : rec_(rec), ctx_(ctx), dict_(dict), report_(report) {}

  void column(const ColumnRule& rule, const std::string& raw, const Subjects& subjects) {
    RuleSubject subject = rule.subject;
    if (subject == RuleSubject::Organism &&
        std::find(ctx_.manifest->organism_columns.begin(), ctx_.manifest->organism_columns.end(),
                  rule.column) == ctx_.manifest->organism_columns.end()) {
      warn_once(rule.column, "", "organism-subject column is not part of the organism key; attached to the sample");
      subject = RuleSubject::Sample;
    }
    NodeSpec& target = subjects.pick(subject);
    std::string value = subject == RuleSubject::Organism ? text::normalize_label(raw) : raw;

    if (rule.parser == ValueParser::SolventMixture) return mixture(rule, value, target);
    if (rule.parser == ValueParser::MethodPhrase) return method_phrase(rule, value, target);
    if (rule.strategy == Strategy::Mapped) return mapped(rule, value, target);
    reused(rule, value, target);
  }

 private:
  void warn_once(const std::string& column, const std::string& raw, const std::string& message) {
    if (warned_.insert({column, raw}).second)
      report_.warn("metadata", column + (raw.empty() ? "" : "=" + raw), message);
  }

  std::string iri_of(const NodeSpec& spec) const {
    return node_iri(spec, EmitOptions{ctx_.registry, ctx_.global_prefix});
  }

  void record(const ColumnRule& rule, const std::string& raw, const NodeSpec& spec) {
    dict_.add(rule.column, raw, iri_of(spec));
  }

  void reused(const ColumnRule& rule, const std::string& raw, NodeSpec& target) {
    if (rule.reuse_term) {
      std::string label;
      if (auto term = parse_term_cell(raw, rule, *ctx_.registry, &label)) {
        if (rule.as_type) {
          if (std::find(target.types.begin(), target.types.end(), *term) == target.types.end())
            target.types.push_back(*term);
          if (!label.empty() && !target.label) target.label = label;
        } else {
          target.edge(rule.predicate, IriRef{expand(*term, *ctx_.registry)});
        }
        return;
      }
      warn_once(rule.column, raw, "no ontology id in cell; kept as literal");
      target.edge(rule.predicate, string_literal(raw));
      return;
    }
    TypedLiteral lit = literal_for(rule, raw);
    if (rule.target_class)
      target.edge(rule.predicate, NodeSpec::value_node({*rule.target_class}, std::move(lit)));
    else
      target.edge(rule.predicate, std::move(lit));
  }

  TypedLiteral literal_for(const ColumnRule& rule, const std::string& raw) {
    if (!rule.datatype) return string_literal(raw);
    try {
      return make_literal(raw, *rule.datatype);
    } catch (const Error&) {
      warn_once(rule.column, raw, "value does not fit " + *rule.datatype + "; kept as string");
      return string_literal(raw);
    }
  }

  std::vector<OntologyTermRef> mapped_types(const ColumnRule& rule, const std::string& raw) {
    std::vector<OntologyTermRef> types = {*rule.target_class};
    if (!ctx_.manifest->curation_required.contains(rule.column)) return types;
    if (ctx_.curation) {
      if (const auto* row = ctx_.curation->find(rule.column, raw)) {
        if (row->chosen && *row->chosen != types.front()) types.push_back(*row->chosen);
        return types;
      }
    }
    if (auto exact = resolve_exact(raw, ctx_.index)) {
      if (*exact != types.front()) types.push_back(*exact);
    } else {
      warn_once(rule.column, raw, "no curated or exact ontology match; typed by target class only");
    }
    return types;
  }

  NodeSpec individual(const ColumnRule& rule, const std::string& raw, std::vector<OntologyTermRef> types) {
    NodeSpec n = NodeSpec::named_individual(rule.concept_name, std::move(types), raw);
    if (rule.iri_stem) n.iri = expand(*rule.iri_stem, *ctx_.registry) + text::iri_safe(*n.label);
    return n;
  }

  void mapped(const ColumnRule& rule, const std::string& raw, NodeSpec& target) {
    NodeSpec n = individual(rule, raw, mapped_types(rule, raw));
    record(rule, raw, n);
    target.edge(rule.predicate, std::move(n));
  }

  OntologyTermRef container_class(const ColumnRule& rule, const char* fallback_local) const {
    return rule.target_class.value_or(OntologyTermRef("MBS", fallback_local));
  }

  void mixture(const ColumnRule& rule, const std::string& raw, NodeSpec& target) {
    SolventMixture m;
    try {
      m = parse_solvent_mixture(raw, ctx_.index);
    } catch (const Error& e) {
      report_.warn("metadata", rule.column + "=" + raw, std::string(e.what()) + "; emitted as literal value node");
      target.edge(rule.predicate,
                  NodeSpec::value_node({container_class(rule, "SolventMixture")}, string_literal(raw)));
      return;
    }
    for (const auto& w : m.warnings) warn_once(rule.column, raw, w);
    NodeSpec n = individual(rule, raw, {container_class(rule, "SolventMixture")});
    for (const auto& c : m.components) {
      OntologyTermRef chem = chemical_term(c.name, c.chemical);
      if (c.proportion) {
        n.edge(vocab::kHasAttribute,
               NodeSpec::value_node({OntologyTermRef("MBS", "MixtureComponent"), chem},
                                    decimal_literal(decimal_text(*c.proportion))));
      } else {
        n.edge(vocab::kHasAttribute, IriRef{expand(chem, *ctx_.registry)});
      }
    }
    for (const auto& a : m.additives) {
      OntologyTermRef chem = chemical_term(a.name, a.chemical);
      OntologyTermRef unit = unit_term(a.unit).value_or(OntologyTermRef("MBS", "unit_" + text::iri_safe(a.unit)));
      n.edge(vocab::kHasAttribute,
             NodeSpec::value_node({OntologyTermRef("MBS", "Additive"), chem, unit},
                                  decimal_literal(decimal_text(a.concentration))));
    }
    record(rule, raw, n);
    target.edge(rule.predicate, std::move(n));
  }

  void method_phrase(const ColumnRule& rule, const std::string& raw, NodeSpec& target) {
    std::vector<std::string> steps = parse_method_phrase(raw);
    NodeSpec n = individual(rule, raw, mapped_types(rule, raw));
    if (steps.size() > 1) {
      for (const auto& step : steps) {
        std::vector<OntologyTermRef> types = {OntologyTermRef("MBS", "ProtocolStep")};
        if (auto exact = resolve_exact(step, ctx_.index)) types.push_back(*exact);
        n.edge(vocab::kHasAttribute, NodeSpec::named_individual("protocol-step", std::move(types), step));
      }
    }
    record(rule, raw, n);
    target.edge(rule.predicate, std::move(n));
  }

  const SampleRecord& rec_;
  const MappingContext& ctx_;
  MappingDictionary& dict_;
  RunReport& report_;
  std::set<std::pair<std::string, std::string>> warned_;
};

}  // namespace

std::optional<OntologyTermRef> parse_term_cell(std::string_view cell, const ColumnRule& rule,
                                               const NamespaceRegistry& registry, std::string* label) {
  std::optional<OntologyTermRef> term;
  std::string rest;
  for (const auto& part_raw : text::split(cell, '|')) {
    std::string part(text::trim(part_raw));
    if (part.empty()) continue;
    if (!term) {
      if (part.find(':') != std::string::npos) {
        if (auto t = to_term(part, registry)) {
          term = t;
          continue;
        }
      } else if (rule.term_prefix && all_digits(part)) {
        term = OntologyTermRef(*rule.term_prefix, part);
        continue;
      }
    }
    if (!rest.empty()) rest += " | ";
    rest += part;
  }
  if (label) *label = rest;
  return term;
}

std::vector<NodeSpec> apply_mapping(const SampleRecord& record, const MappingContext& ctx,
                                    const UriSpec& organism, MappingDictionary& dictionary,
                                    RunReport& report) {
  if (!ctx.manifest || !ctx.registry) throw Error(ErrorCode::InvalidSpec, "mapping context incomplete");
  const MappingManifest& m = *ctx.manifest;
  Attributes identity = {{"collection", record.collection_id}, {"filename", record.filename}};

  NodeSpec sample = NodeSpec::prov_entity("sample", {vocab::kProvEntity, vocab::kSampleClass}, identity);
  NodeSpec process = NodeSpec::prov_activity("sampling-process", {vocab::kProvActivity, vocab::kSamplingProcess},
                                             identity);
  NodeSpec org;
  org.kind = NodeKind::NamedIndividual;
  org.concept_name = "organism";
  org.types = {vocab::kOrganism};
  org.iri = organism.str();

  RecordMapper mapper(record, ctx, dictionary, report);
  Subjects subjects{&sample, &process, &org};
  for (const auto& [column, cell] : record.columns) {
    if (!cell || cell->empty() || m.is_reserved(column)) continue;
    const ColumnRule* rule = m.rule(column);
    ColumnRule defaulted;
    if (!rule) {
      if (!m.default_strategy) {
        if (ctx.strict) throw Error(ErrorCode::UnmappedColumn, column);
        report.warn("metadata", column, "no mapping rule; column skipped");
        continue;
      }
      defaulted.column = column;
      defaulted.strategy = *m.default_strategy;
      defaulted.concept_name = text::kebab(column);
      if (defaulted.strategy == Strategy::Mapped) defaulted.target_class = OntologyTermRef("MBS", "Value");
      rule = &defaulted;
    }
    if (rule->strategy == Strategy::Skip) continue;
    mapper.column(*rule, *cell, subjects);
  }

  Uai uai;
  uai.collection_id = record.collection_id;
  uai.mzml = record.filename;
  sample.edge(vocab::kHasIdentifier, uai_node(uai));
  sample.edge(vocab::kProvWasGeneratedBy, std::move(process));
  sample.edge(vocab::kProvWasDerivedFrom, std::move(org));

  std::vector<NodeSpec> out;
  out.push_back(collection_node(record.collection_id, record.title));
  out.push_back(std::move(sample));
  return out;
}

MetadataGraph map_metadata(const std::vector<SampleRecord>& records, const MappingContext& ctx,
                           RunReport& report) {
  MetadataGraph g;
  g.organisms = build_organism_individuals(records, ctx.manifest->organism_columns, ctx.global_prefix);
  g.specs.reserve(records.size() * 2);
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto specs = apply_mapping(records[i], ctx, g.organisms.uri_for(i), g.dictionary, report);
    for (auto& s : specs) g.specs.push_back(std::move(s));
  }
  return g;
}

}  // namespace mskg
