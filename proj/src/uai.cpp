#include "mskg/uai.hpp"

#include <charconv>
#include <map>

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

namespace {

constexpr std::string_view kScheme = "mzspec:";

std::string esc(const std::optional<std::string>& s) {
  return s ? text::percent_escape(*s, ":") : std::string();
}

std::optional<std::string> opt(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return text::percent_unescape(s);
}

template <typename F>
void for_each_component(const Uai& u, F&& f) {
  using namespace uai_component;
  f(kCollectionId, u.collection_id);
  f(kMzml, u.mzml);
  f(kScan, u.scan);
  f(kAnnotationFile, u.annotation_file);
  f(kHitNumber, u.hit_number ? std::optional<std::string>(std::to_string(*u.hit_number))
                             : std::optional<std::string>());
  f(kFeatureId, u.feature_id);
  f(kFeatureTable, u.feature_table);
}

}  // namespace

bool Uai::empty() const { return uai_present_components(*this).empty(); }

std::vector<std::string> uai_violations(const Uai& u) {
  std::vector<std::string> out;
  if (u.empty()) out.emplace_back("no component present");
  if (u.annotation_file && !u.collection_id)
    out.emplace_back("annotation file without collection");
  if (u.hit_number && *u.hit_number == 0) out.emplace_back("hit number must be positive");
  return out;
}

std::vector<std::string> uai_gnps_violations(const Uai& u) {
  auto out = uai_violations(u);
  if (u.hit_number && *u.hit_number != 1)
    out.emplace_back("GNPS hit number must be 1, got " + std::to_string(*u.hit_number));
  return out;
}

std::string uai_serialize(const Uai& u) {
  std::string out(kScheme);
  out += esc(u.collection_id);
  out += ':';
  out += esc(u.mzml);
  if (u.scan) out += ":scan:" + esc(u.scan);
  if (u.annotation_file || u.hit_number) {
    out += ":annot:" + esc(u.annotation_file) + ":";
    if (u.hit_number) out += std::to_string(*u.hit_number);
  }
  if (u.feature_id || u.feature_table)
    out += ":feature:" + esc(u.feature_id) + ":ftable:" + esc(u.feature_table);
  return out;
}

Uai uai_parse(std::string_view s) {
  if (!s.starts_with(kScheme)) throw UaiError(0, "expected 'mzspec:' scheme");
  // Tokenize on ':' while remembering offsets for error reporting.
  std::vector<std::pair<std::string_view, std::size_t>> tokens;
  std::size_t start = kScheme.size();
  while (true) {
    std::size_t pos = s.find(':', start);
    if (pos == std::string_view::npos) {
      tokens.emplace_back(s.substr(start), start);
      break;
    }
    tokens.emplace_back(s.substr(start, pos - start), start);
    start = pos + 1;
  }
  if (tokens.size() < 2) throw UaiError(s.size(), "expected collection and run segments");

  Uai u;
  u.collection_id = opt(tokens[0].first);
  u.mzml = opt(tokens[1].first);

  // Extension groups must appear in grammar order, each at most once.
  int stage = 0;
  std::size_t i = 2;
  auto need = [&](std::size_t n) {
    if (i + n > tokens.size())
      throw UaiError(s.size(), "truncated '" + std::string(tokens[i - 1].first) + "' group");
  };
  while (i < tokens.size()) {
    auto [tag, offset] = tokens[i++];
    if (tag == "scan" && stage < 1) {
      need(1);
      u.scan = opt(tokens[i++].first);
      if (!u.scan) throw UaiError(tokens[i - 1].second, "empty scan");
      stage = 1;
    } else if (tag == "annot" && stage < 2) {
      need(2);
      u.annotation_file = opt(tokens[i++].first);
      auto [hit, hit_offset] = tokens[i++];
      if (!hit.empty()) {
        std::uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(hit.data(), hit.data() + hit.size(), value);
        if (ec != std::errc() || ptr != hit.data() + hit.size() || value == 0)
          throw UaiError(hit_offset, "hit number must be a positive integer");
        u.hit_number = value;
      }
      if (!u.annotation_file && !u.hit_number) throw UaiError(offset, "empty annot group");
      stage = 2;
    } else if (tag == "feature" && stage < 3) {
      need(3);
      u.feature_id = opt(tokens[i++].first);
      auto [ftag, ftag_offset] = tokens[i++];
      if (ftag != "ftable") throw UaiError(ftag_offset, "expected 'ftable'");
      u.feature_table = opt(tokens[i++].first);
      if (!u.feature_id && !u.feature_table) throw UaiError(offset, "empty feature group");
      stage = 3;
    } else {
      throw UaiError(offset, "unexpected extension tag '" + std::string(tag) + "'");
    }
  }
  if (auto v = uai_violations(u); !v.empty()) throw UaiError(0, v.front());
  return u;
}

ComponentSet uai_present_components(const Uai& u) {
  ComponentSet out;
  for_each_component(u, [&](std::string_view name, const std::optional<std::string>& v) {
    if (v && !v->empty()) out.emplace(name);
  });
  return out;
}

ComponentSet uai_shared_components(const Uai& a, const Uai& b) {
  std::map<std::string_view, std::optional<std::string>> left;
  for_each_component(a, [&](std::string_view name, const std::optional<std::string>& v) {
    left[name] = v;
  });
  ComponentSet shared;
  bool conflict = false;
  for_each_component(b, [&](std::string_view name, const std::optional<std::string>& v) {
    const auto& l = left[name];
    if (!l || l->empty() || !v || v->empty()) return;
    if (*l == *v)
      shared.emplace(name);
    else
      conflict = true;
  });
  if (conflict) shared.clear();
  return shared;
}

}  // namespace mskg
