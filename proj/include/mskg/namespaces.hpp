#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mskg {

// Prefix -> namespace IRI table. Insertion order is preserved so that a
// registry written back out is byte-identical to the file it came from.
class NamespaceRegistry {
 public:
  using Entry = std::pair<std::string, std::string>;

  NamespaceRegistry() = default;

  // The nine prefixes of the published vocabulary table.
  static NamespaceRegistry core();
  // core() plus the W3C and helper vocabularies used by emitters and queries.
  static NamespaceRegistry standard();

  static NamespaceRegistry from_tsv(std::string_view content);
  static NamespaceRegistry load(const std::string& path);

  // Adds the helper vocabularies whose prefixes are not already present.
  NamespaceRegistry& with_builtins();

  void add(std::string prefix, std::string ns);

  std::optional<std::string_view> find(std::string_view prefix) const;
  bool contains(std::string_view prefix) const { return find(prefix).has_value(); }

  // Throws UnknownPrefix.
  std::string expand(std::string_view prefix, std::string_view local_id) const;
  // "MS:1002894" -> full IRI. Throws UnknownPrefix or ParseError.
  std::string expand_curie(std::string_view curie) const;

  // Longest matching namespace wins.
  std::optional<Entry> compact(std::string_view iri) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::string to_tsv() const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace mskg
