#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace mskg {

inline constexpr std::string_view kBase57Alphabet =
    "23456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
inline constexpr std::size_t kHashLength = 22;
inline constexpr std::string_view kDefaultGlobalPrefix = "https://ns.inria.fr/metaboKG/resource/";

std::array<std::uint8_t, 32> sha256(std::string_view data);
std::string sha256_hex(std::string_view data);

// First 16 bytes of SHA-256, big-endian, base57, left-padded with '2'.
std::string hash57(std::string_view canonical);

struct UriSpec {
  std::string global_prefix;
  std::string concept_name;
  std::string hash;

  std::string str() const { return global_prefix + concept_name + "/" + hash; }

  friend bool operator==(const UriSpec&, const UriSpec&) = default;
};

using Attributes = std::map<std::string, std::string>;
using Fallback = std::pair<std::string, std::string>;  // (filename, source id)

// Canonical identity string hashed by mint_uri. Throws EmptyIdentity.
std::string canonical_identity(std::string_view concept_name, const Attributes& attributes,
                               const std::optional<Fallback>& fallback = std::nullopt);

// Deterministic URI from a concept_name and its distinguishing attributes, or
// from (filename, source id) when no attributes are available.
UriSpec mint_uri(std::string_view concept_name, const Attributes& attributes,
                 const std::optional<Fallback>& fallback = std::nullopt,
                 std::string_view global_prefix = kDefaultGlobalPrefix);

}  // namespace mskg
