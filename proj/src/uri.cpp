#include "mskg/uri.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <vector>

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

std::array<std::uint8_t, 32> sha256(std::string_view data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size())
    throw std::runtime_error("SHA-256 digest failed");
  return out;
}

std::string sha256_hex(std::string_view data) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : sha256(data)) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xF]);
  }
  return out;
}

std::string hash57(std::string_view canonical) {
  auto digest = sha256(canonical);
  unsigned __int128 n = 0;
  for (std::size_t i = 0; i < 16; ++i) n = (n << 8) | digest[i];
  std::string out;
  while (n != 0) {
    out.push_back(kBase57Alphabet[static_cast<std::size_t>(n % kBase57Alphabet.size())]);
    n /= kBase57Alphabet.size();
  }
  while (out.size() < kHashLength) out.push_back(kBase57Alphabet.front());
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

std::string escape_component(std::string_view s) {
  return text::percent_escape(text::nfc(s), "|=");
}

}  // namespace

std::string canonical_identity(std::string_view concept_name, const Attributes& attributes,
                               const std::optional<Fallback>& fallback) {
  if (concept_name.empty()) throw Error(ErrorCode::EmptyIdentity, "empty concept_name");
  std::string out(concept_name);
  if (!attributes.empty()) {
    // Keys are escaped before sorting so the order is that of the hashed text.
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(attributes.size());
    for (const auto& [k, v] : attributes) pairs.emplace_back(escape_component(k), escape_component(v));
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [k, v] : pairs) {
      out += '|';
      out += k;
      out += '=';
      out += v;
    }
    return out;
  }
  if (fallback && !(fallback->first.empty() && fallback->second.empty())) {
    out += "|file=" + escape_component(fallback->first);
    out += "|src=" + escape_component(fallback->second);
    return out;
  }
  throw Error(ErrorCode::EmptyIdentity, "no attributes and no (filename, source id) for " +
                                            std::string(concept_name));
}

UriSpec mint_uri(std::string_view concept_name, const Attributes& attributes,
                 const std::optional<Fallback>& fallback, std::string_view global_prefix) {
  std::string c(concept_name);
  if (c.empty() || !std::all_of(c.begin(), c.end(), [](char ch) {
        return (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '-';
      }))
    throw Error(ErrorCode::InvalidSpec, "concept_name must match [a-z0-9-]+: '" + c + "'");
  return UriSpec{std::string(global_prefix), c, hash57(canonical_identity(c, attributes, fallback))};
}

}  // namespace mskg
