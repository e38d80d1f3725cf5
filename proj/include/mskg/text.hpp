#pragma once

#include <string>
#include <utility>
#include <string_view>
#include <vector>

namespace mskg::text {

// Unicode NFC normalization of a UTF-8 string. Invalid UTF-8 is replaced
// with U+FFFD by the decoder.
std::string nfc(std::string_view s);

// Trims ASCII whitespace and U+00A0 from both ends.
std::string_view trim(std::string_view s);

// NFC then trim then collapse inner whitespace runs to one space.
std::string normalize_label(std::string_view s);

// Unicode case folding (after NFC).
std::string casefold(std::string_view s);

std::u32string to_u32(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);

// Percent-escapes '%' and every byte listed in `reserved`.
std::string percent_escape(std::string_view s, std::string_view reserved);
std::string percent_unescape(std::string_view s);

// Lowercase [a-z0-9-] slug; runs of other characters become one '-'.
std::string kebab(std::string_view s);

// Keeps RFC 3986 unreserved ASCII, percent-encodes every other byte.
std::string iri_safe(std::string_view s);

std::string to_lower_ascii(std::string_view s);

// "http://host:port/base/" -> {"http://host:port", "/base"}.
std::pair<std::string, std::string> split_url(const std::string& url);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace mskg::text
