#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mskg {

// A delimited text table: header plus rows of raw cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};

// Picks tab or comma by counting them in the first line.
char sniff_delimiter(std::string_view content);

// RFC 4180 quoting is honoured for ',' tables; tab tables are split
// verbatim. Rows shorter than the header are padded with empty cells.
// Throws MissingHeader on empty input.
Table parse_table(std::string_view content, std::optional<char> delimiter = std::nullopt);
Table read_table(const std::string& path, std::optional<char> delimiter = std::nullopt);

std::string tsv_escape(std::string_view cell);
std::string to_tsv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

}  // namespace mskg
