#include "mskg/table.hpp"

#include "mskg/error.hpp"
#include "mskg/text.hpp"

namespace mskg {

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

char sniff_delimiter(std::string_view content) {
  std::string_view first = content.substr(0, content.find('\n'));
  std::size_t tabs = 0, commas = 0;
  for (char c : first) {
    tabs += (c == '\t');
    commas += (c == ',');
  }
  return commas > tabs ? ',' : '\t';
}

namespace {

std::vector<std::vector<std::string>> split_records(std::string_view content, char delim) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool quoting_enabled = delim == ',';
  bool cell_started = false;
  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    cell_started = false;
  };
  auto end_row = [&] {
    end_cell();
    bool blank = row.size() == 1 && row[0].empty();
    if (!blank) records.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
      continue;
    }
    if (quoting_enabled && c == '"' && !cell_started) {
      quoted = true;
      cell_started = true;
    } else if (c == delim) {
      end_cell();
    } else if (c == '\n') {
      end_row();
    } else if (c == '\r') {
      // CRLF line endings.
    } else {
      cell.push_back(c);
      cell_started = true;
    }
  }
  if (!cell.empty() || !row.empty()) end_row();
  return records;
}

}  // namespace

Table parse_table(std::string_view content, std::optional<char> delimiter) {
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  char delim = delimiter.value_or(sniff_delimiter(content));
  auto records = split_records(content, delim);
  if (records.empty() || (records[0].size() == 1 && text::trim(records[0][0]).empty()))
    throw Error(ErrorCode::MissingHeader, "table has no header row");
  Table t;
  for (auto& h : records[0]) t.header.emplace_back(text::trim(h));
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& row = records[r];
    row.resize(t.header.size());
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_table(const std::string& path, std::optional<char> delimiter) {
  return parse_table(text::read_file(path), delimiter);
}

std::string tsv_escape(std::string_view cell) {
  std::string out;
  for (char c : cell) {
    if (c == '\t' || c == '\n' || c == '\r')
      out.push_back(' ');
    else
      out.push_back(c);
  }
  return out;
}

std::string to_tsv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back('\t');
      out += tsv_escape(cells[i]);
    }
    out.push_back('\n');
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

}  // namespace mskg
