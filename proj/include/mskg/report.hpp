#pragma once

#include <string>
#include <vector>

namespace mskg {

// Warnings and fallbacks collected during a run, written as TSV.
struct RunReport {
  struct Entry {
    std::string severity;  // "warning" | "error" | "info"
    std::string source;
    std::string location;
    std::string message;
  };
  std::vector<Entry> entries;

  void warn(std::string source, std::string location, std::string message) {
    entries.push_back({"warning", std::move(source), std::move(location), std::move(message)});
  }
  void error(std::string source, std::string location, std::string message) {
    entries.push_back({"error", std::move(source), std::move(location), std::move(message)});
  }
  void info(std::string source, std::string location, std::string message) {
    entries.push_back({"info", std::move(source), std::move(location), std::move(message)});
  }
  std::size_t count(const std::string& severity) const {
    std::size_t n = 0;
    for (const auto& e : entries) n += (e.severity == severity);
    return n;
  }
  void append(const RunReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }
  std::string to_tsv() const;
};

}  // namespace mskg
