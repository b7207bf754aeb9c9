#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace saddlepairs {

inline constexpr const char* kToolName = "saddlepairs";
inline constexpr const char* kToolVersion = "0.1.0";

// Fixed float formatting (17 significant digits): round-trips exactly and
// keeps reports byte-deterministic.
std::string format_real(double x);

// CSV with a comment envelope: "# key=value" metadata lines, then a header
// row, then data rows. Values never contain commas or newlines.
struct CsvReport {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_to_string(const CsvReport& report);
CsvReport csv_from_string(const std::string& text);

// Standard metadata every report carries, in emission order.
void add_envelope(CsvReport& report, const std::string& command);
nlohmann::ordered_json json_envelope(const std::string& command);

// Validates a report document (JSON or CSV, sniffed from the first byte):
// parses it, checks the tool/version envelope, re-serializes it, and demands
// the bytes match. Throws on any failure.
void check_report(const std::string& text);

}  // namespace saddlepairs
