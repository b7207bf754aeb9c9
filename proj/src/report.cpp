#include "saddlepairs/report.hpp"

#include <cstdio>
#include <sstream>

#include "saddlepairs/errors.hpp"

namespace saddlepairs {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_to_string(const CsvReport& report) {
  std::ostringstream out;
  for (const auto& [key, value] : report.meta)
    out << "# " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i)
    out << (i ? "," : "") << report.columns[i];
  out << "\n";
  for (const auto& row : report.rows) {
    require(row.size() == report.columns.size(), ErrorCode::InternalInvariant,
            "CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += ch;
    }
  }
  fields.push_back(field);
  return fields;
}

}  // namespace

CsvReport csv_from_string(const std::string& text) {
  CsvReport report;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      require(!header_seen, ErrorCode::BadConfig,
              "CSV metadata must precede the header row");
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body = body.substr(1);
      const std::size_t eq = body.find('=');
      require(eq != std::string::npos, ErrorCode::BadConfig,
              "CSV metadata line is not key=value: " + line);
      report.meta.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      report.columns = split_commas(line);
      header_seen = true;
      continue;
    }
    auto row = split_commas(line);
    require(row.size() == report.columns.size(), ErrorCode::BadConfig,
            "CSV row width does not match the header: " + line);
    report.rows.push_back(std::move(row));
  }
  require(header_seen, ErrorCode::BadConfig, "CSV report has no header row");
  return report;
}

void add_envelope(CsvReport& report, const std::string& command) {
  report.meta.emplace_back("tool", kToolName);
  report.meta.emplace_back("version", kToolVersion);
  report.meta.emplace_back("command", command);
}

nlohmann::ordered_json json_envelope(const std::string& command) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = command;
  return doc;
}

namespace {

void check_envelope_pair(const std::string& tool, const std::string& version) {
  require(tool == kToolName, ErrorCode::BadConfig,
          "report was not produced by this tool (tool=" + tool + ")");
  require(version == kToolVersion, ErrorCode::BadConfig,
          "report version " + version + " does not match " + kToolVersion);
}

}  // namespace

void check_report(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  require(first != std::string::npos, ErrorCode::BadConfig,
          "report file is empty");
  if (text[first] == '{') {
    nlohmann::ordered_json doc;
    try {
      doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::BadConfig,
           std::string("report is not valid JSON: ") + e.what());
    }
    require(doc.contains("tool") && doc.contains("version") &&
                doc.contains("command"),
            ErrorCode::BadConfig, "report lacks the tool envelope");
    check_envelope_pair(doc["tool"].get<std::string>(),
                        doc["version"].get<std::string>());
    const std::string again = doc.dump(2) + "\n";
    require(again == text, ErrorCode::BadConfig,
            "JSON report does not round-trip byte-identically");
    return;
  }
  const CsvReport report = csv_from_string(text);
  std::string tool, version;
  bool has_command = false;
  for (const auto& [key, value] : report.meta) {
    if (key == "tool") tool = value;
    if (key == "version") version = value;
    if (key == "command") has_command = true;
  }
  require(!tool.empty() && !version.empty() && has_command,
          ErrorCode::BadConfig, "report lacks the tool envelope");
  check_envelope_pair(tool, version);
  require(csv_to_string(report) == text, ErrorCode::BadConfig,
          "CSV report does not round-trip byte-identically");
}

}  // namespace saddlepairs
