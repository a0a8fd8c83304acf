// Copyright 2026 The fockbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fockbell/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#ifndef FOCKBELL_VERSION
#define FOCKBELL_VERSION "0.0.0"
#endif

namespace fockbell::runner {

std::string tool_version() { return FOCKBELL_VERSION; }

bool ResultDocument::all_passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimCheck& c) { return c.passed; });
}

int exit_code(const ResultDocument& doc) { return doc.all_passed() ? 0 : 1; }

namespace {

constexpr std::string_view kConfigPrefix = "# config: ";

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string format_cell(const nlohmann::json& cell) {
  if (cell.is_number_float()) return format_number(cell.get<double>());
  if (cell.is_number()) return cell.dump();
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_null()) return "nan";
  const std::string s = cell.is_string() ? cell.get<std::string>() : cell.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string csv_line(const std::vector<nlohmann::json>& row) {
  std::string line;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) line += ',';
    line += format_cell(row[k]);
  }
  return line;
}

nlohmann::json claims_json(const ResultDocument& doc) {
  nlohmann::json claims = nlohmann::json::array();
  std::size_t passed = 0;
  for (const ClaimCheck& c : doc.claims) {
    passed += c.passed ? 1 : 0;
    claims.push_back({{"id", c.id},
                      {"description", c.description},
                      {"passed", c.passed},
                      {"observed", c.observed},
                      {"expected", c.expected},
                      {"margin", c.margin}});
  }
  return {{"claims", claims},
          {"passed", passed},
          {"total", doc.claims.size()},
          {"all_passed", doc.all_passed()}};
}

}  // namespace

std::vector<std::string> records_of(const ResultDocument& doc) {
  std::vector<std::string> out;
  out.reserve(doc.rows.size());
  for (const auto& row : doc.rows) {
    out.push_back(doc.config.format == OutputFormat::csv ? csv_line(row)
                                                         : nlohmann::json(row).dump());
  }
  return out;
}

void write_csv(const ResultDocument& doc, std::ostream& os) {
  os << "# fockbell " << doc.tool_version << '\n';
  os << "# command: " << doc.config.command << '\n';
  os << kConfigPrefix << to_json(doc.config).dump() << '\n';
  for (const ClaimCheck& c : doc.claims) {
    os << "# claim: " << c.id << ' ' << (c.passed ? "PASS" : "FAIL")
       << " observed=" << format_number(c.observed) << " expected=" << format_number(c.expected)
       << " margin=" << format_number(c.margin) << " | " << c.description << '\n';
  }
  for (const std::string& n : doc.notes) os << "# note: " << n << '\n';
  const auto passed = std::count_if(doc.claims.begin(), doc.claims.end(),
                                    [](const ClaimCheck& c) { return c.passed; });
  os << "# summary: " << passed << '/' << doc.claims.size() << " claims passed\n";
  std::vector<nlohmann::json> header(doc.columns.begin(), doc.columns.end());
  os << csv_line(header) << '\n';
  for (const std::string& r : records_of(doc)) os << r << '\n';
}

void write_json(const ResultDocument& doc, std::ostream& os) {
  nlohmann::json j;
  j["tool"] = "fockbell";
  j["version"] = doc.tool_version;
  j["config"] = to_json(doc.config);
  j["columns"] = doc.columns;
  j["rows"] = doc.rows;
  j["summary"] = claims_json(doc);
  j["notes"] = doc.notes;
  os << j.dump(2) << '\n';
}

void write(const ResultDocument& doc, std::ostream& os) {
  if (doc.config.format == OutputFormat::csv) {
    write_csv(doc, os);
  } else {
    write_json(doc, os);
  }
}

void write_summary(const ResultDocument& doc, std::ostream& os) {
  os << "fockbell " << doc.config.command << ": " << doc.rows.size() << " records\n";
  for (const ClaimCheck& c : doc.claims) {
    os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.id << ": " << c.description
       << " (observed " << format_number(c.observed) << ", expected "
       << format_number(c.expected) << ")\n";
  }
  for (const std::string& n : doc.notes) os << "  note: " << n << '\n';
}

StoredResult read_result(std::istream& is) {
  std::stringstream buffer;
  buffer << is.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  StoredResult out;
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("unreadable result document: ") + e.what());
    }
    out.config = config_from_json(j.at("config"));
    for (const auto& row : j.at("rows")) out.records.push_back(row.dump());
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  bool have_config = false, have_header = false;
  while (std::getline(lines, line)) {
    if (line.starts_with("#")) {
      if (line.starts_with(kConfigPrefix)) {
        try {
          out.config = config_from_json(nlohmann::json::parse(line.substr(kConfigPrefix.size())));
        } catch (const nlohmann::json::exception& e) {
          throw UsageError(std::string("unreadable config echo: ") + e.what());
        }
        have_config = true;
      }
      continue;
    }
    if (!have_header) {
      have_header = true;
      continue;
    }
    out.records.push_back(line);
  }
  if (!have_config) throw UsageError("result file carries no config echo");
  return out;
}

}  // namespace fockbell::runner
