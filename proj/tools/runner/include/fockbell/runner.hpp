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

#pragma once

// Command layer of the fockbell tool: run configurations, result documents
// and their CSV / JSON forms.

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fockbell::runner {

/// Raised for invalid configurations; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat f);
OutputFormat parse_format(std::string_view s);

/// Fully resolved configuration; serialized into every output.
struct RunConfig {
  std::string command;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  double alpha_step = 0.0;
  /// 0 picks each cutoff by the tail rule.
  int cutoff = 0;
  std::uint64_t seed = 42;
  int starts = 0;
  int grid = 0;
  /// Fock cross-checks run on every stride-th grid point.
  int check_stride = 1;
  double tolerance = 0.0;
  /// Exploratory signal state q|vac> + sqrt(1-q^2)|1> (ch-optimize only).
  std::optional<double> hardy_q;
  std::string out;
  OutputFormat format = OutputFormat::csv;

  bool operator==(const RunConfig&) const = default;
};

/// Overrides a user may pass; unset fields take the command's default.
struct ConfigOverrides {
  std::optional<double> alpha_min;
  std::optional<double> alpha_max;
  std::optional<double> alpha_step;
  std::optional<int> cutoff;
  std::optional<std::uint64_t> seed;
  std::optional<int> starts;
  std::optional<int> grid;
  std::optional<double> tolerance;
  std::optional<double> hardy_q;
  std::optional<std::string> out;
  std::optional<OutputFormat> format;
};

/// Names of the available commands, in help order.
const std::vector<std::string>& command_names();

/// Default configuration of `command`; throws UsageError if unknown.
RunConfig default_config(std::string_view command);

/// Defaults with overrides applied, then validated.
RunConfig resolve_config(std::string_view command, const ConfigOverrides& overrides);

/// Throws UsageError on inconsistent values.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// alpha_min, alpha_min + step, ... up to alpha_max (inclusive within 1e-9 step).
std::vector<double> alpha_grid(const RunConfig& config);

struct ClaimCheck {
  std::string id;
  std::string description;
  bool passed = false;
  double observed = 0.0;
  double expected = 0.0;
  /// Signed distance to failure (positive = room to spare).
  double margin = 0.0;
};

struct ResultDocument {
  RunConfig config;
  std::string tool_version;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  std::vector<ClaimCheck> claims;
  std::vector<std::string> notes;

  bool all_passed() const;
};

/// Version string compiled into the tool.
std::string tool_version();

ResultDocument cmd_amplitudes(const RunConfig& config);
ResultDocument cmd_ch_optimize(const RunConfig& config);
ResultDocument cmd_ch_sweep(const RunConfig& config);
ResultDocument cmd_witness(const RunConfig& config);
ResultDocument cmd_classical(const RunConfig& config);
ResultDocument cmd_povm_check(const RunConfig& config);

/// Dispatches on config.command.
ResultDocument run(const RunConfig& config);

void write_csv(const ResultDocument& doc, std::ostream& os);
void write_json(const ResultDocument& doc, std::ostream& os);
void write(const ResultDocument& doc, std::ostream& os);

/// Human-readable claim summary.
void write_summary(const ResultDocument& doc, std::ostream& os);

/// Reads a CSV or JSON result and returns its config echo and record rows
/// as they appear on disk (CSV: the data lines; JSON: the "rows" array).
struct StoredResult {
  RunConfig config;
  std::vector<std::string> records;
};
StoredResult read_result(std::istream& is);

/// Records of `doc` in the same textual form read_result returns.
std::vector<std::string> records_of(const ResultDocument& doc);

/// Exit status for a finished document: 0 if every claim passed, else 1.
int exit_code(const ResultDocument& doc);

}  // namespace fockbell::runner
