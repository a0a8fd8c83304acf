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

#include <cmath>

namespace fockbell::runner {

// Defaults table.  Every physical default of the tool lives here.
//
// command      alpha range / step     starts  grid  stride  tolerance
// amplitudes   [0.01, 2.0] / 0.01     -       -     1       1e-6   Fock vs closed-form residual
// ch-optimize  [0, 1.5] box           64      -     -       1e-10  simplex size
// ch-sweep     [0, 1.2]               16      41    -       1e-10  simplex size
// witness      [0.01, 2.0] / 0.01     -       -     1       1e-6   Fock vs closed-form residual
// classical    [0.01, 2.0] / 0.01     -       401   1       1e-6   quadrature vs closed form
// povm-check   alpha = 0.5            20      24    -       1e-6   four-mode vs element form
//
// ch-sweep uses 16 starts per cell (plus the warm start from the previous
// cell) to keep the 41 x 41 landscape within minutes on one core.  For
// povm-check, `starts` counts the random settings and `grid` the theta grid.
namespace {

RunConfig make(std::string command, double lo, double hi, double step, int starts, int grid,
               int stride, double tolerance) {
  RunConfig c;
  c.command = std::move(command);
  c.alpha_min = lo;
  c.alpha_max = hi;
  c.alpha_step = step;
  c.starts = starts;
  c.grid = grid;
  c.check_stride = stride;
  c.tolerance = tolerance;
  return c;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"amplitudes", "ch-optimize", "ch-sweep",
                                                 "witness",    "classical",   "povm-check"};
  return names;
}

RunConfig default_config(std::string_view command) {
  if (command == "amplitudes") return make("amplitudes", 0.01, 2.0, 0.01, 0, 0, 1, 1e-6);
  if (command == "ch-optimize") return make("ch-optimize", 0.0, 1.5, 0.0, 64, 0, 1, 1e-10);
  if (command == "ch-sweep") return make("ch-sweep", 0.0, 1.2, 0.0, 16, 41, 1, 1e-10);
  if (command == "witness") return make("witness", 0.01, 2.0, 0.01, 0, 0, 1, 1e-6);
  if (command == "classical") return make("classical", 0.01, 2.0, 0.01, 0, 401, 1, 1e-6);
  if (command == "povm-check") return make("povm-check", 0.5, 0.5, 0.0, 20, 24, 1, 1e-6);
  throw UsageError("unknown command: " + std::string(command));
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw UsageError("unknown format: " + std::string(s));
}

RunConfig resolve_config(std::string_view command, const ConfigOverrides& o) {
  RunConfig c = default_config(command);
  if (o.alpha_min) c.alpha_min = *o.alpha_min;
  if (o.alpha_max) c.alpha_max = *o.alpha_max;
  if (o.alpha_step) c.alpha_step = *o.alpha_step;
  if (o.cutoff) c.cutoff = *o.cutoff;
  if (o.seed) c.seed = *o.seed;
  if (o.starts) c.starts = *o.starts;
  if (o.grid) c.grid = *o.grid;
  if (o.tolerance) c.tolerance = *o.tolerance;
  if (o.hardy_q) c.hardy_q = *o.hardy_q;
  if (o.out) c.out = *o.out;
  if (o.format) c.format = *o.format;
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  default_config(c.command);
  if (!std::isfinite(c.alpha_min) || !std::isfinite(c.alpha_max) || c.alpha_min < 0.0) {
    throw UsageError("alpha range must be finite and non-negative");
  }
  if (c.alpha_min > c.alpha_max) throw UsageError("alpha-min exceeds alpha-max");
  const bool stepped = c.command == "amplitudes" || c.command == "witness" || c.command == "classical";
  if (stepped && !(c.alpha_step > 0.0)) throw UsageError("alpha-step must be positive");
  if (stepped && (c.alpha_max - c.alpha_min) / c.alpha_step > 1e6) {
    throw UsageError("alpha grid too large");
  }
  if (c.cutoff < 0) throw UsageError("cutoff must be >= 0 (0 = automatic)");
  if ((c.command == "ch-optimize" || c.command == "ch-sweep" || c.command == "povm-check") &&
      c.starts < 1) {
    throw UsageError("starts must be positive");
  }
  if (c.command == "ch-sweep" && c.grid < 1) throw UsageError("grid must be positive");
  if (c.command == "classical" && c.grid < 3) throw UsageError("quadrature grid needs >= 3 points");
  if (c.command == "povm-check" && c.grid != 24) {
    throw UsageError("povm-check compares on the fixed 24-point theta grid");
  }
  if (c.check_stride < 1) throw UsageError("check stride must be positive");
  if (!(c.tolerance > 0.0)) throw UsageError("tolerance must be positive");
  if (c.hardy_q) {
    if (c.command != "ch-optimize") throw UsageError("--hardy-q applies to ch-optimize only");
    if (!(*c.hardy_q > 0.0 && *c.hardy_q < 1.0)) throw UsageError("--hardy-q must lie in (0, 1)");
  }
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j = {{"command", c.command},     {"alpha_min", c.alpha_min},
                      {"alpha_max", c.alpha_max}, {"alpha_step", c.alpha_step},
                      {"cutoff", c.cutoff},       {"seed", c.seed},
                      {"starts", c.starts},       {"grid", c.grid},
                      {"check_stride", c.check_stride}, {"tolerance", c.tolerance},
                      {"out", c.out},             {"format", to_string(c.format)}};
  j["hardy_q"] = c.hardy_q ? nlohmann::json(*c.hardy_q) : nlohmann::json(nullptr);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  try {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.alpha_min = j.at("alpha_min").get<double>();
    c.alpha_max = j.at("alpha_max").get<double>();
    c.alpha_step = j.at("alpha_step").get<double>();
    c.cutoff = j.at("cutoff").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.starts = j.at("starts").get<int>();
    c.grid = j.at("grid").get<int>();
    c.check_stride = j.at("check_stride").get<int>();
    c.tolerance = j.at("tolerance").get<double>();
    c.out = j.at("out").get<std::string>();
    c.format = parse_format(j.at("format").get<std::string>());
    if (!j.at("hardy_q").is_null()) c.hardy_q = j.at("hardy_q").get<double>();
    validate(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed config echo: ") + e.what());
  }
}

std::vector<double> alpha_grid(const RunConfig& c) {
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((c.alpha_max - c.alpha_min) / c.alpha_step + 1e-9));
  for (long k = 0; k <= n; ++k) g.push_back(c.alpha_min + static_cast<double>(k) * c.alpha_step);
  return g;
}

}  // namespace fockbell::runner
