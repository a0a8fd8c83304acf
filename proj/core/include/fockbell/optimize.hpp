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

// Derivative-free box-constrained minimization: Nelder-Mead with projection
// onto the box, restarted from a low-discrepancy set of starting points.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fockbell {

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
  /// Periodic coordinates wrap into [lower, upper) instead of clamping.
  bool periodic = false;

  double width() const noexcept { return upper - lower; }
  double project(double x) const;
};

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  /// Stop once every vertex is within this distance (max norm) of the best.
  double tolerance = 1e-10;
  /// ... or once the spread of objective values drops below this.
  double value_tolerance = 1e-14;
  int max_evaluations = 20000;
  /// Initial simplex edge as a fraction of each box width.
  double initial_step = 0.1;
  /// Extra restarts from the converged point.
  int restarts = 1;
};

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  /// Largest objective value seen along the way.
  double max_value_seen = 0.0;
  bool converged = false;
};

LocalResult nelder_mead(const Objective& f, std::span<const double> x0,
                        std::span<const Bounds> bounds, const NelderMeadOptions& options = {});

struct MultiStartOptions {
  int starts = 64;
  std::uint64_t seed = 42;
  NelderMeadOptions local;
  /// Extra starting points tried before the generated ones.
  std::vector<std::vector<double>> warm_starts;
  int threads = 0;
};

struct StartRecord {
  int index = 0;
  std::vector<double> start;
  LocalResult result;
};

struct MultiStartResult {
  LocalResult best;
  int best_index = 0;
  /// One record per start, in start order.
  std::vector<StartRecord> trace;
  double max_value_seen = 0.0;
};

/// Halton points in [0,1)^dim (dim <= 32) with a seed-derived random shift
/// modulo 1.
std::vector<std::vector<double>> halton_points(int count, int dim, std::uint64_t seed);

/// Multi-start minimization.  Results depend only on the options, never on
/// the thread count; ties go to the lowest start index.
MultiStartResult multi_start_minimize(const Objective& f, std::span<const Bounds> bounds,
                                      const MultiStartOptions& options = {});

}  // namespace fockbell
