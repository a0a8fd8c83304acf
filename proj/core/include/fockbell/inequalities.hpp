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

// CHSH and CH expressions built from the station rates, the closed forms of
// the CH correlators, and searches over the setting space.

#include "fockbell/fock.hpp"
#include "fockbell/optics.hpp"
#include "fockbell/optimize.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fockbell {

enum class InequalityId { chsh_rates, chsh_twc, ch_rates };

std::string_view to_string(InequalityId id);

/// Tolerance beyond the bounds before a value counts as a violation.
inline constexpr double kViolationTolerance = 1e-9;

struct InequalityReport {
  InequalityId id = InequalityId::chsh_rates;
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool violated = false;
  /// Distance outside [lower, upper]; negative when inside.
  double margin = 0.0;
  /// Set for expressions that are not genuine Bell tests.
  std::string caveat;
  double alpha = 0.0;
  int cutoff = 0;
};

InequalityReport make_report(InequalityId id, double value, double lower, double upper);

struct ChshAngles {
  double theta1 = 0.0;
  double theta1_prime = 0.0;
  double theta2 = 0.0;
  double theta2_prime = 0.0;
};

/// Angles maximizing the sine combination below (value 2 sqrt 2).
ChshAngles optimal_chsh_angles();

/// s(t1,t2) + s(t1',t2) + s(t1,t2') - s(t1',t2') with s = sin(difference).
double chsh_sine_combination(const ChshAngles& angles);

/// |E_R + E_R + E_R - E_R| from four-mode Fock numerics; bound 2.
InequalityReport chsh_rates_value(double alpha, const ChshAngles& angles, int cutoff = 0);
/// Same combination of intensity correlators; carries a caveat.
InequalityReport chsh_twc_value(double alpha, const ChshAngles& angles, int cutoff = 0);
/// Closed-form counterparts: amplitude times |sine combination|.
InequalityReport chsh_rates_closed(double alpha, const ChshAngles& angles);
InequalityReport chsh_twc_closed(double alpha, const ChshAngles& angles);

/// Settings (v1, v1', v2, v2').
struct ChSettings {
  Setting v1;
  Setting v1_prime;
  Setting v2;
  Setting v2_prime;

  bool operator==(const ChSettings&) const = default;
};

/// Hardy pattern at (3pi/20, sqrt(1/2), 0) and (3pi/20, sqrt(1/2), -pi/2).
ChSettings reference_hardy_settings();

enum class ChMethod { closed_form, fock_numeric, povm };

std::string_view to_string(ChMethod m);

/// Coefficients of the signal state q|vac> + r|1>.
struct SourceState {
  Complex q = 0.0;
  Complex r = 1.0;
};

double ch_correlator_K_closed(const Setting& v1, const Setting& v2);
double ch_local_S_closed(const Setting& v);
double ch_correlator_K_numeric(const Setting& v1, const Setting& v2, int cutoff = 0,
                               const SourceState& source = {});
/// Station `side`; the other station's oscillator is left empty.
double ch_local_S_numeric(const Setting& v, int side, int cutoff = 0,
                          const SourceState& source = {});
double ch_correlator_K_povm(const Setting& v1, const Setting& v2, const SourceState& source = {});
double ch_local_S_povm(const Setting& v, int side, const SourceState& source = {});

struct CHEvaluation {
  ChSettings settings;
  /// K(v1,v2), K(v1',v2), K(v1,v2'), K(v1',v2').
  std::array<double, 4> K{};
  /// S1(v1), S2(v2).
  std::array<double, 2> S{};
  double value = 0.0;
  double lower_bound = -1.0;
  double upper_bound = 0.0;
  ChMethod method = ChMethod::closed_form;
  int cutoff = 0;

  InequalityReport report() const;
};

/// Closed form needs q = 0.  `cutoff` applies to the fock-numeric path.
CHEvaluation ch_rates_value(const ChSettings& settings, ChMethod method = ChMethod::closed_form,
                            int cutoff = 0, const SourceState& source = {});

/// The CH expression with the first of Alice's measurements read in mode c1
/// and Bob's settings swapped, and the lower-bound expression that comes
/// with it.  Both by Fock numerics.
struct AlternativeChValue {
  double value = 0.0;
  double lower_expression = 0.0;
  /// Same settings through ch_rates_value, for comparison.
  double standard_value = 0.0;
};

AlternativeChValue ch_alternative_form_value(const ChSettings& settings, int cutoff = 0);

/// Search space over the twelve setting parameters (chi, alpha, theta of
/// v1, v1', v2, v2').  Each slot is either pinned to a constant or bound to
/// a free variable; several slots may share one variable.
class ChSearchSpace {
 public:
  enum Component { chi = 0, alpha = 1, theta = 2 };
  enum Which { v1 = 0, v1_prime = 1, v2 = 2, v2_prime = 3 };

  static constexpr int slot(Which w, Component c) { return 3 * w + c; }

  /// Adds a free variable and returns its index.
  int add_variable(std::string name, Bounds bounds);
  void bind(int slot, int variable);
  void pin(int slot, double value);

  /// v1 = v2 = (0,0,0); v1', v2' free with alpha in [0, alpha_max].
  static ChSearchSpace hardy(double alpha_max = 1.5);
  /// Every amplitude tied to one variable in [0, alpha_max]; chi and theta free.
  static ChSearchSpace equal_amplitudes(double alpha_max = 1.5);
  /// Unprimed amplitudes pinned to `alpha`, primed to `alpha_prime`; the
  /// remaining eight parameters free.
  static ChSearchSpace fixed_amplitudes(double alpha, double alpha_prime);
  /// Every parameter pinned.
  static ChSearchSpace single_point(const ChSettings& s);

  std::size_t dimension() const noexcept { return bounds_.size(); }
  const std::vector<Bounds>& bounds() const noexcept { return bounds_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  /// Throws std::invalid_argument for empty boxes or unset slots.
  void validate() const;

  ChSettings settings_at(std::span<const double> x) const;
  /// Variable values reproducing `s` (first bound slot wins for ties).
  std::vector<double> point_of(const ChSettings& s) const;

 private:
  struct Slot {
    int variable = -1;
    double value = 0.0;
    bool set = false;
  };
  std::array<Slot, 12> slots_{};
  std::vector<Bounds> bounds_;
  std::vector<std::string> names_;
};

struct ChOptimizerConfig {
  int starts = 64;
  std::uint64_t seed = 42;
  double tolerance = 1e-10;
  int max_evaluations = 20000;
  ChMethod method = ChMethod::closed_form;
  int cutoff = 0;
  SourceState source;
  int threads = 0;
  std::vector<ChSettings> warm_starts;
};

struct ChStartTrace {
  int index = 0;
  ChSettings start;
  ChSettings found;
  double value = 0.0;
  int evaluations = 0;
  /// Largest CH value evaluated during this start.
  double max_value_seen = 0.0;
};

struct ChOptimizationResult {
  CHEvaluation best;
  int best_index = 0;
  std::vector<ChStartTrace> trace;
  double max_value_seen = 0.0;
  std::uint64_t seed = 0;
};

ChOptimizationResult optimize_ch(const ChSearchSpace& space, const ChOptimizerConfig& config = {});

struct SweepResult {
  std::vector<double> alpha;
  std::vector<double> alpha_prime;
  /// values(i, j) at (alpha[i], alpha_prime[j]).
  Eigen::MatrixXd values;
  std::vector<std::vector<ChSettings>> argmin;
  /// Largest CH value seen in any cell's search.
  double max_value_seen = 0.0;
};

/// n equally spaced points over [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int n);

/// Per cell, CH minimized over chi's and theta's with the unprimed
/// amplitudes at alpha and primed at alpha'.  Cell (i, j) also starts from
/// the optimum of (i, j-1).  Rows run in parallel.
SweepResult sweep_alpha_landscape(std::span<const double> alpha_grid,
                                  std::span<const double> alpha_prime_grid,
                                  const ChOptimizerConfig& config = {});

}  // namespace fockbell
