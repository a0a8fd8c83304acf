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

// Separability conditions built from the balanced homodyne stations.
//
//   W = sqrt2 <N1 N2> - < D1(t1) D2(t2) + D1(t1) D2(t2 - pi/2)
//                        + D1(t1 + pi/2) D2(t2) - D1(t1 + pi/2) D2(t2 - pi/2) >
//
// with N = n_c + n_d, D = n_c - n_d for intensities and N = Pi,
// D = (n_c - n_d)/(n_c + n_d) for rates.  W >= 0 on separable states.

#include "fockbell/fock.hpp"

#include <cstdint>
#include <string_view>

namespace fockbell {

enum class WitnessKind { intensities, rates };

std::string_view to_string(WitnessKind k);

/// Values below -kWitnessTolerance count as detection.
inline constexpr double kWitnessTolerance = 1e-9;

struct WitnessReport {
  WitnessKind kind = WitnessKind::intensities;
  double alpha = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double value = 0.0;
  /// <N1 N2>; `normalized` = value / normalization (NaN when it vanishes).
  double normalization = 0.0;
  double normalized = 0.0;
  bool detects_entanglement = false;
  /// Closed-form correlation amplitude on the interferometer state; NaN for
  /// arbitrary input states.
  double amplitude = 0.0;
  int cutoff = 0;
};

/// Phases minimizing W on the interferometer state.
struct WitnessAngles {
  double theta1;
  double theta2;
};
WitnessAngles optimal_witness_angles();

/// W on an arbitrary state over (a1, b1, b2, a2).
WitnessReport evaluate_witness(const FockVector& state, WitnessKind kind, double theta1,
                               double theta2);

/// W on the single-photon state with oscillators of amplitude alpha at both stations.
WitnessReport witness_intensities(double alpha, double theta1, double theta2, int cutoff = 0);
WitnessReport witness_rates(double alpha, double theta1, double theta2, int cutoff = 0);

/// Correlation amplitude entering the minimal normalized witness
/// sqrt2 - 2 sqrt2 A.
double witness_amplitude(WitnessKind kind, double alpha);

/// alpha^2 where the amplitude crosses 1/2.
double witness_threshold_alpha_sq(WitnessKind kind);

/// Normalized product of two random local states: polynomials of total
/// degree <= `degree` in (a1^dag, b1^dag) and (a2^dag, b2^dag) on vacuum,
/// with complex Gaussian coefficients.  `layout` must hold a1, b1, b2, a2
/// with cutoffs >= degree.
FockVector random_separable_state(const ModeLayout& layout, std::uint64_t seed, int degree);

/// max |<O1 O2> - <O1><O2>| over `trials` random Hermitian local
/// observables.  Requires the station-1 modes (a1, b1) to precede (b2, a2).
double factorization_defect(const FockVector& state, std::uint64_t seed, int trials = 8);

}  // namespace fockbell
