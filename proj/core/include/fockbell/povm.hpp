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

// Effective single-mode measurement operators on a signal mode b: the
// coherent oscillator and the station optics folded into one element.
//
// Two constructions are provided.  The series forms evaluate the closed
// Poisson-weighted sums directly; the sandwich form propagates the station
// observable and contracts it with the oscillator amplitudes numerically.

#include "fockbell/fock.hpp"
#include "fockbell/observables.hpp"
#include "fockbell/optics.hpp"

#include <string>

namespace fockbell {

enum class PovmKind { homodyne_difference, rate_d };

struct PovmElement {
  PovmKind kind = PovmKind::rate_d;
  /// For homodyne_difference chi is pi/4.
  Setting setting;
  /// Single mode named "b".
  FockOperator matrix;
  int n_max = 0;
  int m_max = 0;
  /// Upper estimate of the discarded n-terms.
  double tail_bound = 0.0;
};

/// Homodyne-difference element for a balanced station.  `cutoff` is the
/// signal-mode cutoff; `n_max` = 0 picks the series length by the tail rule.
PovmElement povm_homodyne(double alpha, double theta, int cutoff, int n_max = 0);

/// Rate element for the d output of a station with arbitrary beamsplitter.
PovmElement povm_rate(const Setting& setting, int cutoff, int n_max = 0);

/// <alpha| U^dag F U |alpha>_a as an operator on mode "b", for the station
/// observable F = rate `target`; `oscillator_cutoff` = 0 uses the tail rule.
FockOperator povm_sandwich(const Setting& setting, RateTarget target, int cutoff,
                           int oscillator_cutoff = 0);

/// <psi| M1 (x) M2 |psi> for a state over (b1, b2).
double povm_expectation(const FockVector& signal, const FockOperator& m1, const FockOperator& m2);
/// <psi| M on station `side` |psi>.
double povm_local_expectation(const FockVector& signal, int side, const FockOperator& m);

enum class PovmScenario { homodyne, rate };

struct EquivalenceReport {
  PovmScenario scenario = PovmScenario::rate;
  double max_deviation = 0.0;
  int grid_points = 0;
  /// Rate scenario: max |M(chi=0, alpha1) - (I - |0><0|)|; zero only at alpha1 = 0.
  double projector_gap = 0.0;
  std::string note;
};

/// Compares full four-mode expectations with the two-mode element form on a
/// 24-point theta1 grid.  Homodyne uses `alpha` at both stations and
/// v2.theta; rate uses v1 and v2 with theta1 replaced by the grid value.
/// `cutoff` is the oscillator cutoff of the four-mode path (0 = auto).
EquivalenceReport verify_povm_equivalence(PovmScenario scenario, const Setting& v1,
                                          const Setting& v2, double alpha, int cutoff = 0);

}  // namespace fockbell
