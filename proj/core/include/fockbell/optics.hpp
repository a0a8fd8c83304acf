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

#include "fockbell/fock.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace fockbell {

/// Canonical mode names of the two-station interferometer.
namespace modes {
inline constexpr std::string_view a1 = "a1";
inline constexpr std::string_view b1 = "b1";
inline constexpr std::string_view b2 = "b2";
inline constexpr std::string_view a2 = "a2";
inline constexpr std::string_view c1 = "c1";
inline constexpr std::string_view d1 = "d1";
inline constexpr std::string_view c2 = "c2";
inline constexpr std::string_view d2 = "d2";
}  // namespace modes

/// Lossless two-port beamsplitter; transmission coefficient cos^2(chi),
/// theta is the phase picked up on reflection.
struct BeamsplitterParams {
  double chi = 0.0;
  double theta = 0.0;
};

/// Mode transformation (c, d)^T = U (a, b)^T with
///   U = [[cos chi, e^{-i theta} sin chi], [-e^{i theta} sin chi, cos chi]].
Eigen::Matrix2cd mode_matrix(const BeamsplitterParams& params);

/// One local measurement: beamsplitter (chi, theta) plus the real
/// amplitude of the auxiliary coherent field fed into its a-port.
struct Setting {
  double chi = 0.0;
  double alpha = 0.0;
  double theta = 0.0;

  BeamsplitterParams beamsplitter() const { return {chi, theta}; }
  bool operator==(const Setting&) const = default;
};

/// Fock-space lift of a beamsplitter, one dense block per total photon
/// number N.  block(N)(j, k) is the amplitude of |j, N-j>_{cd} produced by
/// |k, N-k>_{ab}.  Each block is exactly unitary.
class BeamsplitterLift {
 public:
  BeamsplitterLift(const BeamsplitterParams& params, int max_total);

  const BeamsplitterParams& params() const noexcept { return params_; }
  int max_total() const noexcept { return static_cast<int>(blocks_.size()) - 1; }
  const CMatrix& block(int total) const { return blocks_.at(static_cast<std::size_t>(total)); }

 private:
  BeamsplitterParams params_;
  std::vector<CMatrix> blocks_;
};

/// Dense unitary on `layout` acting on (mode_a, mode_b), identity elsewhere.
/// Both modes must share a cutoff L; photon-number blocks with N <= L are
/// exactly unitary, higher blocks are truncated by the layout.
///
/// Heisenberg action (same-slot convention):
///   U^dag a U = U00 a + U01 b,   U^dag b U = U10 a + U11 b.
FockOperator beamsplitter_unitary(const ModeLayout& layout, std::string_view mode_a,
                                  std::string_view mode_b, const BeamsplitterParams& params);

/// Schroedinger-picture propagation through a beamsplitter.  The two input
/// modes are replaced, in place, by `out_a`/`out_b` whose cutoffs are the
/// sum of the input cutoffs, so no amplitude is lost to truncation.
FockVector propagate(const FockVector& state, std::string_view mode_a,
                     std::string_view mode_b, const BeamsplitterParams& params,
                     std::string out_a, std::string out_b);

/// Source parameters: q|0>_s + r|1>_s on the central splitter, real
/// oscillator amplitudes alpha1, alpha2.
struct InitialStateParams {
  Complex q = 0.0;
  Complex r = 1.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  /// Throws std::invalid_argument unless |q|^2 + |r|^2 = 1 within 1e-12.
  void validate() const;
};

/// Parameters of the symmetric central beamsplitter (chi = pi/4, theta = -pi/2).
BeamsplitterParams central_beamsplitter();

/// q|00> + (r/sqrt 2)(|01> + i|10>) on (b1, b2), cutoff 1, obtained by
/// sending the mode-s superposition through the central beamsplitter.
FockVector signal_state(Complex q, Complex r);

/// |alpha1>_{a1} (x) signal (x) |alpha2>_{a2} over (a1, b1, b2, a2).
/// Oscillator cutoffs of 0 are resolved by the tail rule.
FockVector prepare_state(const InitialStateParams& params, int cutoff1 = 0,
                         int cutoff2 = 0);

/// Propagates (a_j, b_j) through U_BS(chi_j, theta_j); outputs relabeled
/// (c_j, d_j).  The setting's alpha is not used here: it belongs to the
/// prepared state.
FockVector apply_measurement_stage(const FockVector& state, int side,
                                   const Setting& setting);

/// Local mode names (a, b, c, d) for side 1 or 2.
struct StationModes {
  std::string_view a, b, c, d;
};
StationModes station_modes(int side);

}  // namespace fockbell
