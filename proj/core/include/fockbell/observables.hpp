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

// Rate and intensity observables of the two homodyne stations, their
// correlation functions on the interferometer states, and the closed-form
// amplitudes those correlations follow.

#include "fockbell/fock.hpp"
#include "fockbell/optics.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace fockbell {

enum class RateTarget { c, d, difference };

/// Eigenvalue of the rate observable on |n_c, n_d>; 0 on the vacuum.
double rate_eigenvalue(int n_c, int n_d, RateTarget target);

/// Diagonal with entries f(n_c, n_d) over every basis state of `layout`.
RVector station_diagonal(const ModeLayout& layout, std::string_view mode_c,
                         std::string_view mode_d, const std::function<double(int, int)>& f);

/// Rate operator  Pi n_x / (n_c + n_d) Pi  (or the c-minus-d difference),
/// stored by its diagonal in the (c, d) number basis.
struct RateObservable {
  ModeLayout layout;
  std::string mode_c;
  std::string mode_d;
  RateTarget target = RateTarget::d;
  RVector diagonal;

  /// Dense form; only sensible on small layouts.
  FockOperator to_operator() const;
  double expectation(const FockVector& state) const;
};

RateObservable rate_operator(const ModeLayout& layout, std::string_view mode_c,
                             std::string_view mode_d, RateTarget target);

/// Four-mode state q|vac> + r|single photon> with oscillators set by the
/// two settings, after both measurement stages; modes (c1, d1, d2, c2).
/// `cutoff` = 0 picks each oscillator cutoff by the tail rule.
FockVector measured_state(Complex q, Complex r, const Setting& v1, const Setting& v2,
                          int cutoff = 0);

using StationFunction = std::function<double(int n_c, int n_d)>;

/// <psi| f1(n_c1, n_d1) f2(n_c2, n_d2) |psi> for a state carrying the four
/// output modes.
double station_correlation(const FockVector& measured, const StationFunction& f1,
                           const StationFunction& f2);

struct CorrelatorValue {
  double value = 0.0;
  /// Least-squares amplitude against sin(theta1 - theta2); NaN if not fitted.
  double amplitude = 0.0;
  /// max |E - A sin| over the fit grid.
  double fit_residual = 0.0;
  double alpha = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  int cutoff = 0;
};

struct SineFit {
  double amplitude = 0.0;
  double residual = 0.0;
};

/// Number of points of the uniform theta-difference grid used for fits.
inline constexpr int kSineFitPoints = 24;

/// Fits f(delta) ~ A sin(delta) on delta_k = -pi + 2 pi k / 24.
SineFit fit_sine_amplitude(const std::function<double(double)>& f);

/// <Psi(alpha)| H1(theta1) H2(theta2) |Psi(alpha)> by brute-force Fock
/// evaluation, with the fitted amplitude.
CorrelatorValue rate_correlator_ER(double alpha, double theta1, double theta2,
                                   int cutoff = 0, bool fit = true);

/// Intensity-difference correlator normalized by <n_tot1 n_tot2>.
/// Throws std::domain_error when the normalization vanishes (alpha = 0).
CorrelatorValue intensity_correlator_ET(double alpha, double theta1, double theta2,
                                        int cutoff = 0, bool fit = true);

/// Rate correlator with the oscillators replaced by c-numbers alpha e^{i theta};
/// evaluated on the two-mode (b1, b2) single-photon state.
CorrelatorValue classical_approx_correlator(double alpha, double theta1, double theta2,
                                            int cutoff = 2, bool fit = true);

/// e^{-2a^2}(e^{a^2}-1)^2 / a^2.
double amplitude_AR(double alpha);
/// 1 / (1 + a^2).
double amplitude_AT(double alpha);
/// (1 - e^{-a^2}) / a^2, the rate amplitude normalized by <Pi1 Pi2>.
double amplitude_AR_EW(double alpha);
/// a^2 e^{-2a^2} / (1 + a^2).
double phase_averaged_amplitude(double alpha);

struct PhaseDensity {
  double value = 0.0;
  /// False where the small-alpha form goes negative.
  bool valid = true;
};

/// (1 + 2 a e^{-a^2} cos d) / (2 pi) for |d| <= pi.
PhaseDensity pegg_barnett_density(double alpha, double delta_theta);

/// Trapezoid quadrature of the phase-averaged classical correlator's
/// amplitude on a points x points grid over [-pi, pi]^2.
double phase_averaged_amplitude_quadrature(double alpha, int points = 401);

/// Same average, but each grid point evaluates the classical correlator by
/// Fock numerics instead of its closed form.
double phase_averaged_amplitude_fock(double alpha, int points = 48, int cutoff = 2);

}  // namespace fockbell
