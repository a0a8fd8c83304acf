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

#include "fockbell/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fockbell {

namespace {

constexpr double kPi = std::numbers::pi;
// Below this a^2 the closed forms switch to their analytic limits.
constexpr double kSmallAlphaSq = 1e-8;

FockVector tw_state(double alpha, double theta1, double theta2, int cutoff) {
  return measured_state(0.0, 1.0, {kPi / 4.0, alpha, theta1}, {kPi / 4.0, alpha, theta2},
                        cutoff);
}

}  // namespace

double rate_eigenvalue(int n_c, int n_d, RateTarget target) {
  const int total = n_c + n_d;
  if (total == 0) return 0.0;
  switch (target) {
    case RateTarget::c:
      return static_cast<double>(n_c) / total;
    case RateTarget::d:
      return static_cast<double>(n_d) / total;
    case RateTarget::difference:
      return static_cast<double>(n_c - n_d) / total;
  }
  return 0.0;
}

RVector station_diagonal(const ModeLayout& layout, std::string_view mode_c,
                         std::string_view mode_d, const std::function<double(int, int)>& f) {
  const std::size_t pc = layout.position(mode_c);
  const std::size_t pd = layout.position(mode_d);
  RVector diag(static_cast<Eigen::Index>(layout.dimension()));
  for (std::size_t i = 0; i < layout.dimension(); ++i) {
    diag[static_cast<Eigen::Index>(i)] = f(layout.occupation(i, pc), layout.occupation(i, pd));
  }
  return diag;
}

FockOperator RateObservable::to_operator() const {
  return diagonal_operator(layout, [&](std::size_t i) {
    return diagonal[static_cast<Eigen::Index>(i)];
  });
}

double RateObservable::expectation(const FockVector& state) const {
  if (!(state.layout() == layout)) throw LayoutError("layout mismatch for rate observable");
  return fockbell::expectation(state, diagonal);
}

RateObservable rate_operator(const ModeLayout& layout, std::string_view mode_c,
                             std::string_view mode_d, RateTarget target) {
  RateObservable r;
  r.layout = layout;
  r.mode_c = std::string(mode_c);
  r.mode_d = std::string(mode_d);
  r.target = target;
  r.diagonal = station_diagonal(layout, mode_c, mode_d,
                                [target](int nc, int nd) { return rate_eigenvalue(nc, nd, target); });
  return r;
}

FockVector measured_state(Complex q, Complex r, const Setting& v1, const Setting& v2,
                          int cutoff) {
  InitialStateParams params{q, r, v1.alpha, v2.alpha};
  FockVector psi = prepare_state(params, cutoff, cutoff);
  psi = apply_measurement_stage(psi, 1, v1);
  return apply_measurement_stage(psi, 2, v2);
}

SineFit fit_sine_amplitude(const std::function<double(double)>& f) {
  std::array<double, kSineFitPoints> values{};
  std::array<double, kSineFitPoints> sines{};
  double num = 0.0, den = 0.0;
  for (int k = 0; k < kSineFitPoints; ++k) {
    const double delta = -kPi + 2.0 * kPi * k / kSineFitPoints;
    values[k] = f(delta);
    sines[k] = std::sin(delta);
    num += values[k] * sines[k];
    den += sines[k] * sines[k];
  }
  SineFit fit;
  fit.amplitude = num / den;
  for (int k = 0; k < kSineFitPoints; ++k) {
    fit.residual = std::max(fit.residual, std::abs(values[k] - fit.amplitude * sines[k]));
  }
  return fit;
}

double station_correlation(const FockVector& measured, const StationFunction& f1,
                           const StationFunction& f2) {
  const ModeLayout& layout = measured.layout();
  const std::size_t pc1 = layout.position(modes::c1), pd1 = layout.position(modes::d1);
  const std::size_t pc2 = layout.position(modes::c2), pd2 = layout.position(modes::d2);
  auto table = [&](std::size_t pc, std::size_t pd, const StationFunction& f) {
    const int lc = layout.modes()[pc].cutoff, ld = layout.modes()[pd].cutoff;
    Eigen::MatrixXd t(lc + 1, ld + 1);
    for (int c = 0; c <= lc; ++c) {
      for (int d = 0; d <= ld; ++d) t(c, d) = f(c, d);
    }
    return t;
  };
  const Eigen::MatrixXd t1 = table(pc1, pd1, f1);
  const Eigen::MatrixXd t2 = table(pc2, pd2, f2);
  const CVector& amps = measured.amplitudes();
  double total = 0.0;
  for (std::size_t i = 0; i < layout.dimension(); ++i) {
    const double w = std::norm(amps[static_cast<Eigen::Index>(i)]);
    if (w == 0.0) continue;
    total += w * t1(layout.occupation(i, pc1), layout.occupation(i, pd1)) *
             t2(layout.occupation(i, pc2), layout.occupation(i, pd2));
  }
  return total;
}

namespace {

double difference_rate(int c, int d) { return rate_eigenvalue(c, d, RateTarget::difference); }

CorrelatorValue correlator(double alpha, double theta1, double theta2, int cutoff, bool fit,
                           const std::function<double(double, double)>& evaluate) {
  CorrelatorValue v;
  v.alpha = alpha;
  v.theta1 = theta1;
  v.theta2 = theta2;
  v.cutoff = cutoff;
  v.value = evaluate(theta1, theta2);
  v.amplitude = std::numeric_limits<double>::quiet_NaN();
  if (fit) {
    const SineFit s = fit_sine_amplitude([&](double delta) { return evaluate(delta, 0.0); });
    v.amplitude = s.amplitude;
    v.fit_residual = s.residual;
  }
  return v;
}

}  // namespace

CorrelatorValue rate_correlator_ER(double alpha, double theta1, double theta2, int cutoff,
                                   bool fit) {
  const int l = resolve_cutoff(alpha, cutoff);
  return correlator(alpha, theta1, theta2, l, fit, [&](double t1, double t2) {
    return station_correlation(tw_state(alpha, t1, t2, l), difference_rate, difference_rate);
  });
}

CorrelatorValue intensity_correlator_ET(double alpha, double theta1, double theta2, int cutoff,
                                        bool fit) {
  const int l = resolve_cutoff(alpha, cutoff);
  return correlator(alpha, theta1, theta2, l, fit, [&](double t1, double t2) {
    const FockVector out = tw_state(alpha, t1, t2, l);
    const auto diff = [](int c, int d) { return static_cast<double>(c - d); };
    const auto total = [](int c, int d) { return static_cast<double>(c + d); };
    const double norm = station_correlation(out, total, total);
    if (norm < 1e-14) {
      throw std::domain_error("intensity correlator undefined: <n_tot1 n_tot2> vanishes");
    }
    return station_correlation(out, diff, diff) / norm;
  });
}

namespace {

// alpha (e^{i theta} b^dag + e^{-i theta} b), sandwiched by (alpha^2 + n)^{-1/2}.
CMatrix classical_station(double alpha, double theta, int cutoff) {
  const ModeLayout single{{"b", cutoff}};
  const CMatrix lower = ladder(single, "b", LadderKind::lower).matrix();
  const Complex phase = std::polar(1.0, theta);
  const CMatrix numerator = alpha * (phase * lower.adjoint() + std::conj(phase) * lower);
  RVector inv_sqrt(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    const double den = alpha * alpha + n;
    inv_sqrt[n] = den > 0.0 ? 1.0 / std::sqrt(den) : 0.0;
  }
  return inv_sqrt.asDiagonal() * numerator * inv_sqrt.asDiagonal();
}

}  // namespace

CorrelatorValue classical_approx_correlator(double alpha, double theta1, double theta2,
                                            int cutoff, bool fit) {
  if (cutoff < 1) throw std::invalid_argument("classical correlator needs cutoff >= 1");
  const ModeLayout layout{{std::string(modes::b1), cutoff}, {std::string(modes::b2), cutoff}};
  const FockVector psi = embed(signal_state(0.0, 1.0), layout);
  auto evaluate = [&](double t1, double t2) {
    const FockOperator o1(ModeLayout{{std::string(modes::b1), cutoff}},
                          classical_station(alpha, t1, cutoff));
    const FockOperator o2(ModeLayout{{std::string(modes::b2), cutoff}},
                          classical_station(alpha, t2, cutoff));
    return expectation(psi, tensor({o1, o2})).real();
  };
  return correlator(alpha, theta1, theta2, cutoff, fit, evaluate);
}

double amplitude_AR(double alpha) {
  const double x = alpha * alpha;
  if (x < kSmallAlphaSq) return x;  // leading order; exact limit 0 at alpha = 0
  const double p = -std::expm1(-x);  // 1 - e^{-x}
  return p * p / x;
}

double amplitude_AT(double alpha) { return 1.0 / (1.0 + alpha * alpha); }

double amplitude_AR_EW(double alpha) {
  const double x = alpha * alpha;
  if (x < kSmallAlphaSq) return 1.0 - 0.5 * x;
  return -std::expm1(-x) / x;
}

double phase_averaged_amplitude(double alpha) {
  const double x = alpha * alpha;
  return x * std::exp(-2.0 * x) / (1.0 + x);
}

PhaseDensity pegg_barnett_density(double alpha, double delta_theta) {
  if (std::abs(delta_theta) > kPi + 1e-15) {
    throw std::invalid_argument("phase offset must lie in [-pi, pi]");
  }
  PhaseDensity p;
  p.value = (1.0 + 2.0 * alpha * std::exp(-alpha * alpha) * std::cos(delta_theta)) / (2.0 * kPi);
  p.valid = p.value >= 0.0;
  return p;
}

namespace {

// Closed trapezoid over [-pi, pi]^2 of P(phi1) P(phi2) g(phi1, phi2).
double phase_average(double alpha, int points, const std::function<double(double, double)>& g) {
  if (points < 3) throw std::invalid_argument("quadrature needs at least 3 points");
  const double h = 2.0 * kPi / (points - 1);
  std::vector<double> nodes(points), weights(points);
  for (int k = 0; k < points; ++k) {
    nodes[k] = -kPi + h * k;
    weights[k] = (k == 0 || k == points - 1 ? 0.5 * h : h) *
                 pegg_barnett_density(alpha, std::clamp(nodes[k], -kPi, kPi)).value;
  }
  double total = 0.0;
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) total += weights[i] * weights[j] * g(nodes[i], nodes[j]);
  }
  return total;
}

}  // namespace

double phase_averaged_amplitude_quadrature(double alpha, int points) {
  // Amplitude read off at theta1 - theta2 = pi/2.
  return amplitude_AT(alpha) *
         phase_average(alpha, points, [](double p1, double p2) {
           return std::sin(kPi / 2.0 + p1 - p2);
         });
}

double phase_averaged_amplitude_fock(double alpha, int points, int cutoff) {
  return phase_average(alpha, points, [&](double p1, double p2) {
    return classical_approx_correlator(alpha, kPi / 2.0 + p1, p2, cutoff, false).value;
  });
}

}  // namespace fockbell
