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

#include "fockbell/witness.hpp"

#include "fockbell/observables.hpp"
#include "fockbell/optics.hpp"

#include <boost/math/tools/roots.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace fockbell {

namespace {

constexpr double kPi = std::numbers::pi;

double intensity_difference(int c, int d) { return static_cast<double>(c - d); }
double intensity_total(int c, int d) { return static_cast<double>(c + d); }
double rate_difference(int c, int d) { return rate_eigenvalue(c, d, RateTarget::difference); }
double occupied(int c, int d) { return c + d > 0 ? 1.0 : 0.0; }

FockVector through_station(const FockVector& state, int side, double theta) {
  return apply_measurement_stage(state, side, Setting{kPi / 4.0, 0.0, theta});
}

}  // namespace

std::string_view to_string(WitnessKind k) {
  return k == WitnessKind::intensities ? "intensities" : "rates";
}

WitnessAngles optimal_witness_angles() { return {kPi / 4.0, 0.0}; }

WitnessReport evaluate_witness(const FockVector& state, WitnessKind kind, double theta1,
                               double theta2) {
  const StationFunction diff = kind == WitnessKind::intensities ? intensity_difference : rate_difference;
  const StationFunction total = kind == WitnessKind::intensities ? intensity_total : occupied;

  const std::array<double, 2> t1 = {theta1, theta1 + kPi / 2.0};
  const std::array<double, 2> t2 = {theta2, theta2 - kPi / 2.0};
  const std::array<std::array<double, 2>, 2> sign = {{{1.0, 1.0}, {1.0, -1.0}}};

  WitnessReport r;
  r.kind = kind;
  r.theta1 = theta1;
  r.theta2 = theta2;
  r.amplitude = std::numeric_limits<double>::quiet_NaN();
  double bracket = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const FockVector half = through_station(state, 1, t1[i]);
    for (std::size_t j = 0; j < 2; ++j) {
      const FockVector out = through_station(half, 2, t2[j]);
      bracket += sign[i][j] * station_correlation(out, diff, diff);
      if (i == 0 && j == 0) r.normalization = station_correlation(out, total, total);
    }
  }
  r.value = std::numbers::sqrt2 * r.normalization - bracket;
  r.normalized = r.normalization > 0.0 ? r.value / r.normalization
                                       : std::numeric_limits<double>::quiet_NaN();
  r.detects_entanglement = r.value < -kWitnessTolerance;
  return r;
}

namespace {

WitnessReport on_interferometer(WitnessKind kind, double alpha, double theta1, double theta2,
                                int cutoff) {
  const int l = resolve_cutoff(alpha, cutoff);
  const FockVector psi = prepare_state({0.0, 1.0, alpha, alpha}, l, l);
  WitnessReport r = evaluate_witness(psi, kind, theta1, theta2);
  r.alpha = alpha;
  r.cutoff = l;
  r.amplitude = witness_amplitude(kind, alpha);
  return r;
}

}  // namespace

WitnessReport witness_intensities(double alpha, double theta1, double theta2, int cutoff) {
  return on_interferometer(WitnessKind::intensities, alpha, theta1, theta2, cutoff);
}

WitnessReport witness_rates(double alpha, double theta1, double theta2, int cutoff) {
  return on_interferometer(WitnessKind::rates, alpha, theta1, theta2, cutoff);
}

double witness_amplitude(WitnessKind kind, double alpha) {
  return kind == WitnessKind::intensities ? amplitude_AT(alpha) : amplitude_AR_EW(alpha);
}

double witness_threshold_alpha_sq(WitnessKind kind) {
  auto f = [kind](double x) { return witness_amplitude(kind, std::sqrt(x)) - 0.5; };
  boost::uintmax_t iterations = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, 1e-3, 10.0, boost::math::tools::eps_tolerance<double>(52), iterations);
  return 0.5 * (lo + hi);
}

namespace {

// Coefficients of sum_{i+k<=degree} c_ik (x^dag)^i (y^dag)^k |0,0>, written
// into a (cutoff_x+1) x (cutoff_y+1) amplitude table.
Eigen::MatrixXcd local_polynomial_state(std::mt19937_64& rng, int degree, int lx, int ly) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(lx + 1, ly + 1);
  for (int i = 0; i <= degree; ++i) {
    for (int k = 0; i + k <= degree; ++k) {
      const Complex c(normal(rng), normal(rng));
      // (x^dag)^i (y^dag)^k |0,0> = sqrt(i! k!) |i, k>.
      t(i, k) = c * std::sqrt(std::tgamma(i + 1.0) * std::tgamma(k + 1.0));
    }
  }
  return t;
}

}  // namespace

FockVector random_separable_state(const ModeLayout& layout, std::uint64_t seed, int degree) {
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  const std::array<std::string_view, 4> names = {modes::a1, modes::b1, modes::a2, modes::b2};
  std::array<std::size_t, 4> pos{};
  for (std::size_t k = 0; k < 4; ++k) {
    pos[k] = layout.position(names[k]);
    if (layout.modes()[pos[k]].cutoff < degree) {
      throw CutoffError(0.0, layout.modes()[pos[k]].cutoff, degree);
    }
  }
  const auto cut = [&](std::size_t k) { return layout.modes()[pos[k]].cutoff; };

  for (std::uint64_t sub = 0;; ++sub) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (sub + 1)));
    const Eigen::MatrixXcd f = local_polynomial_state(rng, degree, cut(0), cut(1));
    const Eigen::MatrixXcd g = local_polynomial_state(rng, degree, cut(2), cut(3));
    if (f.norm() == 0.0 || g.norm() == 0.0) continue;
    CVector amps(static_cast<Eigen::Index>(layout.dimension()));
    for (std::size_t i = 0; i < layout.dimension(); ++i) {
      amps[static_cast<Eigen::Index>(i)] =
          f(layout.occupation(i, pos[0]), layout.occupation(i, pos[1])) *
          g(layout.occupation(i, pos[2]), layout.occupation(i, pos[3]));
    }
    return FockVector(layout, std::move(amps)).normalized();
  }
}

double factorization_defect(const FockVector& state, std::uint64_t seed, int trials) {
  const ModeLayout& layout = state.layout();
  if (layout.mode_count() != 4 || layout.position(modes::a1) > 1 || layout.position(modes::b1) > 1) {
    throw LayoutError("factorization check expects modes (a1, b1) followed by (b2, a2)");
  }
  const auto d1 = static_cast<Eigen::Index>((layout.modes()[0].cutoff + 1) * (layout.modes()[1].cutoff + 1));
  const auto d2 = static_cast<Eigen::Index>(layout.dimension()) / d1;
  const FockVector psi = state.normalized();
  // Row-major basis: psi(i1 * d2 + i2) = X(i1, i2).
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
      psi.amplitudes().data(), d1, d2);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto hermitian = [&](Eigen::Index n) {
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
    }
    return CMatrix(0.5 * (m + m.adjoint()));
  };
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CMatrix o1 = hermitian(d1), o2 = hermitian(d2);
    const Complex joint = (x.conjugate().cwiseProduct(o1 * x * o2.transpose())).sum();
    const Complex e1 = (x.conjugate().cwiseProduct(o1 * x)).sum();
    const Complex e2 = (x.conjugate().cwiseProduct(x * o2.transpose())).sum();
    worst = std::max(worst, std::abs(joint - e1 * e2));
  }
  return worst;
}

}  // namespace fockbell
