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

#include "fockbell/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fockbell {

namespace {

constexpr double kPi = std::numbers::pi;

void require_signal_cutoff(double alpha, int cutoff) {
  if (cutoff < 1) throw CutoffError(alpha, cutoff, 1);
}

// w[n] = e^{-a^2} a^{2n} / n!  for n = 0..n_max.
std::vector<double> poisson_weights(double alpha, int n_max) {
  std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
  w[0] = std::exp(-alpha * alpha);
  for (int n = 1; n <= n_max; ++n) w[n] = w[n - 1] * alpha * alpha / n;
  return w;
}

// e^{-a^2} sum_n a^{2n+1}/n! sqrt(m)/(n+m) (e^{i theta}|m><m-1| + h.c.).
CMatrix homodyne_series(double alpha, double theta, int cutoff, const std::vector<double>& w) {
  CMatrix m = CMatrix::Zero(cutoff + 1, cutoff + 1);
  const Complex phase = std::polar(1.0, theta);
  for (int k = 1; k <= cutoff; ++k) {
    double s = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n) {
      s += alpha * w[n] * std::sqrt(static_cast<double>(k)) / (static_cast<double>(n) + k);
    }
    m(k, k - 1) = phase * s;
    m(k - 1, k) = std::conj(phase) * s;
  }
  return m;
}

double series_tail(double alpha, int n_max) {
  return std::max(1.0, alpha) * poisson_tail(alpha, n_max);
}

// Tail rule, tightened so the discarded terms stay an order below the
// tolerance after the extra factor alpha of the off-diagonal series.
int series_length(double alpha, int n_max) {
  if (n_max > 0) return n_max;
  int n = minimal_cutoff(alpha);
  while (series_tail(alpha, n) > 0.1 * kTailTolerance) ++n;
  return n;
}

}  // namespace

PovmElement povm_homodyne(double alpha, double theta, int cutoff, int n_max) {
  require_signal_cutoff(alpha, cutoff);
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  PovmElement e;
  e.kind = PovmKind::homodyne_difference;
  e.setting = {kPi / 4.0, alpha, theta};
  e.n_max = series_length(alpha, n_max);
  e.m_max = cutoff;
  e.tail_bound = series_tail(alpha, e.n_max);
  e.matrix = FockOperator(ModeLayout{{"b", cutoff}},
                          homodyne_series(alpha, theta, cutoff, poisson_weights(alpha, e.n_max)),
                          {true, false});
  return e;
}

PovmElement povm_rate(const Setting& setting, int cutoff, int n_max) {
  require_signal_cutoff(setting.alpha, cutoff);
  if (setting.alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  PovmElement e;
  e.kind = PovmKind::rate_d;
  e.setting = setting;
  e.n_max = series_length(setting.alpha, n_max);
  e.m_max = cutoff;
  e.tail_bound = series_tail(setting.alpha, e.n_max);

  const auto w = poisson_weights(setting.alpha, e.n_max);
  const double s2 = std::pow(std::sin(setting.chi), 2);
  const double c2 = std::pow(std::cos(setting.chi), 2);
  CMatrix m = -0.5 * std::sin(2.0 * setting.chi) *
              homodyne_series(setting.alpha, setting.theta, cutoff, w);
  for (int k = 0; k <= cutoff; ++k) {
    double d = k >= 1 ? c2 * w[0] : 0.0;
    for (std::size_t n = 1; n < w.size(); ++n) {
      const double nn = static_cast<double>(n);
      d += w[n] * (s2 * nn + c2 * k) / (nn + k);
    }
    m(k, k) = d;
  }
  e.matrix = FockOperator(ModeLayout{{"b", cutoff}}, std::move(m), {true, false});
  return e;
}

FockOperator povm_sandwich(const Setting& setting, RateTarget target, int cutoff,
                           int oscillator_cutoff) {
  require_signal_cutoff(setting.alpha, cutoff);
  const int lo = resolve_cutoff(setting.alpha, oscillator_cutoff);
  const CVector amp = coherent_state(setting.alpha, lo).amplitudes();
  const BeamsplitterLift lift(setting.beamsplitter(), lo + cutoff);

  CMatrix m = CMatrix::Zero(cutoff + 1, cutoff + 1);
  for (int mp = 0; mp <= cutoff; ++mp) {
    for (int mm = 0; mm <= cutoff; ++mm) {
      Complex acc = 0.0;
      // Oscillator occupations k (ket) and kp (bra) share the total N.
      for (int k = 0; k <= lo; ++k) {
        const int total = k + mm;
        const int kp = total - mp;
        if (kp < 0 || kp > lo) continue;
        const CMatrix& blk = lift.block(total);
        Complex inner_sum = 0.0;
        for (int j = 0; j <= total; ++j) {
          const double f = rate_eigenvalue(j, total - j, target);
          if (f == 0.0) continue;
          inner_sum += std::conj(blk(j, kp)) * f * blk(j, k);
        }
        acc += std::conj(amp[kp]) * amp[k] * inner_sum;
      }
      m(mp, mm) = acc;
    }
  }
  return FockOperator(ModeLayout{{"b", cutoff}}, std::move(m), {true, false});
}

namespace {

FockOperator on_mode(const FockOperator& m, std::string_view name) {
  return FockOperator(m.layout().renamed("b", std::string(name)), m.matrix(), m.flags());
}

}  // namespace

double povm_expectation(const FockVector& signal, const FockOperator& m1, const FockOperator& m2) {
  const ModeLayout layout{{std::string(modes::b1), m1.layout().modes()[0].cutoff},
                          {std::string(modes::b2), m2.layout().modes()[0].cutoff}};
  const FockVector psi = embed(signal, layout);
  return expectation(psi, tensor({on_mode(m1, modes::b1), on_mode(m2, modes::b2)})).real();
}

double povm_local_expectation(const FockVector& signal, int side, const FockOperator& m) {
  const int c = m.layout().modes()[0].cutoff;
  const ModeLayout one{{"b", c}};
  if (side == 1) return povm_expectation(signal, m, identity(one));
  if (side == 2) return povm_expectation(signal, identity(one), m);
  throw std::invalid_argument("side must be 1 or 2");
}

EquivalenceReport verify_povm_equivalence(PovmScenario scenario, const Setting& v1,
                                          const Setting& v2, double alpha, int cutoff) {
  constexpr int kGrid = 24;
  EquivalenceReport report;
  report.scenario = scenario;
  report.grid_points = kGrid;
  const FockVector psi = signal_state(0.0, 1.0);
  const auto rd = [](int c, int d) { return rate_eigenvalue(c, d, RateTarget::d); };
  const auto one = [](int, int) { return 1.0; };

  for (int k = 0; k < kGrid; ++k) {
    const double theta1 = -kPi + 2.0 * kPi * k / kGrid;
    double full = 0.0, reduced = 0.0;
    if (scenario == PovmScenario::homodyne) {
      const int l = resolve_cutoff(alpha, cutoff);
      full = rate_correlator_ER(alpha, theta1, v2.theta, l, false).value;
      reduced = povm_expectation(psi, povm_homodyne(alpha, theta1, 1).matrix,
                                 povm_homodyne(alpha, v2.theta, 1).matrix);
    } else {
      const Setting u1{v1.chi, v1.alpha, theta1};
      const FockVector out = measured_state(0.0, 1.0, u1, v2, cutoff);
      const FockOperator m1 = povm_rate(u1, 1).matrix;
      const FockOperator m2 = povm_rate(v2, 1).matrix;
      full = station_correlation(out, rd, rd);
      reduced = povm_expectation(psi, m1, m2);
      report.max_deviation =
          std::max({report.max_deviation,
                    std::abs(station_correlation(out, rd, one) - povm_local_expectation(psi, 1, m1)),
                    std::abs(station_correlation(out, one, rd) - povm_local_expectation(psi, 2, m2))});
    }
    report.max_deviation = std::max(report.max_deviation, std::abs(full - reduced));
  }

  if (scenario == PovmScenario::rate) {
    const PovmElement straight = povm_rate({0.0, v1.alpha, v1.theta}, 1);
    CMatrix projector = CMatrix::Identity(2, 2);
    projector(0, 0) = 0.0;
    report.projector_gap = (straight.matrix.matrix() - projector).cwiseAbs().maxCoeff();
    if (report.projector_gap > 1e-12) {
      report.note = "chi=0 element differs from I - |0><0| by " +
                    std::to_string(report.projector_gap) + " at alpha=" +
                    std::to_string(v1.alpha) + "; the reduction holds only at alpha=0";
    }
  }
  return report;
}

}  // namespace fockbell
