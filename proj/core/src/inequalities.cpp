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

#include "fockbell/inequalities.hpp"

#include "fockbell/observables.hpp"
#include "fockbell/parallel.hpp"
#include "fockbell/povm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fockbell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSmallAlphaSq = 1e-8;

// (e^x - 1)/x and (1 + e^x (x - 1))/x with their x -> 0 limits.
double g_factor(double x) { return x < kSmallAlphaSq ? 1.0 + 0.5 * x : std::expm1(x) / x; }
double h_factor(double x) { return x < kSmallAlphaSq ? 0.5 * x : std::exp(x) - g_factor(x); }

double sq(double v) { return v * v; }

}  // namespace

std::string_view to_string(InequalityId id) {
  switch (id) {
    case InequalityId::chsh_rates:
      return "chsh-rates";
    case InequalityId::chsh_twc:
      return "chsh-twc";
    case InequalityId::ch_rates:
      return "ch-rates";
  }
  return "unknown";
}

std::string_view to_string(ChMethod m) {
  switch (m) {
    case ChMethod::closed_form:
      return "closed-form";
    case ChMethod::fock_numeric:
      return "fock-numeric";
    case ChMethod::povm:
      return "povm";
  }
  return "unknown";
}

InequalityReport make_report(InequalityId id, double value, double lower, double upper) {
  InequalityReport r;
  r.id = id;
  r.value = value;
  r.lower_bound = lower;
  r.upper_bound = upper;
  r.margin = std::max(lower - value, value - upper);
  r.violated = r.margin > kViolationTolerance;
  return r;
}

ChshAngles optimal_chsh_angles() { return {0.0, kPi / 2.0, -kPi / 4.0, -3.0 * kPi / 4.0}; }

double chsh_sine_combination(const ChshAngles& a) {
  return std::sin(a.theta1 - a.theta2) + std::sin(a.theta1_prime - a.theta2) +
         std::sin(a.theta1 - a.theta2_prime) - std::sin(a.theta1_prime - a.theta2_prime);
}

namespace {

constexpr const char* kTwcCaveat =
    "intensity correlators: not a loophole-free Bell test, bound assumes setting-independent "
    "total intensity";

template <class Correlator>
double chsh_combination(const ChshAngles& a, Correlator e) {
  return std::abs(e(a.theta1, a.theta2) + e(a.theta1_prime, a.theta2) +
                  e(a.theta1, a.theta2_prime) - e(a.theta1_prime, a.theta2_prime));
}

}  // namespace

InequalityReport chsh_rates_value(double alpha, const ChshAngles& angles, int cutoff) {
  const int l = resolve_cutoff(alpha, cutoff);
  const double v = chsh_combination(angles, [&](double t1, double t2) {
    return rate_correlator_ER(alpha, t1, t2, l, false).value;
  });
  InequalityReport r = make_report(InequalityId::chsh_rates, v, -2.0, 2.0);
  r.alpha = alpha;
  r.cutoff = l;
  return r;
}

InequalityReport chsh_twc_value(double alpha, const ChshAngles& angles, int cutoff) {
  const int l = resolve_cutoff(alpha, cutoff);
  const double v = chsh_combination(angles, [&](double t1, double t2) {
    return intensity_correlator_ET(alpha, t1, t2, l, false).value;
  });
  InequalityReport r = make_report(InequalityId::chsh_twc, v, -2.0, 2.0);
  r.caveat = kTwcCaveat;
  r.alpha = alpha;
  r.cutoff = l;
  return r;
}

InequalityReport chsh_rates_closed(double alpha, const ChshAngles& angles) {
  InequalityReport r = make_report(
      InequalityId::chsh_rates, amplitude_AR(alpha) * std::abs(chsh_sine_combination(angles)),
      -2.0, 2.0);
  r.alpha = alpha;
  return r;
}

InequalityReport chsh_twc_closed(double alpha, const ChshAngles& angles) {
  InequalityReport r = make_report(
      InequalityId::chsh_twc, amplitude_AT(alpha) * std::abs(chsh_sine_combination(angles)),
      -2.0, 2.0);
  r.caveat = kTwcCaveat;
  r.alpha = alpha;
  return r;
}

ChSettings reference_hardy_settings() {
  const double a = std::sqrt(0.5);
  return {{0.0, 0.0, 0.0},
          {3.0 * kPi / 20.0, a, 0.0},
          {0.0, 0.0, 0.0},
          {3.0 * kPi / 20.0, a, -kPi / 2.0}};
}

double ch_correlator_K_closed(const Setting& v1, const Setting& v2) {
  const double x1 = sq(v1.alpha), x2 = sq(v2.alpha);
  const double e1 = std::expm1(x1), e2 = std::expm1(x2);
  const double s1 = sq(std::sin(v1.chi)), s2 = sq(std::sin(v2.chi));
  const double c1 = sq(std::cos(v1.chi)), c2 = sq(std::cos(v2.chi));
  const double g1 = g_factor(x1), g2 = g_factor(x2);
  const double bracket =
      (e2 * h_factor(x1) + e1 * h_factor(x2)) * s1 * s2 + e1 * g2 * s1 * c2 + g1 * e2 * c1 * s2 +
      0.5 * v1.alpha * v2.alpha * g1 * g2 * std::sin(2.0 * v1.chi) * std::sin(2.0 * v2.chi) *
          std::sin(v1.theta - v2.theta);
  return 0.5 * std::exp(-x1 - x2) * bracket;
}

double ch_local_S_closed(const Setting& v) {
  const double x = sq(v.alpha);
  return 0.5 * std::exp(-x) *
         (sq(std::sin(v.chi)) * (std::expm1(x) + h_factor(x)) + sq(std::cos(v.chi)) * g_factor(x));
}

namespace {

double rate_d(int c, int d) { return rate_eigenvalue(c, d, RateTarget::d); }
double rate_c(int c, int d) { return rate_eigenvalue(c, d, RateTarget::c); }
double unit(int, int) { return 1.0; }
double occupied(int c, int d) { return c + d > 0 ? 1.0 : 0.0; }

}  // namespace

double ch_correlator_K_numeric(const Setting& v1, const Setting& v2, int cutoff,
                               const SourceState& source) {
  return station_correlation(measured_state(source.q, source.r, v1, v2, cutoff), rate_d, rate_d);
}

double ch_local_S_numeric(const Setting& v, int side, int cutoff, const SourceState& source) {
  const Setting off{};
  if (side == 1) {
    return station_correlation(measured_state(source.q, source.r, v, off, cutoff), rate_d, unit);
  }
  if (side == 2) {
    return station_correlation(measured_state(source.q, source.r, off, v, cutoff), unit, rate_d);
  }
  throw std::invalid_argument("side must be 1 or 2");
}

double ch_correlator_K_povm(const Setting& v1, const Setting& v2, const SourceState& source) {
  return povm_expectation(signal_state(source.q, source.r), povm_rate(v1, 1).matrix,
                          povm_rate(v2, 1).matrix);
}

double ch_local_S_povm(const Setting& v, int side, const SourceState& source) {
  return povm_local_expectation(signal_state(source.q, source.r), side, povm_rate(v, 1).matrix);
}

InequalityReport CHEvaluation::report() const {
  return make_report(InequalityId::ch_rates, value, lower_bound, upper_bound);
}

CHEvaluation ch_rates_value(const ChSettings& s, ChMethod method, int cutoff,
                            const SourceState& source) {
  CHEvaluation e;
  e.settings = s;
  e.method = method;
  e.cutoff = cutoff;
  const std::array<std::pair<const Setting*, const Setting*>, 4> pairs = {
      {{&s.v1, &s.v2}, {&s.v1_prime, &s.v2}, {&s.v1, &s.v2_prime}, {&s.v1_prime, &s.v2_prime}}};
  switch (method) {
    case ChMethod::closed_form:
      if (std::abs(source.q) != 0.0) {
        throw std::invalid_argument("closed-form CH correlators assume q = 0");
      }
      for (std::size_t k = 0; k < 4; ++k) e.K[k] = ch_correlator_K_closed(*pairs[k].first, *pairs[k].second);
      e.S = {ch_local_S_closed(s.v1), ch_local_S_closed(s.v2)};
      break;
    case ChMethod::fock_numeric:
      for (std::size_t k = 0; k < 4; ++k) {
        e.K[k] = ch_correlator_K_numeric(*pairs[k].first, *pairs[k].second, cutoff, source);
      }
      e.S = {ch_local_S_numeric(s.v1, 1, cutoff, source), ch_local_S_numeric(s.v2, 2, cutoff, source)};
      break;
    case ChMethod::povm: {
      const FockVector psi = signal_state(source.q, source.r);
      const FockOperator m1 = povm_rate(s.v1, 1).matrix, m1p = povm_rate(s.v1_prime, 1).matrix;
      const FockOperator m2 = povm_rate(s.v2, 1).matrix, m2p = povm_rate(s.v2_prime, 1).matrix;
      e.K = {povm_expectation(psi, m1, m2), povm_expectation(psi, m1p, m2),
             povm_expectation(psi, m1, m2p), povm_expectation(psi, m1p, m2p)};
      e.S = {povm_local_expectation(psi, 1, m1), povm_local_expectation(psi, 2, m2)};
      break;
    }
  }
  e.value = e.K[0] + e.K[1] + e.K[2] - e.K[3] - e.S[0] - e.S[1];
  return e;
}

AlternativeChValue ch_alternative_form_value(const ChSettings& s, int cutoff) {
  auto joint = [&](const Setting& a, const Setting& b, double (*f1)(int, int),
                   double (*f2)(int, int)) {
    return station_correlation(measured_state(0.0, 1.0, a, b, cutoff), f1, f2);
  };
  AlternativeChValue out;
  out.value = joint(s.v1, s.v2, rate_c, rate_d) + joint(s.v1, s.v2_prime, rate_c, rate_d) +
              joint(s.v1_prime, s.v2_prime, rate_d, rate_d) -
              joint(s.v1_prime, s.v2, rate_d, rate_d) - joint(s.v1, s.v2, rate_c, unit) -
              joint(s.v1, s.v2_prime, unit, rate_d);
  // <(R_tot1 - 1)(R_d2 + R'_d2) - R_tot1>, one term per joint setting.
  auto shifted = [](int c, int d) { return occupied(c, d) - 1.0; };
  out.lower_expression = station_correlation(measured_state(0.0, 1.0, s.v1, s.v2, cutoff), shifted, rate_d) +
                         station_correlation(measured_state(0.0, 1.0, s.v1, s.v2_prime, cutoff), shifted, rate_d) -
                         joint(s.v1, s.v2, occupied, unit);
  out.standard_value = ch_rates_value(s, ChMethod::fock_numeric, cutoff).value;
  return out;
}

int ChSearchSpace::add_variable(std::string name, Bounds b) {
  bounds_.push_back(b);
  names_.push_back(std::move(name));
  return static_cast<int>(bounds_.size()) - 1;
}

void ChSearchSpace::bind(int s, int variable) {
  if (s < 0 || s >= 12) throw std::out_of_range("slot out of range");
  if (variable < 0 || variable >= static_cast<int>(bounds_.size())) {
    throw std::out_of_range("unknown variable");
  }
  slots_[static_cast<std::size_t>(s)] = {variable, 0.0, true};
}

void ChSearchSpace::pin(int s, double value) {
  if (s < 0 || s >= 12) throw std::out_of_range("slot out of range");
  slots_[static_cast<std::size_t>(s)] = {-1, value, true};
}

namespace {

constexpr std::array<const char*, 4> kWhichNames = {"v1", "v1'", "v2", "v2'"};
constexpr std::array<const char*, 3> kComponentNames = {"chi", "alpha", "theta"};

Bounds component_bounds(int c, double alpha_max) {
  switch (c) {
    case ChSearchSpace::chi:
      return {0.0, kPi / 2.0, false};
    case ChSearchSpace::alpha:
      return {0.0, alpha_max, false};
    default:
      return {-kPi, kPi, true};
  }
}

void free_slot(ChSearchSpace& space, int w, int c, double alpha_max = 0.0) {
  const int v = space.add_variable(std::string(kComponentNames[static_cast<std::size_t>(c)]) + "_" +
                                       kWhichNames[static_cast<std::size_t>(w)],
                                   component_bounds(c, alpha_max));
  space.bind(3 * w + c, v);
}

}  // namespace

ChSearchSpace ChSearchSpace::hardy(double alpha_max) {
  ChSearchSpace s;
  for (int c = 0; c < 3; ++c) {
    s.pin(slot(v1, static_cast<Component>(c)), 0.0);
    s.pin(slot(v2, static_cast<Component>(c)), 0.0);
  }
  for (Which w : {v1_prime, v2_prime}) {
    for (int c = 0; c < 3; ++c) free_slot(s, w, c, alpha_max);
  }
  return s;
}

ChSearchSpace ChSearchSpace::equal_amplitudes(double alpha_max) {
  ChSearchSpace s;
  const int a = s.add_variable("alpha", component_bounds(alpha, alpha_max));
  for (int w = 0; w < 4; ++w) {
    free_slot(s, w, chi);
    s.bind(3 * w + alpha, a);
    free_slot(s, w, theta);
  }
  return s;
}

ChSearchSpace ChSearchSpace::fixed_amplitudes(double a, double a_prime) {
  ChSearchSpace s;
  for (int w = 0; w < 4; ++w) {
    free_slot(s, w, chi);
    s.pin(3 * w + alpha, (w == v1 || w == v2) ? a : a_prime);
    free_slot(s, w, theta);
  }
  return s;
}

ChSearchSpace ChSearchSpace::single_point(const ChSettings& p) {
  ChSearchSpace s;
  const std::array<const Setting*, 4> v = {&p.v1, &p.v1_prime, &p.v2, &p.v2_prime};
  for (int w = 0; w < 4; ++w) {
    s.pin(3 * w + chi, v[static_cast<std::size_t>(w)]->chi);
    s.pin(3 * w + alpha, v[static_cast<std::size_t>(w)]->alpha);
    s.pin(3 * w + theta, v[static_cast<std::size_t>(w)]->theta);
  }
  return s;
}

void ChSearchSpace::validate() const {
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    if (!slots_[k].set) throw std::invalid_argument("search space slot left unset");
    if (slots_[k].variable < 0 && k % 3 == alpha && slots_[k].value < 0.0) {
      throw std::invalid_argument("pinned amplitude must be non-negative");
    }
  }
  for (std::size_t v = 0; v < bounds_.size(); ++v) {
    if (!(bounds_[v].lower <= bounds_[v].upper)) {
      throw std::invalid_argument("empty search space: variable " + names_[v]);
    }
  }
}

ChSettings ChSearchSpace::settings_at(std::span<const double> x) const {
  if (x.size() != bounds_.size()) throw std::invalid_argument("point has wrong dimension");
  std::array<double, 12> p{};
  for (std::size_t k = 0; k < 12; ++k) {
    const Slot& s = slots_[k];
    p[k] = s.variable >= 0 ? x[static_cast<std::size_t>(s.variable)] : s.value;
  }
  return {{p[0], p[1], p[2]}, {p[3], p[4], p[5]}, {p[6], p[7], p[8]}, {p[9], p[10], p[11]}};
}

std::vector<double> ChSearchSpace::point_of(const ChSettings& s) const {
  const std::array<double, 12> p = {s.v1.chi,       s.v1.alpha,       s.v1.theta,
                                    s.v1_prime.chi, s.v1_prime.alpha, s.v1_prime.theta,
                                    s.v2.chi,       s.v2.alpha,       s.v2.theta,
                                    s.v2_prime.chi, s.v2_prime.alpha, s.v2_prime.theta};
  std::vector<double> x(bounds_.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < 12; ++k) {
    const int v = slots_[k].variable;
    if (v >= 0 && std::isnan(x[static_cast<std::size_t>(v)])) {
      x[static_cast<std::size_t>(v)] = bounds_[static_cast<std::size_t>(v)].project(p[k]);
    }
  }
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (std::isnan(x[v])) x[v] = bounds_[v].lower;
  }
  return x;
}

ChOptimizationResult optimize_ch(const ChSearchSpace& space, const ChOptimizerConfig& config) {
  space.validate();
  ChOptimizationResult out;
  out.seed = config.seed;
  auto evaluate = [&](std::span<const double> x) {
    return ch_rates_value(space.settings_at(x), config.method, config.cutoff, config.source);
  };

  if (space.dimension() == 0) {
    out.best = evaluate({});
    ChStartTrace t;
    t.start = t.found = out.best.settings;
    t.value = t.max_value_seen = out.max_value_seen = out.best.value;
    t.evaluations = 1;
    out.trace.push_back(t);
    return out;
  }

  MultiStartOptions opt;
  opt.starts = config.starts;
  opt.seed = config.seed;
  opt.threads = config.threads;
  opt.local.tolerance = config.tolerance;
  opt.local.max_evaluations = config.max_evaluations;
  for (const ChSettings& w : config.warm_starts) opt.warm_starts.push_back(space.point_of(w));

  const MultiStartResult r = multi_start_minimize(
      [&](std::span<const double> x) { return evaluate(x).value; }, space.bounds(), opt);

  out.best = evaluate(r.best.x);
  out.best_index = r.best_index;
  out.max_value_seen = r.max_value_seen;
  out.trace.reserve(r.trace.size());
  for (const StartRecord& s : r.trace) {
    ChStartTrace t;
    t.index = s.index;
    t.start = space.settings_at(s.start);
    t.found = space.settings_at(s.result.x);
    t.value = s.result.value;
    t.evaluations = s.result.evaluations;
    t.max_value_seen = s.result.max_value_seen;
    out.trace.push_back(t);
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
  return g;
}

SweepResult sweep_alpha_landscape(std::span<const double> alpha_grid,
                                  std::span<const double> alpha_prime_grid,
                                  const ChOptimizerConfig& config) {
  for (double a : alpha_grid) {
    if (a < 0.0) throw std::invalid_argument("amplitudes must be non-negative");
  }
  for (double a : alpha_prime_grid) {
    if (a < 0.0) throw std::invalid_argument("amplitudes must be non-negative");
  }
  const auto rows = static_cast<Eigen::Index>(alpha_grid.size());
  const auto cols = static_cast<Eigen::Index>(alpha_prime_grid.size());
  SweepResult out;
  out.alpha.assign(alpha_grid.begin(), alpha_grid.end());
  out.alpha_prime.assign(alpha_prime_grid.begin(), alpha_prime_grid.end());
  out.values = Eigen::MatrixXd::Zero(rows, cols);
  out.argmin.assign(alpha_grid.size(), std::vector<ChSettings>(alpha_prime_grid.size()));
  std::vector<double> row_max(alpha_grid.size(), -std::numeric_limits<double>::infinity());

  parallel_for(
      alpha_grid.size(),
      [&](std::size_t i) {
        ChOptimizerConfig cell = config;
        cell.threads = 1;
        for (std::size_t j = 0; j < alpha_prime_grid.size(); ++j) {
          cell.warm_starts = config.warm_starts;
          if (j > 0) cell.warm_starts.push_back(out.argmin[i][j - 1]);
          const auto r = optimize_ch(
              ChSearchSpace::fixed_amplitudes(alpha_grid[i], alpha_prime_grid[j]), cell);
          out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r.best.value;
          out.argmin[i][j] = r.best.settings;
          row_max[i] = std::max(row_max[i], r.max_value_seen);
        }
      },
      config.threads);
  out.max_value_seen = row_max.empty() ? -std::numeric_limits<double>::infinity()
                                       : *std::max_element(row_max.begin(), row_max.end());
  return out;
}

}  // namespace fockbell
