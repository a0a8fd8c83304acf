#include <doctest.h>

#include "fockbell/inequalities.hpp"
#include "fockbell/observables.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace fockbell;

namespace {

constexpr double kPi = std::numbers::pi;
const double kRootHalf = std::sqrt(0.5);

oracle::Station st(const Setting& s) { return {s.chi, s.alpha, s.theta}; }

Setting random_setting(std::mt19937_64& rng, double amin = 0.05, double amax = 1.5) {
  std::uniform_real_distribution<double> u(-kPi, kPi), a(amin, amax);
  const double chi = u(rng);
  const double alpha = a(rng);
  return {chi, alpha, u(rng)};
}

}  // namespace

TEST_CASE("chsh angles") {
  const ChshAngles a = optimal_chsh_angles();
  CHECK(chsh_sine_combination(a) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(chsh_sine_combination({0.4, 0.4, 0.4, 0.4}) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("chsh for rates") {
  const InequalityReport r = chsh_rates_value(1.0, optimal_chsh_angles());
  CHECK(std::abs(r.value - 1.130173) <= 1e-6);
  CHECK(std::abs(r.value - 2.0 * std::sqrt(2.0) * amplitude_AR(1.0)) <= 1e-6);
  CHECK_FALSE(r.violated);
  CHECK(r.upper_bound == 2.0);
  CHECK(r.caveat.empty());
  CHECK(std::abs(chsh_rates_value(0.6, {0.3, 0.3, 0.3, 0.3}).value) <= 1e-10);
  for (double a = 0.01; a <= 3.0; a += 0.01) {
    CHECK_FALSE(chsh_rates_closed(a, optimal_chsh_angles()).violated);
  }
}

TEST_CASE("chsh for intensities") {
  const ChshAngles opt = optimal_chsh_angles();
  const InequalityReport a = chsh_twc_value(std::sqrt(0.2), opt);
  CHECK(std::abs(a.value - 2.0 * std::sqrt(2.0) / 1.2) <= 1e-6);
  CHECK(std::abs(a.value - 2.357) <= 1e-3);
  CHECK(a.violated);
  CHECK_FALSE(a.caveat.empty());
  CHECK(std::abs(chsh_twc_value(std::sqrt(0.414), opt).value - 2.0) <= 2e-3);
  CHECK(std::abs(chsh_twc_value(1.0, opt).value - std::sqrt(2.0)) <= 1e-6);
  CHECK_FALSE(chsh_twc_closed(1.0, opt).violated);
}

TEST_CASE("K and S closed forms") {
  const Setting hv{3 * kPi / 20, kRootHalf, 0.0};
  CHECK(ch_correlator_K_closed({0.0, 0.7, 0.1}, {0.0, 1.1, 2.0}) == 0.0);
  CHECK(std::abs(ch_correlator_K_closed(hv, hv) - oracle::K(st(hv), st(hv))) <= 1e-6);
  CHECK(std::abs(ch_correlator_K_closed(hv, hv) - ch_correlator_K_numeric(hv, hv)) <= 1e-6);

  const Setting p{0.7, 0.8, 0.3}, q{1.9, 0.4, -1.2};
  const double k = ch_correlator_K_closed(p, q);
  CHECK(ch_correlator_K_closed({p.chi, p.alpha, p.theta + 0.9}, {q.chi, q.alpha, q.theta + 0.9}) ==
        doctest::Approx(k).epsilon(1e-13));

  CHECK(ch_local_S_closed({0.0, 0.0, 0.0}) == doctest::Approx(0.5));
  CHECK(std::abs(ch_local_S_closed({0.0, 1.0, 0.0}) - std::exp(-1.0) * (std::exp(1.0) - 1.0) / 2.0) <=
        1e-12);
  CHECK(std::abs(ch_local_S_closed({0.0, 1.0, 0.0}) - 0.31606) <= 1e-5);
  CHECK(std::abs(ch_local_S_closed({0.0, 1.0, 0.0}) - oracle::S({0.0, 1.0, 0.0})) <= 1e-6);
  CHECK(ch_local_S_closed({0.6, 0.9, 2.2}) == ch_local_S_closed({0.6, 0.9, 0.0}));
}

TEST_CASE("all settings zero give -1") {
  const ChSettings zero{};
  CHECK(ch_rates_value(zero).value == -1.0);
  const Setting tiny{0.0, 1e-4, 0.0};
  const ChSettings z2{tiny, tiny, tiny, tiny};
  CHECK(std::abs(ch_rates_value(z2, ChMethod::fock_numeric).value + 1.0) <= 1e-7);
}

TEST_CASE("reference settings") {
  const ChSettings s = reference_hardy_settings();
  const CHEvaluation c = ch_rates_value(s);
  CHECK(std::abs(c.value + 1.0239) <= 2e-3);
  CHECK(c.report().violated);
  CHECK(c.report().margin > 0.0);
  CHECK(c.value == doctest::Approx(c.K[0] + c.K[1] + c.K[2] - c.K[3] - c.S[0] - c.S[1]).epsilon(1e-12));
  const CHEvaluation n = ch_rates_value(s, ChMethod::fock_numeric);
  CHECK(std::abs(n.value - c.value) <= 1e-6);
  const CHEvaluation p = ch_rates_value(s, ChMethod::povm);
  CHECK(std::abs(p.value - c.value) <= 1e-6);
}

TEST_CASE("closed form and numerics agree on random tuples") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const ChSettings s{random_setting(rng), random_setting(rng), random_setting(rng),
                       random_setting(rng)};
    const CHEvaluation a = ch_rates_value(s);
    const CHEvaluation b = ch_rates_value(s, ChMethod::fock_numeric);
    worst = std::max(worst, std::abs(a.value - b.value));
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a.K[k] - b.K[k]));
    CHECK(a.value >= -2.0);
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("independent four-mode oracle") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 4; ++t) {
    const Setting a = random_setting(rng, 0.05, 1.0), b = random_setting(rng, 0.05, 1.0);
    CHECK(std::abs(ch_correlator_K_numeric(a, b) - oracle::K(st(a), st(b))) <= 1e-10);
    CHECK(std::abs(ch_local_S_numeric(a, 1) - oracle::S(st(a))) <= 1e-10);
  }
}

TEST_CASE("alternative CH form") {
  const AlternativeChValue v = ch_alternative_form_value(reference_hardy_settings());
  CHECK(std::isfinite(v.value));
  CHECK(std::abs(v.standard_value - ch_rates_value(reference_hardy_settings()).value) <= 1e-6);

  std::mt19937_64 rng(8);
  bool differs = false;
  for (int t = 0; t < 100 && !differs; ++t) {
    const ChSettings s{random_setting(rng, 0.05, 1.0), random_setting(rng, 0.05, 1.0),
                       random_setting(rng, 0.05, 1.0), random_setting(rng, 0.05, 1.0)};
    const AlternativeChValue w = ch_alternative_form_value(s);
    differs = std::abs(w.value - w.standard_value) > 1e-3;
  }
  CHECK(differs);
}

TEST_CASE("search spaces") {
  const ChSearchSpace h = ChSearchSpace::hardy();
  CHECK(h.dimension() == 6u);
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const ChSettings s = h.settings_at(x);
  CHECK(s.v1 == Setting{});
  CHECK(s.v2 == Setting{});
  const std::vector<double> back = h.point_of(s);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-14));
  CHECK(ChSearchSpace::equal_amplitudes().dimension() == 9u);
  CHECK(ChSearchSpace::fixed_amplitudes(0.1, 0.2).dimension() == 8u);

  const ChSettings ref = reference_hardy_settings();
  const ChOptimizationResult one = optimize_ch(ChSearchSpace::single_point(ref));
  CHECK(one.best.settings == ref);
  CHECK(one.best.value == ch_rates_value(ref).value);

  ChSearchSpace bad = ChSearchSpace::single_point(ref);
  const int v = bad.add_variable("broken", {1.0, 0.0, false});
  bad.bind(ChSearchSpace::slot(ChSearchSpace::v1, ChSearchSpace::chi), v);
  CHECK_THROWS_WITH_AS(optimize_ch(bad), doctest::Contains("empty search space"),
                       std::invalid_argument);
}

TEST_CASE("hardy optimization") {
  ChOptimizerConfig cfg;
  cfg.starts = 16;
  const ChOptimizationResult r = optimize_ch(ChSearchSpace::hardy(), cfg);
  CHECK(r.best.value <= -1.02);
  CHECK(r.max_value_seen <= 1e-9);
  for (const auto& t : r.trace) CHECK(r.best.value <= t.value + 1e-15);

  const ChOptimizationResult again = optimize_ch(ChSearchSpace::hardy(), cfg);
  REQUIRE(again.trace.size() == r.trace.size());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    CHECK(again.trace[i].value == r.trace[i].value);
    CHECK(again.trace[i].found == r.trace[i].found);
  }
}

TEST_CASE("equal amplitudes give no violation") {
  ChOptimizerConfig cfg;
  cfg.starts = 16;
  const ChOptimizationResult r = optimize_ch(ChSearchSpace::equal_amplitudes(), cfg);
  CHECK(r.best.value >= -1.0 - 1e-9);
  CHECK(r.max_value_seen <= 1e-9);
}

TEST_CASE("small sweep") {
  ChOptimizerConfig cfg;
  cfg.starts = 8;
  const std::vector<double> a{0.0, 0.3}, ap{0.3, std::sqrt(0.5)};
  const SweepResult s = sweep_alpha_landscape(a, ap, cfg);
  CHECK(s.values.rows() == 2);
  CHECK(s.values.cols() == 2);
  CHECK(s.values(0, 1) <= -1.02);
  CHECK(s.values(1, 0) >= -1.0 - 1e-9);
  CHECK(s.max_value_seen <= 1e-9);
  CHECK(linear_grid(0.0, 1.2, 41).size() == 41u);
  CHECK(linear_grid(0.0, 1.2, 41)[40] == 1.2);
}
