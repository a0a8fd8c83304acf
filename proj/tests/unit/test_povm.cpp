#include <doctest.h>

#include "fockbell/inequalities.hpp"
#include "fockbell/observables.hpp"
#include "fockbell/povm.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace fockbell;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("homodyne element") {
  const PovmElement zero = povm_homodyne(0.0, 0.3, 4);
  CHECK(zero.matrix.matrix().cwiseAbs().maxCoeff() == 0.0);

  const PovmElement m = povm_homodyne(0.5, 0.0, 6);
  CHECK(std::abs(m.matrix.matrix()(1, 0).real() - oracle::homodyne_10(0.5)) <= 1e-14);
  // Resums to (1 - e^{-a^2}) / a.
  CHECK(std::abs(m.matrix.matrix()(1, 0).real() - 0.4423984339) <= 1e-10);
  CHECK(m.matrix.hermiticity_defect() <= 1e-14);
  CHECK(m.tail_bound <= 1e-12);

  const FockVector psi = signal_state(0.0, 1.0);
  for (double a : {0.25, 0.5, 1.0}) {
    for (double d : {kPi / 2, 0.7, -1.1}) {
      const double v = povm_expectation(psi, povm_homodyne(a, d, 1).matrix, povm_homodyne(a, 0.0, 1).matrix);
      CHECK(std::abs(v - amplitude_AR(a) * std::sin(d)) <= 1e-6);
    }
  }
}

TEST_CASE("rate element") {
  const PovmElement p = povm_rate({0.0, 0.0, 0.0}, 5);
  CMatrix proj = CMatrix::Identity(6, 6);
  proj(0, 0) = 0.0;
  CHECK((p.matrix.matrix() - proj).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-kPi, kPi), a(0.05, 1.5);
  for (int t = 0; t < 20; ++t) {
    const Setting s{u(rng), a(rng), u(rng)};
    const PovmElement e = povm_rate(s, 4);
    CHECK(e.matrix.hermiticity_defect() <= 1e-14);
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(e.matrix.matrix());
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-12);
    CHECK(std::abs(ch_local_S_povm(s, 1) - ch_local_S_closed(s)) <= 1e-6);
    CHECK(std::abs(ch_local_S_povm(s, 2) - ch_local_S_closed(s)) <= 1e-6);

    // Extending the series changes nothing.
    const PovmElement longer = povm_rate(s, 4, e.n_max + 5);
    CHECK((longer.matrix.matrix() - e.matrix.matrix()).cwiseAbs().maxCoeff() <= 1e-12);

    // Independent sandwich construction.
    const FockOperator w = povm_sandwich(s, RateTarget::d, 4);
    CHECK((w.matrix() - e.matrix.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
  }

  const Setting hv{3 * kPi / 20, std::sqrt(0.5), 0.0};
  CHECK(std::abs(ch_correlator_K_povm(hv, hv) - ch_correlator_K_closed(hv, hv)) <= 1e-6);
}

TEST_CASE("equivalence reports") {
  const Setting hv{3 * kPi / 20, std::sqrt(0.5), 0.0};
  const EquivalenceReport h =
      verify_povm_equivalence(PovmScenario::homodyne, {kPi / 4, 0.5, 0.0}, {kPi / 4, 0.5, 0.0}, 0.5);
  CHECK(h.max_deviation <= 1e-6);
  CHECK(h.grid_points == 24);
  const EquivalenceReport r = verify_povm_equivalence(PovmScenario::rate, hv, {3 * kPi / 20, std::sqrt(0.5), -kPi / 2}, 0.0);
  CHECK(r.max_deviation <= 1e-6);
  const EquivalenceReport z = verify_povm_equivalence(PovmScenario::homodyne, {}, {}, 0.0);
  CHECK(z.max_deviation <= 1e-12);
  const EquivalenceReport zr = verify_povm_equivalence(PovmScenario::rate, {}, {}, 0.0);
  CHECK(zr.max_deviation <= 1e-12);
  CHECK(zr.projector_gap <= 1e-15);
}

TEST_CASE("transmitting station with a live oscillator") {
  // At chi = 0 the oscillator photons still reach the d detector.
  const EquivalenceReport r =
      verify_povm_equivalence(PovmScenario::rate, {0.0, std::sqrt(0.5), 0.0}, {0.0, 0.0, 0.0}, 0.0);
  CHECK(r.max_deviation <= 1e-6);
  CHECK(r.projector_gap > 0.1);
  CHECK_FALSE(r.note.empty());
}
