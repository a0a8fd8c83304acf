#include <doctest.h>

#include "fockbell/observables.hpp"
#include "fockbell/optics.hpp"
#include "fockbell/witness.hpp"
#include "oracles.hpp"

#include <numbers>

using namespace fockbell;

namespace {

constexpr double kPi = std::numbers::pi;

double expected_normalized(WitnessKind k, double alpha) {
  return std::sqrt(2.0) - 2.0 * std::sqrt(2.0) * witness_amplitude(k, alpha);
}

}  // namespace

TEST_CASE("witness amplitudes") {
  CHECK(witness_amplitude(WitnessKind::intensities, 0.9) == doctest::Approx(1.0 / 1.81));
  CHECK(witness_amplitude(WitnessKind::rates, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(std::abs(witness_amplitude(WitnessKind::rates, 1.0) - 0.63212) <= 1e-5);
  double prev = 1.0 + 1e-12;
  for (double a = 0.01; a <= 3.0; a += 0.01) {
    const double v = witness_amplitude(WitnessKind::rates, a);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(witness_amplitude(WitnessKind::rates, 1e-6) == doctest::Approx(1.0));
}

TEST_CASE("thresholds") {
  CHECK(std::abs(witness_threshold_alpha_sq(WitnessKind::intensities) - 1.0) <= 1e-9);
  CHECK(std::abs(witness_threshold_alpha_sq(WitnessKind::rates) - oracle::rates_threshold()) <= 1e-9);
  CHECK(std::abs(oracle::rates_threshold() - 1.5936) <= 1e-4);
  CHECK(witness_threshold_alpha_sq(WitnessKind::rates) >
        witness_threshold_alpha_sq(WitnessKind::intensities));
}

TEST_CASE("intensities witness on the interferometer state") {
  const WitnessAngles w = optimal_witness_angles();
  const WitnessReport in = witness_intensities(0.9, w.theta1, w.theta2);
  CHECK(in.detects_entanglement);
  CHECK(std::abs(in.normalized - expected_normalized(WitnessKind::intensities, 0.9)) <= 1e-8);
  const WitnessReport out = witness_intensities(1.1, w.theta1, w.theta2);
  CHECK_FALSE(out.detects_entanglement);
  for (double t1 = -kPi; t1 < kPi; t1 += kPi / 6) {
    for (double t2 = -kPi; t2 < kPi; t2 += kPi / 6) {
      CHECK_FALSE(witness_intensities(1.1, t1, t2).detects_entanglement);
    }
  }
}

TEST_CASE("rates witness on the interferometer state") {
  const WitnessAngles w = optimal_witness_angles();
  const WitnessReport r = witness_rates(1.0, w.theta1, w.theta2);
  CHECK(r.detects_entanglement);
  CHECK(std::abs(r.normalized - expected_normalized(WitnessKind::rates, 1.0)) <= 1e-8);
  CHECK(std::abs(r.amplitude - witness_amplitude(WitnessKind::rates, 1.0)) <= 1e-12);
  CHECK_FALSE(witness_rates(1.35, w.theta1, w.theta2).detects_entanglement);
  CHECK(witness_rates(1.2, w.theta1, w.theta2).detects_entanglement);

  // Minimum over the angle grid sits at the closed-form value.
  double lo = 1e9;
  for (double t1 = -kPi; t1 < kPi; t1 += kPi / 12) {
    for (double t2 = -kPi; t2 < kPi; t2 += kPi / 12) {
      lo = std::min(lo, witness_rates(0.8, t1, t2).normalized);
    }
  }
  CHECK(std::abs(lo - expected_normalized(WitnessKind::rates, 0.8)) <= 1e-8);
}

TEST_CASE("rates witness without oscillators is finite") {
  const WitnessReport r = witness_rates(0.0, 0.3, 0.1, 12);
  CHECK(std::isfinite(r.value));
  // Pi1 Pi2 on the bare photon state vanishes: one photon cannot reach both stations.
  CHECK(r.normalization == 0.0);
}

TEST_CASE("product states satisfy both witnesses") {
  const int l = 12;
  const ModeLayout layout{{"a1", l}, {"b1", 2}, {"b2", 2}, {"a2", l}};
  const FockVector prod = tensor({coherent_state(0.7, l, "a1"), vacuum(ModeLayout{{"b1", 2}}),
                                  vacuum(ModeLayout{{"b2", 2}}), coherent_state(0.7, l, "a2")});
  for (auto k : {WitnessKind::intensities, WitnessKind::rates}) {
    CHECK(evaluate_witness(prod, k, 0.4, -0.2).value >= -1e-9);
  }
  CHECK(factorization_defect(prod, 3) <= 1e-10);
}

TEST_CASE("random separable states") {
  const ModeLayout layout{{"a1", 3}, {"b1", 3}, {"b2", 3}, {"a2", 3}};
  const FockVector vac = random_separable_state(layout, 1, 0);
  CHECK(std::abs(std::abs(vac.amplitude({0, 0, 0, 0})) - 1.0) <= 1e-14);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FockVector s = random_separable_state(layout, seed, 3);
    CHECK(s.squared_norm() == doctest::Approx(1.0));
    CHECK(factorization_defect(s, seed) <= 1e-10);
    for (auto k : {WitnessKind::intensities, WitnessKind::rates}) {
      CHECK(evaluate_witness(s, k, 0.1 * seed, -0.3).value >= -1e-8);
    }
  }
  CHECK(random_separable_state(layout, 5, 2).amplitudes() ==
        random_separable_state(layout, 5, 2).amplitudes());
  CHECK_THROWS(random_separable_state(layout, 5, 4));
}

TEST_CASE("the interferometer state is not a product") {
  const FockVector psi = prepare_state({0.0, 1.0, 0.5, 0.5});
  CHECK(factorization_defect(psi, 1) > 1e-3);
}
