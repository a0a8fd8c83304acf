#include <doctest.h>

#include "fockbell/observables.hpp"
#include "fockbell/optics.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace fockbell;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::size_t> block_indices(const ModeLayout& l, int total) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < l.dimension(); ++i) {
    if (l.occupation(i, 0) + l.occupation(i, 1) == total) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("lift agrees with the matrix exponential of the generator") {
  const int m = 8;
  const ModeLayout l{{"a", m}, {"b", m}};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 6; ++t) {
    const BeamsplitterParams p{u(rng), u(rng)};
    const FockOperator op = beamsplitter_unitary(l, "a", "b", p);
    const oracle::Mat ref = oracle::beamsplitter(p.chi, p.theta, m);
    double worst = 0.0;
    for (std::size_t i = 0; i < l.dimension(); ++i) {
      if (l.occupation(i, 0) + l.occupation(i, 1) > m) continue;
      for (std::size_t j = 0; j < l.dimension(); ++j) {
        worst = std::max(worst, std::abs(op.matrix()(i, j) - ref(i, j)));
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("beamsplitter examples") {
  const ModeLayout l{{"a", 4}, {"b", 4}};
  const FockOperator id = beamsplitter_unitary(l, "a", "b", {0.0, 1.3});
  CHECK((id.matrix() - CMatrix::Identity(25, 25)).cwiseAbs().maxCoeff() < 1e-15);

  // Single photon in the b-port of the central splitter.
  const ModeLayout two{{"v", 1}, {"s", 1}};
  const FockVector out =
      beamsplitter_unitary(two, "v", "s", central_beamsplitter()).apply(basis_state(two, {0, 1}));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(out.amplitude({0, 1}) - Complex(h, 0)) < 1e-15);
  CHECK(std::abs(out.amplitude({1, 0}) - Complex(0, h)) < 1e-15);

  CHECK_THROWS_AS(beamsplitter_unitary(ModeLayout{{"a", 3}, {"b", 4}}, "a", "b", {}), LayoutError);
  CHECK_THROWS_AS(beamsplitter_unitary(l, "a", "q", {}), LayoutError);
}

namespace {

CVector kron(const CVector& x, const CVector& y) {
  CVector z(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) z.segment(i * y.size(), y.size()) = x[i] * y;
  return z;
}

}  // namespace

TEST_CASE("coherent input leaves as a product of coherent states") {
  const double alpha = 0.8;
  const int l = minimal_cutoff(alpha);
  const FockVector in = tensor({coherent_state(alpha, l, "a"), vacuum(ModeLayout{{"b", l}})});
  for (const BeamsplitterParams p : {BeamsplitterParams{0.4, 0.3}, BeamsplitterParams{kPi / 4, -kPi / 2},
                                     BeamsplitterParams{1.2, 2.0}}) {
    const FockVector out = propagate(in, "a", "b", p, "c", "d");
    const Eigen::Matrix2cd u = mode_matrix(p);
    // a^dag -> U00 c^dag + U10 d^dag
    const Complex bc = alpha * u(0, 0), bd = alpha * u(1, 0);
    const int lo = out.layout().cutoff("c");
    auto cs = [&](Complex b) {
      CVector v(lo + 1);
      for (int n = 0; n <= lo; ++n) {
        v[n] = std::exp(-0.5 * std::norm(b) - 0.5 * std::lgamma(n + 1.0)) * std::pow(b, n);
      }
      return v;
    };
    const CVector ref = kron(cs(bc), cs(bd));
    const double fidelity = std::norm(ref.dot(out.amplitudes()));
    CHECK(fidelity >= 1.0 - 1e-10);
  }
}

TEST_CASE("unitarity, number conservation and the total-number identity") {
  const int m = 6;
  const ModeLayout l{{"a", m}, {"b", m}};
  const FockOperator na = number_operator(l, "a"), nb = number_operator(l, "b");
  const CMatrix ntot = (na + nb).matrix();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 8; ++t) {
    const FockOperator op = beamsplitter_unitary(l, "a", "b", {u(rng), u(rng)});
    const CMatrix& U = op.matrix();
    CHECK((U * ntot - ntot * U).cwiseAbs().maxCoeff() < 1e-12);
    for (int n = 0; n <= 2 * m; ++n) {
      const auto idx = block_indices(l, n);
      if (n <= m) CHECK(op.unitarity_defect(idx) <= 1e-10);
    }
    // U^dag N U = N where the blocks are complete.
    const CMatrix lowblock = U.adjoint() * ntot * U - ntot;
    double worst = 0.0;
    for (std::size_t i = 0; i < l.dimension(); ++i) {
      if (l.occupation(i, 0) + l.occupation(i, 1) > m) continue;
      for (std::size_t j = 0; j < l.dimension(); ++j) {
        if (l.occupation(j, 0) + l.occupation(j, 1) > m) continue;
        worst = std::max(worst, std::abs(lowblock(i, j)));
      }
    }
    CHECK(worst <= 1e-10);
    const CMatrix uud = U * U.adjoint();
    double w2 = 0.0;
    for (std::size_t i : block_indices(l, 3))
      for (std::size_t j : block_indices(l, 3)) w2 = std::max(w2, std::abs(uud(i, j) - (i == j ? 1.0 : 0.0)));
    CHECK(w2 < 1e-12);
  }
}

TEST_CASE("prepare_state") {
  const double alpha = 0.6;
  const FockVector psi = prepare_state({0.0, 1.0, alpha, alpha});
  const int l = minimal_cutoff(alpha);
  const double h = 1.0 / std::sqrt(2.0);
  const oracle::Vec c = oracle::coherent(alpha, l);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      CHECK(std::abs(psi.amplitude({i, 0, 1, j}) - h * c[i] * c[j]) < 1e-15);
      CHECK(std::abs(psi.amplitude({i, 1, 0, j}) - Complex(0, h) * c[i] * c[j]) < 1e-15);
      CHECK(std::abs(psi.amplitude({i, 0, 0, j})) == 0.0);
    }
  }
  const FockVector vac = prepare_state({1.0, 0.0, 0.0, 0.0});
  CHECK(vac.amplitude({0, 0, 0, 0}) == Complex(1.0));
  CHECK(vac.squared_norm() == 1.0);
  CHECK_THROWS_AS(prepare_state({1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(prepare_state({0.0, 1.0, 2.0, 0.0}, 5, 0), CutoffError);

  const FockVector bare = prepare_state({0.0, 1.0, 0.0, 0.0});
  CHECK(std::abs(bare.amplitude({0, 0, 1, 0}) - h) < 1e-15);
  CHECK(std::abs(bare.amplitude({0, 1, 0, 0}) - Complex(0, h)) < 1e-15);
}

TEST_CASE("measurement stage") {
  const FockVector psi = prepare_state({0.0, 1.0, 0.7, 0.4});
  const FockVector same = apply_measurement_stage(psi, 1, {0.0, 0.7, 0.0});
  CHECK(same.layout().modes()[0].name == "c1");
  CHECK(same.layout().modes()[1].name == "d1");
  CHECK(std::abs(same.amplitude({2, 1, 0, 3}) - psi.amplitude({2, 1, 0, 3})) < 1e-15);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 5; ++t) {
    const Setting s1{u(rng), 0.7, u(rng)}, s2{u(rng), 0.4, u(rng)};
    const FockVector out = apply_measurement_stage(apply_measurement_stage(psi, 1, s1), 2, s2);
    CHECK(std::abs(out.squared_norm() - psi.squared_norm()) <= 1e-12);
    // Distribution of n_c1 + n_d1 equals that of n_a1 + n_b1.
    auto dist = [](const FockVector& v, std::size_t p0, std::size_t p1) {
      std::vector<double> d(64, 0.0);
      for (std::size_t i = 0; i < v.layout().dimension(); ++i) {
        d[v.layout().occupation(i, p0) + v.layout().occupation(i, p1)] += std::norm(v.amplitudes()[i]);
      }
      return d;
    };
    const auto din = dist(psi, 0, 1), dout = dist(out, 0, 1);
    for (std::size_t n = 0; n < din.size(); ++n) CHECK(std::abs(din[n] - dout[n]) < 1e-12);
  }
  CHECK_THROWS_AS(apply_measurement_stage(coherent_state(0.5, 12), 1, {}), LayoutError);
  CHECK_THROWS_AS(apply_measurement_stage(psi, 3, {}), std::invalid_argument);
}
