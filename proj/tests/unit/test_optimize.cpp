#include <doctest.h>

#include "fockbell/optimize.hpp"
#include "fockbell/parallel.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace fockbell;

TEST_CASE("bounds projection") {
  const Bounds box{0.0, 1.0, false};
  CHECK(box.project(-0.5) == 0.0);
  CHECK(box.project(1.5) == 1.0);
  CHECK(box.project(0.25) == 0.25);
  const Bounds ring{-std::numbers::pi, std::numbers::pi, true};
  CHECK(ring.project(std::numbers::pi + 0.5) == doctest::Approx(-std::numbers::pi + 0.5));
  CHECK(ring.project(-std::numbers::pi - 0.5) == doctest::Approx(std::numbers::pi - 0.5));
}

TEST_CASE("nelder mead finds the Rosenbrock minimum") {
  const std::vector<Bounds> b{{-2.0, 2.0, false}, {-2.0, 2.0, false}};
  const std::vector<double> x0{-1.2, 1.0};
  NelderMeadOptions opt;
  opt.restarts = 3;
  const LocalResult r = nelder_mead(
      [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
      },
      x0, b, opt);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.value < 1e-10);
  CHECK(r.max_value_seen >= r.value);
}

TEST_CASE("minimum on the boundary stays inside the box") {
  const std::vector<Bounds> b{{0.5, 3.0, false}};
  const std::vector<double> x0{2.0};
  const LocalResult r = nelder_mead([](std::span<const double> x) { return x[0] * x[0]; }, x0, b);
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("halton points") {
  const auto p = halton_points(100, 3, 42);
  CHECK(p.size() == 100u);
  for (const auto& x : p) {
    for (double v : x) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
  CHECK(halton_points(10, 3, 42) == halton_points(10, 3, 42));
  CHECK(halton_points(10, 3, 42) != halton_points(10, 3, 43));
  CHECK_THROWS(halton_points(4, 33, 1));
}

TEST_CASE("multi-start is deterministic and thread independent") {
  // Many shallow minima.
  const Objective f = [](std::span<const double> x) {
    return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.05 * (x[0] * x[0] + x[1] * x[1]);
  };
  const std::vector<Bounds> b{{-4.0, 4.0, false}, {-4.0, 4.0, false}};
  MultiStartOptions o;
  o.starts = 24;
  o.threads = 1;
  const MultiStartResult a = multi_start_minimize(f, b, o);
  o.threads = 4;
  const MultiStartResult c = multi_start_minimize(f, b, o);
  REQUIRE(a.trace.size() == 24u);
  CHECK(a.best_index == c.best_index);
  CHECK(a.best.x == c.best.x);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].result.x == c.trace[i].result.x);
    CHECK(a.trace[i].result.value == c.trace[i].result.value);
  }
  for (const auto& t : a.trace) CHECK(a.best.value <= t.result.value);
  CHECK(a.max_value_seen >= a.best.value);
}

TEST_CASE("warm starts come first") {
  const Objective f = [](std::span<const double> x) { return (x[0] - 0.3) * (x[0] - 0.3); };
  const std::vector<Bounds> b{{-1.0, 1.0, false}};
  MultiStartOptions o;
  o.starts = 3;
  o.warm_starts = {{0.7}};
  const MultiStartResult r = multi_start_minimize(f, b, o);
  REQUIRE(r.trace.size() == 4u);
  CHECK(r.trace[0].start == std::vector<double>{0.7});
}

TEST_CASE("parallel_for visits every index and rethrows") {
  std::atomic<int> sum{0};
  parallel_for(100, [&](std::size_t i) { sum += static_cast<int>(i); }, 3);
  CHECK(sum == 4950);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("boom");
  }, 2), std::runtime_error);
  CHECK(thread_count(5) == 5);
}
