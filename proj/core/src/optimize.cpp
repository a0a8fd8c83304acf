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

#include "fockbell/optimize.hpp"

#include "fockbell/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fockbell {

double Bounds::project(double x) const {
  if (periodic) {
    const double w = width();
    if (w <= 0.0) return lower;
    double y = std::fmod(x - lower, w);
    if (y < 0.0) y += w;
    return lower + y;
  }
  return std::clamp(x, lower, upper);
}

namespace {

using Point = std::vector<double>;

void check_bounds(std::span<const Bounds> bounds) {
  for (const Bounds& b : bounds) {
    if (!(b.lower <= b.upper)) throw std::invalid_argument("empty search box");
  }
}

class Counted {
 public:
  Counted(const Objective& f, std::span<const Bounds> bounds) : f_(f), bounds_(bounds) {}

  double operator()(Point& x) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = bounds_[i].project(x[i]);
    const double v = f_(x);
    ++evaluations;
    if (std::isnan(v)) return std::numeric_limits<double>::infinity();
    max_value_seen = std::max(max_value_seen, v);
    return v;
  }

  int evaluations = 0;
  double max_value_seen = -std::numeric_limits<double>::infinity();

 private:
  const Objective& f_;
  std::span<const Bounds> bounds_;
};

// Distance with periodic coordinates measured the short way round.
double spread(const Point& a, const Point& b, std::span<const Bounds> bounds) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double delta = std::abs(a[i] - b[i]);
    if (bounds[i].periodic) delta = std::min(delta, bounds[i].width() - delta);
    d = std::max(d, delta);
  }
  return d;
}

bool run_simplex(Counted& f, Point& best, double& best_value, std::span<const Bounds> bounds,
                 const NelderMeadOptions& opt) {
  const std::size_t n = best.size();
  std::vector<Point> simplex(n + 1, best);
  std::vector<double> values(n + 1);
  values[0] = best_value;
  for (std::size_t i = 0; i < n; ++i) {
    const double step = std::max(opt.initial_step * bounds[i].width(), 1e-6);
    Point& p = simplex[i + 1];
    // Step inward when the point sits on the upper face.
    p[i] = (!bounds[i].periodic && p[i] + step > bounds[i].upper) ? p[i] - step : p[i] + step;
    values[i + 1] = f(p);
  }

  std::vector<std::size_t> order(n + 1);
  bool converged = false;
  while (f.evaluations < opt.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];

    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i) size = std::max(size, spread(simplex[i], simplex[lo], bounds));
    if (size <= opt.tolerance || values[hi] - values[lo] <= opt.value_tolerance) {
      converged = true;
      break;
    }

    Point centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      Point p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (simplex[hi][k] - centroid[k]);
      return p;
    };

    Point reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < values[lo]) {
      Point expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[hi] = std::move(expanded);
        values[hi] = fe;
      } else {
        simplex[hi] = std::move(reflected);
        values[hi] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[hi] = std::move(reflected);
      values[hi] = fr;
      continue;
    }
    const bool outside = fr < values[hi];
    Point contracted = along(outside ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : values[hi])) {
      simplex[hi] = std::move(contracted);
      values[hi] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == lo) continue;
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[lo][k] + 0.5 * (simplex[i][k] - simplex[lo][k]);
      }
      values[i] = f(simplex[i]);
    }
  }

  const auto it = std::min_element(values.begin(), values.end());
  best = simplex[static_cast<std::size_t>(it - values.begin())];
  best_value = *it;
  return converged;
}

}  // namespace

LocalResult nelder_mead(const Objective& f, std::span<const double> x0,
                        std::span<const Bounds> bounds, const NelderMeadOptions& options) {
  if (x0.size() != bounds.size()) throw std::invalid_argument("start and bounds differ in size");
  check_bounds(bounds);
  Counted counted(f, bounds);
  LocalResult r;
  r.x.assign(x0.begin(), x0.end());
  r.value = counted(r.x);
  if (!r.x.empty()) {
    r.converged = run_simplex(counted, r.x, r.value, bounds, options);
    for (int k = 0; k < options.restarts && counted.evaluations < options.max_evaluations; ++k) {
      NelderMeadOptions again = options;
      again.initial_step = options.initial_step * 0.1;
      r.converged = run_simplex(counted, r.x, r.value, bounds, again);
    }
  } else {
    r.converged = true;
  }
  r.evaluations = counted.evaluations;
  r.max_value_seen = counted.max_value_seen;
  return r;
}

std::vector<std::vector<double>> halton_points(int count, int dim, std::uint64_t seed) {
  static constexpr std::array<int, 32> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,  29,  31,
                                                  37, 41, 43, 47, 53, 59, 61, 67, 71,  73,  79,
                                                  83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
  if (dim < 0 || dim > static_cast<int>(kPrimes.size())) {
    throw std::invalid_argument("halton dimension out of range");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> shift(static_cast<std::size_t>(dim));
  for (double& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;

  std::vector<std::vector<double>> pts(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    auto& p = pts[static_cast<std::size_t>(i)];
    p.resize(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
      const int base = kPrimes[static_cast<std::size_t>(d)];
      double value = 0.0, scale = 1.0 / base;
      for (int k = i + 1; k > 0; k /= base, scale /= base) value += (k % base) * scale;
      value += shift[static_cast<std::size_t>(d)];
      p[static_cast<std::size_t>(d)] = value - std::floor(value);
    }
  }
  return pts;
}

MultiStartResult multi_start_minimize(const Objective& f, std::span<const Bounds> bounds,
                                      const MultiStartOptions& options) {
  check_bounds(bounds);
  const int dim = static_cast<int>(bounds.size());
  std::vector<Point> starts;
  for (const auto& w : options.warm_starts) {
    if (w.size() != bounds.size()) throw std::invalid_argument("warm start has wrong size");
    starts.push_back(w);
  }
  for (auto& u : halton_points(options.starts, dim, options.seed)) {
    for (int d = 0; d < dim; ++d) {
      const Bounds& b = bounds[static_cast<std::size_t>(d)];
      u[static_cast<std::size_t>(d)] = b.lower + u[static_cast<std::size_t>(d)] * b.width();
    }
    starts.push_back(std::move(u));
  }
  if (starts.empty()) throw std::invalid_argument("no starting points");

  MultiStartResult out;
  out.trace.resize(starts.size());
  parallel_for(
      starts.size(),
      [&](std::size_t i) {
        out.trace[i].index = static_cast<int>(i);
        out.trace[i].start = starts[i];
        out.trace[i].result = nelder_mead(f, starts[i], bounds, options.local);
      },
      options.threads);

  out.max_value_seen = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.trace.size(); ++i) {
    const LocalResult& r = out.trace[i].result;
    out.max_value_seen = std::max(out.max_value_seen, r.max_value_seen);
    if (i == 0 || r.value < out.best.value) {
      out.best = r;
      out.best_index = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace fockbell
