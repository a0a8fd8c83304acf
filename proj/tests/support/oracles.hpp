#pragma once

// Reference computations for the tests.  Nothing here calls into the
// library: each oracle rebuilds its quantity from scratch with a different
// method (special functions, matrix exponentials, direct partial sums).

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// sum_{n > cutoff} e^{-x} x^n / n!  =  P(cutoff + 1, x)
inline double poisson_tail(double alpha, int cutoff) {
  const double x = alpha * alpha;
  if (x == 0.0) return 0.0;
  return boost::math::gamma_p(cutoff + 1.0, x);
}

inline int tail_cutoff(double alpha) {
  int n = 0;
  while (poisson_tail(alpha, n) >= 1e-12) ++n;
  return std::max(n, 12);
}

inline Vec coherent(double alpha, int cutoff) {
  Vec v(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    if (alpha == 0.0) {
      v[n] = n == 0 ? 1.0 : 0.0;
      continue;
    }
    v[n] = std::exp(-0.5 * alpha * alpha + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0));
  }
  return v;
}

// Two modes (a, b), index = n_a * (m + 1) + n_b.
inline Mat lower_a(int m) {
  const int d = (m + 1) * (m + 1);
  Mat x = Mat::Zero(d, d);
  for (int na = 1; na <= m; ++na)
    for (int nb = 0; nb <= m; ++nb) x((na - 1) * (m + 1) + nb, na * (m + 1) + nb) = std::sqrt(double(na));
  return x;
}

inline Mat lower_b(int m) {
  const int d = (m + 1) * (m + 1);
  Mat x = Mat::Zero(d, d);
  for (int na = 0; na <= m; ++na)
    for (int nb = 1; nb <= m; ++nb) x(na * (m + 1) + nb - 1, na * (m + 1) + nb) = std::sqrt(double(nb));
  return x;
}

// exp(chi (e^{-i theta} a^dag b - e^{i theta} b^dag a)); exact on photon
// numbers n_a + n_b <= m.
inline Mat beamsplitter(double chi, double theta, int m) {
  const Mat a = lower_a(m), b = lower_b(m);
  const cd ph = std::polar(1.0, theta);
  const Mat g = chi * (std::conj(ph) * a.adjoint() * b - ph * b.adjoint() * a);
  return g.exp();
}

struct Station {
  double chi, alpha, theta;
};

// Joint (station 1) x (station 2) amplitude matrix after both beamsplitters,
// for q|00> + r (|01> + i|10>)/sqrt2 on (b1, b2).  Rows index (c1, d1),
// columns (c2, d2), each with per-mode cutoff m.
inline Mat measured(const Station& s1, const Station& s2, cd q, cd r, int& m) {
  const int l = std::max(tail_cutoff(s1.alpha), tail_cutoff(s2.alpha));
  m = l + 1;
  const int d = (m + 1) * (m + 1);
  const Vec c1 = coherent(s1.alpha, l), c2 = coherent(s2.alpha, l);
  auto local = [&](const Vec& c, int nb) {
    Vec v = Vec::Zero(d);
    for (int na = 0; na <= l; ++na) v[na * (m + 1) + nb] = c[na];
    return v;
  };
  const cd amp01 = r / std::sqrt(2.0), amp10 = cd(0, 1) * r / std::sqrt(2.0);
  Mat psi = q * local(c1, 0) * local(c2, 0).transpose() +
            amp01 * local(c1, 0) * local(c2, 1).transpose() +
            amp10 * local(c1, 1) * local(c2, 0).transpose();
  const Mat u1 = beamsplitter(s1.chi, s1.theta, m);
  const Mat u2 = beamsplitter(s2.chi, s2.theta, m);
  return u1 * psi * u2.transpose();
}

inline double correlate(const Station& s1, const Station& s2, cd q, cd r,
                        const std::function<double(int, int)>& f1,
                        const std::function<double(int, int)>& f2) {
  int m = 0;
  const Mat out = measured(s1, s2, q, r, m);
  double total = 0.0;
  for (int i = 0; i < out.rows(); ++i) {
    const double g1 = f1(i / (m + 1), i % (m + 1));
    if (g1 == 0.0) continue;
    for (int j = 0; j < out.cols(); ++j) total += std::norm(out(i, j)) * g1 * f2(j / (m + 1), j % (m + 1));
  }
  return total;
}

inline double rate_d(int c, int d) { return c + d == 0 ? 0.0 : double(d) / (c + d); }
inline double rate_diff(int c, int d) { return c + d == 0 ? 0.0 : double(c - d) / (c + d); }
inline double one(int, int) { return 1.0; }

inline double K(const Station& s1, const Station& s2) {
  return correlate(s1, s2, 0.0, 1.0, rate_d, rate_d);
}

inline double S(const Station& s) { return correlate(s, {0, 0, 0}, 0.0, 1.0, rate_d, one); }

// alpha^2 where (1 - e^{-x}) / x = 1/2.
inline double rates_threshold() { return 2.0 + boost::math::lambert_w0(-2.0 * std::exp(-2.0)); }

// <1| M |0> of the balanced homodyne element at theta = 0, summed to 60 terms.
inline double homodyne_10(double alpha) {
  double s = 0.0;
  for (int n = 0; n < 60; ++n) {
    s += std::exp((2 * n + 1) * std::log(alpha) - std::lgamma(n + 1.0)) / (n + 1);
  }
  return std::exp(-alpha * alpha) * s;
}

}  // namespace oracle
