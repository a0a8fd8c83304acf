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

#include "fockbell/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fockbell {

Eigen::Matrix2cd mode_matrix(const BeamsplitterParams& p) {
  const Complex phase = std::polar(1.0, p.theta);
  Eigen::Matrix2cd u;
  u << std::cos(p.chi), std::conj(phase) * std::sin(p.chi),
      -phase * std::sin(p.chi), std::cos(p.chi);
  return u;
}

BeamsplitterLift::BeamsplitterLift(const BeamsplitterParams& params, int max_total)
    : params_(params) {
  if (max_total < 0) throw std::invalid_argument("max_total must be non-negative");
  const Eigen::Matrix2cd u = mode_matrix(params);
  // Input creation operators in terms of output ones:
  //   a^dag -> U00 c^dag + U10 d^dag,  b^dag -> U01 c^dag + U11 d^dag.
  const Complex ac = u(0, 0), ad = u(1, 0), bc = u(0, 1), bd = u(1, 1);

  blocks_.reserve(static_cast<std::size_t>(max_total) + 1);
  blocks_.emplace_back(CMatrix::Ones(1, 1));
  for (int n = 1; n <= max_total; ++n) {
    const CMatrix& prev = blocks_.back();
    CMatrix next = CMatrix::Zero(n + 1, n + 1);
    // (x c^dag + y d^dag) applied to a column of the N-1 block.
    auto raise = [&](Eigen::Index src, Complex x, Complex y, Eigen::Index dst, double scale) {
      for (int j = 0; j < n; ++j) {
        const Complex amp = prev(j, src) * scale;
        if (amp == 0.0) continue;
        next(j + 1, dst) += x * std::sqrt(static_cast<double>(j + 1)) * amp;
        next(j, dst) += y * std::sqrt(static_cast<double>(n - j)) * amp;
      }
    };
    // |0, N> = b^dag |0, N-1> / sqrt(N);  |k, N-k> = a^dag |k-1, N-k> / sqrt(k).
    raise(0, bc, bd, 0, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int k = 1; k <= n; ++k) {
      raise(k - 1, ac, ad, k, 1.0 / std::sqrt(static_cast<double>(k)));
    }
    blocks_.push_back(std::move(next));
  }
}

FockOperator beamsplitter_unitary(const ModeLayout& layout, std::string_view mode_a,
                                  std::string_view mode_b, const BeamsplitterParams& params) {
  const std::size_t pa = layout.position(mode_a);
  const std::size_t pb = layout.position(mode_b);
  if (pa == pb) throw LayoutError("beamsplitter needs two distinct modes");
  const int cutoff = layout.modes()[pa].cutoff;
  if (layout.modes()[pb].cutoff != cutoff) {
    throw LayoutError("beamsplitter modes must have equal cutoffs");
  }
  const BeamsplitterLift lift(params, 2 * cutoff);
  const std::size_t sa = layout.stride(pa), sb = layout.stride(pb);
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  CMatrix m = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < layout.dimension(); ++i) {
    const int na = layout.occupation(i, pa);
    const int nb = layout.occupation(i, pb);
    const int total = na + nb;
    const std::size_t base = i - static_cast<std::size_t>(na) * sa - static_cast<std::size_t>(nb) * sb;
    const CMatrix& blk = lift.block(total);
    for (int j = 0; j <= total; ++j) {
      if (j > cutoff || total - j > cutoff) continue;
      const std::size_t out = base + static_cast<std::size_t>(j) * sa +
                              static_cast<std::size_t>(total - j) * sb;
      m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(i)) = blk(j, na);
    }
  }
  return FockOperator(layout, std::move(m), {false, true});
}

FockVector propagate(const FockVector& state, std::string_view mode_a,
                     std::string_view mode_b, const BeamsplitterParams& params,
                     std::string out_a, std::string out_b) {
  const ModeLayout& in = state.layout();
  const std::size_t pa = in.position(mode_a);
  const std::size_t pb = in.position(mode_b);
  if (pa == pb) throw LayoutError("beamsplitter needs two distinct modes");
  const int out_cutoff = in.modes()[pa].cutoff + in.modes()[pb].cutoff;

  std::vector<Mode> out_modes = in.modes();
  out_modes[pa] = Mode{std::move(out_a), out_cutoff};
  out_modes[pb] = Mode{std::move(out_b), out_cutoff};
  ModeLayout out(std::move(out_modes));

  const BeamsplitterLift lift(params, out_cutoff);
  const CVector& src = state.amplitudes();
  CVector dst = CVector::Zero(static_cast<Eigen::Index>(out.dimension()));
  const std::size_t sa = out.stride(pa), sb = out.stride(pb);

  for (std::size_t i = 0; i < in.dimension(); ++i) {
    const Complex amp = src[static_cast<Eigen::Index>(i)];
    if (amp == 0.0) continue;
    std::size_t base = 0;
    int na = 0, nb = 0;
    for (std::size_t k = 0; k < in.mode_count(); ++k) {
      const int n = in.occupation(i, k);
      if (k == pa) {
        na = n;
      } else if (k == pb) {
        nb = n;
      } else {
        base += static_cast<std::size_t>(n) * out.stride(k);
      }
    }
    const int total = na + nb;
    const CMatrix& blk = lift.block(total);
    for (int j = 0; j <= total; ++j) {
      const std::size_t o = base + static_cast<std::size_t>(j) * sa +
                            static_cast<std::size_t>(total - j) * sb;
      dst[static_cast<Eigen::Index>(o)] += blk(j, na) * amp;
    }
  }
  return FockVector(std::move(out), std::move(dst));
}

void InitialStateParams::validate() const {
  const double norm = std::norm(q) + std::norm(r);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument("initial state requires |q|^2 + |r|^2 = 1");
  }
  if (alpha1 < 0.0 || alpha2 < 0.0) {
    throw std::invalid_argument("oscillator amplitudes must be non-negative");
  }
}

BeamsplitterParams central_beamsplitter() {
  return {std::numbers::pi / 4.0, -std::numbers::pi / 2.0};
}

FockVector signal_state(Complex q, Complex r) {
  // Vacuum enters the a-port, mode s the b-port; outputs (c, d) = (b1, b2).
  ModeLayout ports{{"v", 1}, {"s", 1}};
  FockVector in(ports);
  CVector amps = in.amplitudes();
  amps[static_cast<Eigen::Index>(ports.index({0, 0}))] = q;
  amps[static_cast<Eigen::Index>(ports.index({0, 1}))] = r;
  in = FockVector(ports, std::move(amps));
  const FockOperator u = beamsplitter_unitary(ports, "v", "s", central_beamsplitter());
  return u.apply(in).relabeled("v", std::string(modes::b1)).relabeled("s", std::string(modes::b2));
}

FockVector prepare_state(const InitialStateParams& params, int cutoff1, int cutoff2) {
  params.validate();
  const int l1 = resolve_cutoff(params.alpha1, cutoff1);
  const int l2 = resolve_cutoff(params.alpha2, cutoff2);
  return tensor({coherent_state(params.alpha1, l1, std::string(modes::a1)),
                 signal_state(params.q, params.r),
                 coherent_state(params.alpha2, l2, std::string(modes::a2))});
}

StationModes station_modes(int side) {
  if (side == 1) return {modes::a1, modes::b1, modes::c1, modes::d1};
  if (side == 2) return {modes::a2, modes::b2, modes::c2, modes::d2};
  throw std::invalid_argument("side must be 1 or 2");
}

FockVector apply_measurement_stage(const FockVector& state, int side, const Setting& setting) {
  const StationModes m = station_modes(side);
  if (!state.layout().contains(m.a) || !state.layout().contains(m.b)) {
    throw LayoutError("state does not carry the input modes of station " +
                      std::to_string(side));
  }
  return propagate(state, m.a, m.b, setting.beamsplitter(), std::string(m.c),
                   std::string(m.d));
}

}  // namespace fockbell
