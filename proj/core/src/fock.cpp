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

#include "fockbell/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fockbell {

namespace {

std::string cutoff_message(double alpha, int requested, int minimal) {
  std::ostringstream os;
  os << "cutoff too small for alpha=" << alpha << ": got " << requested
     << ", minimal admissible cutoff is " << minimal;
  return os.str();
}

}  // namespace

CutoffError::CutoffError(double alpha, int requested, int minimal)
    : std::invalid_argument(cutoff_message(alpha, requested, minimal)),
      alpha_(alpha),
      requested_(requested),
      minimal_(minimal) {}

double poisson_tail(double alpha, int cutoff) {
  const double x = alpha * alpha;
  if (x == 0.0) return 0.0;
  const double log_x = std::log(x);
  double tail = 0.0;
  // Terms decay super-exponentially once n > x; stop when they no longer
  // contribute at double precision.
  for (int n = cutoff + 1;; ++n) {
    const double term =
        std::exp(-x + n * log_x - std::lgamma(static_cast<double>(n) + 1.0));
    tail += term;
    if (n > x && term < 1e-30 * std::max(tail, 1e-300)) break;
    if (n > cutoff + 2000) break;
  }
  return tail;
}

int admissible_cutoff(double alpha) {
  int n = 0;
  while (poisson_tail(alpha, n) >= kTailTolerance) ++n;
  return n;
}

int minimal_cutoff(double alpha) {
  return std::max(admissible_cutoff(alpha), kMinimumAutoCutoff);
}

int resolve_cutoff(double alpha, int requested) {
  if (requested < 0) throw std::invalid_argument("cutoff must be non-negative");
  if (requested == 0) return minimal_cutoff(alpha);
  require_cutoff(alpha, requested);
  return requested;
}

void require_cutoff(double alpha, int cutoff) {
  if (poisson_tail(alpha, cutoff) >= kTailTolerance) {
    throw CutoffError(alpha, cutoff, admissible_cutoff(alpha));
  }
}

// ---------------------------------------------------------------- layout

ModeLayout::ModeLayout(std::vector<Mode> modes) : modes_(std::move(modes)) {
  std::set<std::string> seen;
  for (const auto& m : modes_) {
    if (m.cutoff < 1) {
      throw LayoutError("mode '" + m.name + "' has cutoff < 1");
    }
    if (!seen.insert(m.name).second) {
      throw LayoutError("duplicate mode name '" + m.name + "'");
    }
  }
  strides_.assign(modes_.size(), 1);
  dimension_ = 1;
  for (std::size_t k = modes_.size(); k-- > 0;) {
    strides_[k] = dimension_;
    dimension_ *= static_cast<std::size_t>(modes_[k].cutoff + 1);
  }
}

bool ModeLayout::contains(std::string_view name) const noexcept {
  return std::any_of(modes_.begin(), modes_.end(),
                     [&](const Mode& m) { return m.name == name; });
}

std::size_t ModeLayout::position(std::string_view name) const {
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    if (modes_[k].name == name) return k;
  }
  throw LayoutError("unknown mode '" + std::string(name) + "'");
}

std::size_t ModeLayout::index(std::span<const int> occupations) const {
  if (occupations.size() != modes_.size()) {
    throw LayoutError("occupation tuple has wrong length");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    if (occupations[k] < 0 || occupations[k] > modes_[k].cutoff) {
      throw LayoutError("occupation out of range for mode '" + modes_[k].name + "'");
    }
    idx += static_cast<std::size_t>(occupations[k]) * strides_[k];
  }
  return idx;
}

std::vector<int> ModeLayout::occupations(std::size_t index) const {
  std::vector<int> occ(modes_.size());
  for (std::size_t k = 0; k < modes_.size(); ++k) occ[k] = occupation(index, k);
  return occ;
}

ModeLayout ModeLayout::renamed(std::string_view from, std::string to) const {
  auto modes = modes_;
  modes[position(from)].name = std::move(to);
  return ModeLayout(std::move(modes));
}

// ---------------------------------------------------------------- vectors

FockVector::FockVector(ModeLayout layout, CVector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.dimension()) {
    throw LayoutError("amplitude vector length does not match layout dimension");
  }
}

FockVector::FockVector(ModeLayout layout)
    : layout_(std::move(layout)),
      amplitudes_(CVector::Zero(static_cast<Eigen::Index>(layout_.dimension()))) {}

FockVector FockVector::normalized() const {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  return FockVector(layout_, amplitudes_ / n);
}

FockVector FockVector::relabeled(std::string_view from, std::string to) const {
  return FockVector(layout_.renamed(from, std::move(to)), amplitudes_);
}

// ---------------------------------------------------------------- operators

FockOperator::FockOperator(ModeLayout layout, CMatrix matrix, Flags flags)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), flags_(flags) {
  const auto d = static_cast<Eigen::Index>(layout_.dimension());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw LayoutError("operator matrix does not match layout dimension");
  }
}

FockOperator FockOperator::adjoint() const {
  return FockOperator(layout_, matrix_.adjoint(), flags_);
}

FockVector FockOperator::apply(const FockVector& state) const {
  if (!(state.layout() == layout_)) throw LayoutError("layout mismatch in apply");
  return FockVector(layout_, matrix_ * state.amplitudes());
}

double FockOperator::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double FockOperator::unitarity_defect(std::span<const std::size_t> subspace) const {
  double worst = 0.0;
  for (std::size_t i : subspace) {
    for (std::size_t j : subspace) {
      const auto ci = matrix_.col(static_cast<Eigen::Index>(i));
      const auto cj = matrix_.col(static_cast<Eigen::Index>(j));
      const Complex g = ci.dot(cj);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

bool FockOperator::validate() const {
  if (flags_.hermitian && hermiticity_defect() > 1e-12) return false;
  if (flags_.unitary) {
    std::vector<std::size_t> all(layout_.dimension());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    if (unitarity_defect(all) > 1e-10) return false;
  }
  return true;
}

FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs) {
  if (!(lhs.layout_ == rhs.layout_)) throw LayoutError("layout mismatch in product");
  return FockOperator(lhs.layout_, lhs.matrix_ * rhs.matrix_,
                      {false, lhs.flags_.unitary && rhs.flags_.unitary});
}

FockOperator operator+(const FockOperator& lhs, const FockOperator& rhs) {
  if (!(lhs.layout_ == rhs.layout_)) throw LayoutError("layout mismatch in sum");
  return FockOperator(lhs.layout_, lhs.matrix_ + rhs.matrix_,
                      {lhs.flags_.hermitian && rhs.flags_.hermitian, false});
}

FockOperator operator-(const FockOperator& lhs, const FockOperator& rhs) {
  if (!(lhs.layout_ == rhs.layout_)) throw LayoutError("layout mismatch in difference");
  return FockOperator(lhs.layout_, lhs.matrix_ - rhs.matrix_,
                      {lhs.flags_.hermitian && rhs.flags_.hermitian, false});
}

FockOperator operator*(Complex scale, const FockOperator& op) {
  return FockOperator(op.layout_, scale * op.matrix_,
                      {op.flags_.hermitian && scale.imag() == 0.0, false});
}

// ---------------------------------------------------------------- builders

FockVector basis_state(const ModeLayout& layout, std::span<const int> occupations) {
  FockVector v(layout);
  CVector amps = v.amplitudes();
  amps[static_cast<Eigen::Index>(layout.index(occupations))] = 1.0;
  return FockVector(layout, std::move(amps));
}

FockVector basis_state(const ModeLayout& layout, std::initializer_list<int> occupations) {
  return basis_state(layout, std::span<const int>(occupations.begin(), occupations.size()));
}

FockVector vacuum(const ModeLayout& layout) {
  std::vector<int> zeros(layout.mode_count(), 0);
  return basis_state(layout, zeros);
}

FockVector coherent_state(double alpha, int cutoff, std::string mode) {
  require_cutoff(alpha, cutoff);
  ModeLayout layout{{std::move(mode), cutoff}};
  CVector amps(cutoff + 1);
  // c_n = e^{-a^2/2} a^n / sqrt(n!), built by recurrence.
  Complex c = std::exp(-0.5 * alpha * alpha);
  for (int n = 0; n <= cutoff; ++n) {
    amps[n] = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return FockVector(std::move(layout), std::move(amps));
}

FockOperator identity(const ModeLayout& layout) {
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  return FockOperator(layout, CMatrix::Identity(d, d), {true, true});
}

FockOperator ladder(const ModeLayout& layout, std::string_view mode, LadderKind kind) {
  const std::size_t pos = layout.position(mode);
  const std::size_t stride = layout.stride(pos);
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  CMatrix m = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < layout.dimension(); ++i) {
    const int n = layout.occupation(i, pos);
    if (n == 0) continue;
    // <n-1| a |n> = sqrt(n)
    m(static_cast<Eigen::Index>(i - stride), static_cast<Eigen::Index>(i)) =
        std::sqrt(static_cast<double>(n));
  }
  if (kind == LadderKind::raise) m.adjointInPlace();
  return FockOperator(layout, std::move(m));
}

FockOperator number_operator(const ModeLayout& layout, std::string_view mode) {
  const std::size_t pos = layout.position(mode);
  return diagonal_operator(layout, [&](std::size_t i) {
    return static_cast<double>(layout.occupation(i, pos));
  });
}

FockOperator diagonal_operator(const ModeLayout& layout,
                               const std::function<double(std::size_t)>& weight) {
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = weight(static_cast<std::size_t>(i));
  return FockOperator(layout, std::move(m), {true, false});
}

// ---------------------------------------------------------------- tensor

ModeLayout tensor(std::span<const ModeLayout> layouts) {
  std::vector<Mode> modes;
  for (const auto& l : layouts) {
    modes.insert(modes.end(), l.modes().begin(), l.modes().end());
  }
  return ModeLayout(std::move(modes));
}

FockVector tensor(std::span<const FockVector> states) {
  if (states.empty()) throw LayoutError("tensor of an empty list");
  std::vector<ModeLayout> layouts;
  for (const auto& s : states) layouts.push_back(s.layout());
  ModeLayout combined = tensor(layouts);
  CVector amps = states[0].amplitudes();
  for (std::size_t k = 1; k < states.size(); ++k) {
    const CVector& rhs = states[k].amplitudes();
    CVector next(amps.size() * rhs.size());
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      next.segment(i * rhs.size(), rhs.size()) = amps[i] * rhs;
    }
    amps = std::move(next);
  }
  return FockVector(std::move(combined), std::move(amps));
}

FockVector tensor(std::initializer_list<FockVector> states) {
  return tensor(std::span<const FockVector>(states.begin(), states.size()));
}

FockOperator tensor(std::span<const FockOperator> ops) {
  if (ops.empty()) throw LayoutError("tensor of an empty list");
  std::vector<ModeLayout> layouts;
  for (const auto& o : ops) layouts.push_back(o.layout());
  ModeLayout combined = tensor(layouts);
  CMatrix m = ops[0].matrix();
  bool herm = ops[0].flags().hermitian;
  bool unit = ops[0].flags().unitary;
  for (std::size_t k = 1; k < ops.size(); ++k) {
    const CMatrix& rhs = ops[k].matrix();
    CMatrix next(m.rows() * rhs.rows(), m.cols() * rhs.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        next.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = m(i, j) * rhs;
      }
    }
    m = std::move(next);
    herm = herm && ops[k].flags().hermitian;
    unit = unit && ops[k].flags().unitary;
  }
  return FockOperator(std::move(combined), std::move(m), {herm, unit});
}

FockOperator tensor(std::initializer_list<FockOperator> ops) {
  return tensor(std::span<const FockOperator>(ops.begin(), ops.size()));
}

// ---------------------------------------------------------------- expectations

Complex expectation(const FockVector& state, const FockOperator& op) {
  if (!(state.layout() == op.layout())) {
    throw LayoutError("layout mismatch in expectation");
  }
  return state.amplitudes().dot(op.matrix() * state.amplitudes());
}

double expectation(const FockVector& state, const RVector& diagonal) {
  if (static_cast<std::size_t>(diagonal.size()) != state.layout().dimension()) {
    throw LayoutError("diagonal observable does not match layout dimension");
  }
  return (state.amplitudes().cwiseAbs2().array() * diagonal.array()).sum();
}

Complex inner(const FockVector& bra, const FockVector& ket) {
  if (!(bra.layout() == ket.layout())) throw LayoutError("layout mismatch in inner product");
  return bra.amplitudes().dot(ket.amplitudes());
}

FockVector embed(const FockVector& state, const ModeLayout& larger) {
  const ModeLayout& small = state.layout();
  if (small.mode_count() != larger.mode_count()) throw LayoutError("embed: mode count differs");
  for (std::size_t k = 0; k < small.mode_count(); ++k) {
    if (small.modes()[k].name != larger.modes()[k].name ||
        small.modes()[k].cutoff > larger.modes()[k].cutoff) {
      throw LayoutError("embed: target layout does not contain the source layout");
    }
  }
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(larger.dimension()));
  for (std::size_t i = 0; i < small.dimension(); ++i) {
    amps[static_cast<Eigen::Index>(larger.index(small.occupations(i)))] =
        state.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  return FockVector(larger, std::move(amps));
}

}  // namespace fockbell
