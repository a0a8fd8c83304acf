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

#pragma once

// Truncated multimode Fock-space algebra.
//
// Basis convention: row-major over the declared mode list, i.e. the LAST
// mode varies fastest.  For modes (m0, m1, ..., mk) with cutoffs (L0..Lk)
//
//     index = ((n0 * (L1+1) + n1) * (L2+1) + n2) ...
//
// Ladder operators are the plain truncated matrices: raise maps the top
// level |L> to the zero vector, so [a, a^dagger] = 1 holds only below the
// cutoff.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fockbell {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Poisson tail threshold of the cutoff rule.
inline constexpr double kTailTolerance = 1e-12;
/// Floor applied when a cutoff is chosen automatically.
inline constexpr int kMinimumAutoCutoff = 12;

class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a Fock cutoff cannot hold a coherent amplitude.
class CutoffError : public std::invalid_argument {
 public:
  CutoffError(double alpha, int requested, int minimal);
  double alpha() const noexcept { return alpha_; }
  int requested() const noexcept { return requested_; }
  int minimal() const noexcept { return minimal_; }

 private:
  double alpha_;
  int requested_;
  int minimal_;
};

/// Sum_{n > cutoff} e^{-a^2} a^{2n} / n!, evaluated term by term.
double poisson_tail(double alpha, int cutoff);

/// Smallest N whose Poisson tail is below kTailTolerance.
int admissible_cutoff(double alpha);

/// admissible_cutoff(alpha), but never below kMinimumAutoCutoff.
int minimal_cutoff(double alpha);

/// Resolves a user cutoff: 0 means automatic, anything else is checked.
int resolve_cutoff(double alpha, int requested);

/// Throws CutoffError if `cutoff` cannot hold amplitude `alpha`.
void require_cutoff(double alpha, int cutoff);

struct Mode {
  std::string name;
  int cutoff = 1;

  bool operator==(const Mode&) const = default;
};

class ModeLayout {
 public:
  ModeLayout() = default;
  explicit ModeLayout(std::vector<Mode> modes);
  ModeLayout(std::initializer_list<Mode> modes)
      : ModeLayout(std::vector<Mode>(modes)) {}

  const std::vector<Mode>& modes() const noexcept { return modes_; }
  std::size_t mode_count() const noexcept { return modes_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }

  bool contains(std::string_view name) const noexcept;
  /// Position of `name` in the mode list; throws LayoutError if absent.
  std::size_t position(std::string_view name) const;
  int cutoff(std::string_view name) const { return modes_[position(name)].cutoff; }
  /// Index step between |.., n, ..> and |.., n+1, ..> in mode `pos`.
  std::size_t stride(std::size_t pos) const noexcept { return strides_[pos]; }

  std::size_t index(std::span<const int> occupations) const;
  std::size_t index(std::initializer_list<int> occupations) const {
    return index(std::span<const int>(occupations.begin(), occupations.size()));
  }
  std::vector<int> occupations(std::size_t index) const;
  /// Occupation of mode `pos` at basis index `index`.
  int occupation(std::size_t index, std::size_t pos) const noexcept {
    return static_cast<int>((index / strides_[pos]) %
                            static_cast<std::size_t>(modes_[pos].cutoff + 1));
  }

  /// Copy with mode `from` renamed to `to` (cutoff kept).
  ModeLayout renamed(std::string_view from, std::string to) const;

  bool operator==(const ModeLayout& other) const { return modes_ == other.modes_; }

 private:
  std::vector<Mode> modes_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_ = 1;
};

class FockVector {
 public:
  FockVector() = default;
  FockVector(ModeLayout layout, CVector amplitudes);
  /// Zero vector over `layout`.
  explicit FockVector(ModeLayout layout);

  const ModeLayout& layout() const noexcept { return layout_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::initializer_list<int> occupations) const {
    return amplitudes_[static_cast<Eigen::Index>(layout_.index(occupations))];
  }
  double squared_norm() const { return amplitudes_.squaredNorm(); }
  FockVector normalized() const;

  /// Same amplitudes with a mode renamed.
  FockVector relabeled(std::string_view from, std::string to) const;

 private:
  ModeLayout layout_;
  CVector amplitudes_;
};

/// Advisory structure flags checked by FockOperator::validate.
struct OperatorFlags {
  bool hermitian = false;
  bool unitary = false;
};

class FockOperator {
 public:
  using Flags = OperatorFlags;

  FockOperator() = default;
  FockOperator(ModeLayout layout, CMatrix matrix, Flags flags = {});

  const ModeLayout& layout() const noexcept { return layout_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  Flags flags() const noexcept { return flags_; }

  FockOperator adjoint() const;
  FockVector apply(const FockVector& state) const;

  /// max |M - M^dagger|.
  double hermiticity_defect() const;
  /// max |M^dagger M - I| restricted to the given basis indices.
  double unitarity_defect(std::span<const std::size_t> subspace) const;
  /// Checks the advisory flags against the stated tolerances.
  bool validate() const;

  friend FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs);
  friend FockOperator operator+(const FockOperator& lhs, const FockOperator& rhs);
  friend FockOperator operator-(const FockOperator& lhs, const FockOperator& rhs);
  friend FockOperator operator*(Complex scale, const FockOperator& op);

 private:
  ModeLayout layout_;
  CMatrix matrix_;
  Flags flags_;
};

enum class LadderKind { lower, raise };

FockVector basis_state(const ModeLayout& layout, std::span<const int> occupations);
FockVector basis_state(const ModeLayout& layout, std::initializer_list<int> occupations);
FockVector vacuum(const ModeLayout& layout);

/// Truncated (not renormalized) coherent state with real amplitude.
FockVector coherent_state(double alpha, int cutoff, std::string mode = "a");

FockOperator identity(const ModeLayout& layout);
FockOperator ladder(const ModeLayout& layout, std::string_view mode, LadderKind kind);
FockOperator number_operator(const ModeLayout& layout, std::string_view mode);
/// Diagonal operator whose entries are `weight(index)`.
FockOperator diagonal_operator(const ModeLayout& layout,
                               const std::function<double(std::size_t)>& weight);

/// Concatenates layouts in order; throws LayoutError on duplicate names.
ModeLayout tensor(std::span<const ModeLayout> layouts);
FockVector tensor(std::span<const FockVector> states);
FockVector tensor(std::initializer_list<FockVector> states);
FockOperator tensor(std::span<const FockOperator> ops);
FockOperator tensor(std::initializer_list<FockOperator> ops);

/// <psi|M|psi>; the imaginary part is kept so Hermiticity drift shows up.
Complex expectation(const FockVector& state, const FockOperator& op);
/// <psi|D|psi> for a diagonal observable given by its entries.
double expectation(const FockVector& state, const RVector& diagonal);
Complex inner(const FockVector& bra, const FockVector& ket);

/// Copies `state` into a layout with the same modes and cutoffs at least as
/// large; throws LayoutError otherwise.
FockVector embed(const FockVector& state, const ModeLayout& larger);

}  // namespace fockbell
