#pragma once
// Dense pure states over a multi-subsystem computational basis.
//
// Subsystem order in every tensor product is the layout order; subsystem
// indices always refer to layout positions, never to labels.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "locc/linalg.hpp"

namespace locc::quantum {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr std::size_t kMaxSubsystems = 6;
inline constexpr std::size_t kMaxLocalDimension = 8;

using Layout = std::vector<std::size_t>;

class PureState {
 public:
  /// Normalized state. Throws std::invalid_argument if the squared norm is
  /// not 1 within kNormTolerance or the layout does not match.
  PureState(std::vector<cplx> amplitudes, Layout dims, std::vector<std::string> labels = {});

  /// A state explicitly tagged as unnormalized (e.g. a partial inner product).
  static PureState unnormalized(std::vector<cplx> amplitudes, Layout dims,
                                std::vector<std::string> labels = {});
  /// Computational basis state |digits>.
  static PureState basis(Layout dims, std::span<const std::size_t> digits);
  static PureState basis(Layout dims, std::initializer_list<std::size_t> digits);

  std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  const Layout& dims() const noexcept { return dims_; }
  std::size_t subsystems() const noexcept { return dims_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool is_normalized() const noexcept { return normalized_; }

  double norm_squared() const;
  /// Rescaled copy tagged normalized. Throws std::domain_error on a zero vector.
  PureState normalized() const;
  PureState conjugate() const;
  PureState tensor(const PureState& rhs) const;
  /// Reorders subsystems: result subsystem k is this state's subsystem order[k].
  PureState permuted(std::span<const std::size_t> order) const;
  PureState with_labels(std::vector<std::string> labels) const;

 private:
  PureState() = default;
  std::vector<cplx> amplitudes_;
  Layout dims_;
  std::vector<std::string> labels_;
  bool normalized_ = true;
};

/// <lhs|rhs>
cplx inner_product(const PureState& lhs, const PureState& rhs);

/// 1 - |<lhs|rhs>|^2 for normalized states; zero iff equal up to global phase.
double infidelity(const PureState& lhs, const PureState& rhs);
bool equal_up_to_phase(const PureState& lhs, const PureState& rhs, double tol = 1e-10);

/// Alice/Bob cut of a register. Both sides are nonempty and partition the layout.
class BipartiteSplit {
 public:
  BipartiteSplit(std::size_t subsystem_count, std::vector<std::size_t> left);
  static BipartiteSplit first_vs_rest(std::size_t subsystem_count) { return {subsystem_count, {0}}; }

  const std::vector<std::size_t>& left() const noexcept { return left_; }
  const std::vector<std::size_t>& right() const noexcept { return right_; }
  std::size_t subsystem_count() const noexcept { return left_.size() + right_.size(); }

 private:
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
};

/// Applies op to the listed subsystems (in the listed order).
PureState apply(const CMatrix& op, const PureState& state, std::span<const std::size_t> targets);
PureState apply(const CMatrix& op, const PureState& state, std::initializer_list<std::size_t> targets);

/// Contracts conj(bra) against ket over the subsystems `targets` of ket.
/// The result lives on the remaining subsystems (in layout order) and is tagged
/// unnormalized; its squared norm is the probability weight.
PureState partial_inner_product(const PureState& bra, const PureState& ket,
                                std::span<const std::size_t> targets);
PureState partial_inner_product(const PureState& bra, const PureState& ket,
                                std::initializer_list<std::size_t> targets);

/// Haar-random pure state from a seeded generator (normalized complex Gaussians).
PureState random_state(Layout dims, std::uint64_t seed);

/// Reduced density matrix on `keep` (in the listed order).
CMatrix reduced_density_matrix(const PureState& state, std::span<const std::size_t> keep);

}  // namespace locc::quantum
