#pragma once
// Rank-one POVMs and the operator/state families used to build them.

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "locc/linalg.hpp"
#include "locc/params.hpp"
#include "locc/state.hpp"

namespace locc::quantum {

inline constexpr double kCompletenessTolerance = 1e-10;

struct PovmElement {
  double weight;  // in (0, 1]
  PureState state;
  std::string label;
};

/// Complete measurement {weight_i |phi_i><phi_i|}. Construction checks that
/// every state is normalized and that the elements sum to the identity.
class RankOnePovm {
 public:
  explicit RankOnePovm(std::vector<PovmElement> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  const PovmElement& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }
  const Layout& dims() const { return elements_.front().state.dims(); }
  std::size_t dimension() const { return elements_.front().state.size(); }

  /// weight_i |phi_i><phi_i|
  CMatrix element_matrix(std::size_t i) const;
  /// max |sum_i weight_i |phi_i><phi_i| - I| entrywise.
  double completeness_residual() const;

 private:
  std::vector<PovmElement> elements_;
};

double completeness_residual(const std::vector<PovmElement>& elements);

/// The four eigenstates of M_a in the order phi+, phi-, psi+, psi-.
/// Accepts working-frame amplitudes (a may be negative).
std::array<PureState, 4> ma_eigenstates(const MaAmplitudes& m);

/// Bell states Phi+, Phi-, Psi+, Psi- on two qubits.
std::array<PureState, 4> bell_states();

RankOnePovm ma_measurement(const MaParams& p);
RankOnePovm mac_measurement(const MacParams& p);
/// Eight outcomes of weight 1/2: M_a's states plus those with a and b interchanged.
RankOnePovm m8_measurement(const MaParams& p);

/// Standard basis measurement on a layout, labels are digit strings.
RankOnePovm standard_basis_measurement(const Layout& dims);

using Ensemble = std::vector<std::pair<double, PureState>>;

/// Elements (p_s/d^2) |psi><psi| with psi = (Z^j1 X^k1 (x) Z^j2 X^k2)|phi_s>,
/// ordered by s, then j1, k1, j2, k2. Labels are "j1k1j2k2;s".
RankOnePovm pauli_invariant_povm(std::size_t d, const Ensemble& ensemble);

enum class PauliKind { X, Z };

/// X|m> = |m+1 mod d>, Z|m> = omega^m |m>, omega = exp(2 pi i/d); raised to `power`.
CMatrix generalized_pauli(std::size_t d, PauliKind kind, unsigned power);

/// (1/sqrt d)(Z^j (x) X^k) sum_r |r, r>
PureState generalized_bell(std::size_t d, std::size_t j, std::size_t k);

/// e^{i alpha sigma_y (x) sigma_x} with cos(alpha) = a, sin(alpha) = b.
CMatrix ma_unitary(const MaParams& p);

/// Pauli-string label used by pauli_invariant_povm and the Bell-measurement protocol.
std::string pauli_label(std::size_t j1, std::size_t k1, std::size_t j2, std::size_t k2, std::size_t s);

}  // namespace locc::quantum
