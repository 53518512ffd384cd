#pragma once
// Entropies in ebits (base-2 logarithms) and Schmidt spectra.

#include <span>
#include <vector>

#include "locc/state.hpp"

namespace locc::quantum {

/// Eigenvalues of a reduced density matrix below this are treated as zero.
inline constexpr double kSchmidtClamp = 1e-14;

/// h(z) = -z log2 z - (1-z) log2(1-z), with 0 log 0 = 0.
/// Throws std::domain_error outside [0, 1].
double binary_entropy(double z);

/// Shannon entropy (base 2) of a probability vector; zero entries contribute 0.
double shannon_entropy(std::span<const double> probabilities);

/// Squared Schmidt coefficients across the split, descending, zeros dropped.
std::vector<double> schmidt_coefficients(const PureState& state, const BipartiteSplit& split);

/// Entropy of entanglement across the split, in ebits.
double entanglement_entropy(const PureState& state, const BipartiteSplit& split);

/// Entanglement of a two-subsystem state across its only cut.
double entanglement_entropy(const PureState& state);

}  // namespace locc::quantum
