#pragma once
// Composite states used by the entanglement-production arguments.

#include <cstddef>

#include "locc/params.hpp"
#include "locc/state.hpp"

namespace locc::quantum {

/// (1/d) sum_{k,l} |k>_A |l>_B |k>_C |l>_D on layout A, B, C, D.
/// The reduced state of AB is maximally mixed.
PureState purified_maximally_mixed(std::size_t d);

/// Same construction for a register of arbitrary dims: each subsystem i is
/// maximally entangled with a reference copy appended after all of them.
PureState purified_maximally_mixed(const Layout& dims);

/// (1/2) sum_k |phi_k(a)>_AB |phi_k(c)>_CD over the four M_a / M_c eigenstates,
/// on layout A, B, C, D.
PureState xi_state(const MaParams& measurement, const MaParams& ancilla);
PureState xi_state(const MaAmplitudes& measurement, const MaAmplitudes& ancilla);

/// (1/2)[phi+_a phi+_a' + phi-_a phi-_a' + psi+_c psi+_c' + psi-_c psi-_c'],
/// layout A, B, C, D, where the primed states use (a', c').
PureState eta_state(const MacParams& measurement, double a_prime, double c_prime);

}  // namespace locc::quantum
