#include <cmath>
#include <stdexcept>
#include <string>

#include "locc/entropy.hpp"
#include "locc/families.hpp"
#include "locc/protocol.hpp"

namespace locc::protocol {

namespace {

// Measures the rank-one elements on subsystems A, B of a four-register state
// A, B, C, D and returns the average C|D entanglement of what remains.
double average_remaining(const quantum::RankOnePovm& m, const PureState& state) {
  double total = 0.0, probability = 0.0;
  for (const auto& e : m) {
    const PureState rest = quantum::partial_inner_product(e.state, state, {0, 1});
    const double p = e.weight * rest.norm_squared();
    probability += p;
    if (p > 0.0) total += p * quantum::entanglement_entropy(rest.normalized());
  }
  if (std::abs(probability - 1.0) > kExactTolerance)
    throw std::logic_error("production: outcome probabilities sum to " + std::to_string(probability));
  return total;
}

}  // namespace

double entanglement_production(const quantum::RankOnePovm& m) {
  if (m.dims().size() != 2) throw std::invalid_argument("entanglement_production: measurement must be bipartite");
  return average_remaining(m, quantum::purified_maximally_mixed(m.dims()));
}

ProductionResult production_with_ancilla(double a, double c) {
  const double b = quantum::complement_amplitude(a);
  const double d = quantum::complement_amplitude(c);
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("production_with_ancilla: c outside [0,1]");
  const PureState xi = quantum::xi_state(quantum::MaAmplitudes::checked(a, b), quantum::MaAmplitudes{c, d});
  const quantum::BipartiteSplit cut(4, {0, 2});
  const double initial = quantum::entanglement_entropy(xi, cut);
  return {initial, average_remaining(quantum::ma_measurement(quantum::MaParams(std::abs(a), b)), xi)};
}

ProductionResult production_with_ancilla(const quantum::MacParams& m, double a_prime, double c_prime) {
  const PureState eta = quantum::eta_state(m, a_prime, c_prime);
  const quantum::BipartiteSplit cut(4, {0, 2});
  return {quantum::entanglement_entropy(eta, cut), average_remaining(quantum::mac_measurement(m), eta)};
}

}  // namespace locc::protocol
