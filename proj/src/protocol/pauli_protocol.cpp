#include <cmath>
#include <stdexcept>

#include "locc/entropy.hpp"
#include "locc/protocol.hpp"

namespace locc::protocol {

using quantum::cplx;

namespace {

void validate(std::size_t d, const quantum::Ensemble& ensemble) {
  if (d < 2) throw std::invalid_argument("pauli protocol: d must be at least 2");
  if (ensemble.empty()) throw std::invalid_argument("pauli protocol: empty ensemble");
  double total = 0.0;
  for (const auto& [p, phi] : ensemble) {
    if (!(p > 0.0)) throw std::invalid_argument("pauli protocol: weights must be positive");
    if (phi.dims() != quantum::Layout{d, d} || !phi.is_normalized())
      throw std::invalid_argument("pauli protocol: ensemble states must be normalized d x d states");
    total += p;
  }
  if (std::abs(total - 1.0) > quantum::kCompletenessTolerance)
    throw std::invalid_argument("pauli protocol: weights must sum to 1");
}

std::vector<PureState> bell_basis(std::size_t d) {
  std::vector<PureState> out;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) out.push_back(quantum::generalized_bell(d, j, k));
  return out;
}

// A generalized Bell outcome (j, k) on one side selects the Pauli Z^j X^{-k}
// on that side of the ensemble state.
std::size_t pauli_power(std::size_t d, std::size_t k) { return (d - k) % d; }

}  // namespace

PauliRun run_pauli_povm_protocol(std::size_t d, const quantum::Ensemble& ensemble, const PureState& input,
                                 std::uint64_t seed) {
  validate(d, ensemble);
  if (input.dims() != quantum::Layout{d, d} || !input.is_normalized())
    throw std::invalid_argument("run_pauli_povm_protocol: input must be a normalized d x d state");
  Sampler rng(seed);
  // Fixed draw order: ensemble index, Alice's outcome, Bob's outcome.
  std::vector<double> weights;
  for (const auto& e : ensemble) weights.push_back(e.first);
  const std::size_t s = rng.choose(weights);
  const PureState& phi = ensemble[s].second;

  PureState state = input.tensor(phi.conjugate());  // A, B, C, D
  const auto bells = bell_basis(d);

  auto measure = [&](const PureState& ket, std::initializer_list<std::size_t> targets) {
    std::vector<PureState> branches;
    std::vector<double> w;
    for (const auto& bell : bells) {
      branches.push_back(quantum::partial_inner_product(bell, ket, targets));
      w.push_back(branches.back().norm_squared());
    }
    const std::size_t pick = rng.choose(w);
    return std::pair{pick, branches[pick].normalized()};
  };
  const auto [alice, after_alice] = measure(state, {0, 2});  // leaves B, D
  const auto [bob, after_bob] = measure(after_alice, {0, 1});

  PauliRun run{};
  run.ensemble_index = s;
  const std::size_t j1 = alice / d, k1 = pauli_power(d, alice % d);
  const std::size_t j2 = bob / d, k2 = pauli_power(d, bob % d);
  run.trace.outcome_label = quantum::pauli_label(j1, k1, j2, k2, s);
  run.trace.outcome_index = (((s * d + j1) * d + k1) * d + j2) * d + k2;
  run.trace.ebits_consumed = quantum::entanglement_entropy(phi);
  run.trace.round_outcomes.push_back({1, 'B', "B"});
  (void)after_bob;
  return run;
}

PauliSummary aggregate_pauli_protocol(std::size_t d, const quantum::Ensemble& ensemble) {
  validate(d, ensemble);
  const std::size_t n = d * d;
  const auto bells = bell_basis(d);
  PauliSummary out{};
  out.povm.elements.assign(ensemble.size() * n * n, CMatrix(n, n));
  out.povm.labels.resize(out.povm.elements.size());
  for (std::size_t s = 0; s < ensemble.size(); ++s) {
    const auto& [p, phi] = ensemble[s];
    const double cost = quantum::entanglement_entropy(phi);
    const PureState resource = phi.conjugate();
    const double amp = std::sqrt(p);
    for (std::size_t alice = 0; alice < n; ++alice)
      for (std::size_t bob = 0; bob < n; ++bob) {
        // ket[in] = conj(row[in]) = sqrt(p) sum_{c,dd} u[a,c] v[b,dd] conj(r[c,dd])
        std::vector<cplx> ket(n);
        const auto& u = bells[alice];
        const auto& v = bells[bob];
        for (std::size_t ia = 0; ia < d; ++ia)
          for (std::size_t ib = 0; ib < d; ++ib) {
            cplx sum = 0.0;
            for (std::size_t c = 0; c < d; ++c)
              for (std::size_t e = 0; e < d; ++e) sum += u[ia * d + c] * v[ib * d + e] * std::conj(resource[c * d + e]);
            ket[ia * d + ib] = amp * sum;
          }
        double w = 0.0;
        for (const auto& z : ket) w += std::norm(z);
        const std::size_t j1 = alice / d, k1 = pauli_power(d, alice % d);
        const std::size_t j2 = bob / d, k2 = pauli_power(d, bob % d);
        const std::size_t idx = (((s * d + j1) * d + k1) * d + j2) * d + k2;
        out.povm.elements[idx].add_projector(1.0, ket);
        out.povm.labels[idx] = quantum::pauli_label(j1, k1, j2, k2, s);
        out.expected_cost += w / static_cast<double>(n) * cost;
        out.total_probability += w / static_cast<double>(n);
      }
  }
  return out;
}

}  // namespace locc::protocol
