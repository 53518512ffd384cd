#include <cmath>
#include <stdexcept>

#include "locc/protocol.hpp"

namespace locc::protocol {

namespace {

const quantum::Layout kDims{2, 2, 2};  // A', A, B

// Leaves of the protocol: Alice reads A'. On 0 she teleports A to Bob, who
// measures the Bell basis on A, B; on 1 both read their qubits locally.
struct Leaf {
  PureState bra;
  double cost;
  std::string label;
};

std::vector<Leaf> leaves() {
  std::vector<Leaf> out;
  const auto bells = quantum::bell_states();
  const char* names[4] = {"0:Phi+", "0:Phi-", "0:Psi+", "0:Psi-"};
  const PureState zero = PureState::basis({2}, {0});
  for (std::size_t k = 0; k < 4; ++k) out.push_back({zero.tensor(bells[k]), 1.0, names[k]});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      out.push_back({PureState::basis(kDims, {1, a, b}), 0.0, "1:" + std::to_string(a) + std::to_string(b)});
  return out;
}

}  // namespace

quantum::RankOnePovm three_qubit_measurement() {
  std::vector<quantum::PovmElement> elements;
  for (auto& l : leaves()) elements.push_back({1.0, l.bra, l.label});
  return quantum::RankOnePovm(std::move(elements));
}

DemoResult demo_three_qubit() {
  DemoResult out{0.0, {}};
  for (const auto& l : leaves()) {
    CMatrix e(8, 8);
    e.add_projector(1.0, l.bra.amplitudes());
    out.povm.labels.push_back(l.label);
    out.povm.elements.push_back(std::move(e));
  }
  // Only Alice's first reading of A' decides the cost: outcome 0 teleports.
  // On the maximally mixed input its weight is the mean over basis inputs.
  const PureState zero = PureState::basis({2}, {0});
  double weight = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const PureState in = PureState::basis(kDims, {i >> 2, (i >> 1) & 1, i & 1});
    weight += quantum::partial_inner_product(zero, in, {0}).norm_squared();
  }
  out.average_cost = weight / 8.0;
  return out;
}

double demo_three_qubit(const PureState& input) {
  if (input.dims() != kDims || !input.is_normalized())
    throw std::invalid_argument("demo_three_qubit: input must be a normalized state of three qubits");
  double cost = 0.0;
  for (const auto& l : leaves()) cost += l.cost * std::norm(quantum::inner_product(l.bra, input));
  return cost;
}

}  // namespace locc::protocol
