#pragma once
// LOCC protocols realizing M_a and Pauli-invariant measurements, simulated
// either exactly (branch-tree aggregation of Kraus operators) or by seeded
// Monte Carlo sampling.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "locc/bounds.hpp"
#include "locc/linalg.hpp"
#include "locc/measurements.hpp"
#include "locc/state.hpp"

namespace locc::protocol {

using bounds::RoundSchedule;
using quantum::CMatrix;
using quantum::PureState;

inline constexpr double kExactTolerance = 1e-10;

/// Names of the M_a outcomes in element order.
inline constexpr std::array<const char*, 4> kMaOutcomeNames{"phi+", "phi-", "psi+", "psi-"};

/// One round: resource x|00> + y|11> and Bob's coefficients, with
/// A x / a = B y / b and A^2 + B^2 = 1.
struct RoundConfig {
  double x;
  double A;
  double B;

  /// Throws std::domain_error when the measurement is a product basis
  /// (no round is needed) or x is outside (0,1).
  static RoundConfig make(double a, double x);
};

enum class Branch { PP1, PQ1, QP2, QQ2 };
const char* branch_name(Branch b);
bool is_good(Branch b);

/// Kraus operator of a round branch. Row (i, j) is Alice's i-th and Bob's j-th
/// basis state inside the branch's subspaces; columns are the A,B input basis.
CMatrix round_kraus(const RoundConfig& cfg, Branch branch);

/// M_a element reached from a good branch at subspace position (i, j).
std::size_t good_leaf_outcome(std::size_t alice, std::size_t bob);

struct RoundOutcome {
  std::size_t round;
  char alice;       // 'P' or 'Q'
  std::string bob;  // "P1", "Q1", "P2" or "Q2"
};

struct ProtocolTrace {
  std::string outcome_label;  // round path, then the M_a element name
  std::size_t outcome_index = 0;
  std::vector<RoundOutcome> round_outcomes;
  double ebits_consumed = 0.0;
  bool teleported = false;
};

/// Classical outcome label to POVM element on A,B.
struct InducedPovm {
  std::vector<std::string> labels;
  std::vector<CMatrix> elements;

  double completeness_residual() const;
};

struct BranchSummary {
  InducedPovm povm;          // aggregated by M_a element
  double expected_cost;      // on the maximally mixed input
  double total_probability;  // sum of leaf weights on the maximally mixed input
  std::size_t leaves;
};

/// Exact aggregation over every branch of the multi-round protocol.
/// `a` is the working-frame amplitude (b = sqrt(1 - a^2)), negative allowed.
BranchSummary aggregate_protocol(double a, const RoundSchedule& schedule);

/// The POVM realized by the protocol. Throws std::logic_error naming the
/// first element that differs from M_a by more than kExactTolerance.
InducedPovm induced_povm(double a, const RoundSchedule& schedule);

struct ProtocolRun {
  ProtocolTrace trace;
  PureState posterior;  // state of the registers after the first two
};

/// One seeded run. `input` has layout (2, 2, ...): A, B, then any ancillas.
ProtocolRun run_protocol(double a, const RoundSchedule& schedule, const PureState& input, std::uint64_t seed);

/// Uniform doubles in [0,1) from a seeded 64-bit Mersenne twister.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);
  double uniform();
  /// Index drawn with the given (not necessarily normalized) weights.
  std::size_t choose(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

/// Random input drawn uniformly from the computational basis of A,B; its
/// outcome statistics equal those of the maximally mixed state.
PureState sample_mixed_input(Sampler& rng);

// Pauli-invariant measurements via generalized Bell measurements.

struct PauliRun {
  ProtocolTrace trace;
  std::size_t ensemble_index;
};

/// Samples s, shares conj(phi_s) on C,D and performs both generalized Bell
/// measurements. The input is on A,B with layout (d, d).
PauliRun run_pauli_povm_protocol(std::size_t d, const quantum::Ensemble& ensemble, const PureState& input,
                                 std::uint64_t seed);

struct PauliSummary {
  InducedPovm povm;  // labels as in pauli_invariant_povm
  double expected_cost;
  double total_probability;
};
PauliSummary aggregate_pauli_protocol(std::size_t d, const quantum::Ensemble& ensemble);

// Entanglement production experiments.

/// Average C|D entanglement left after measuring M on A,B of two maximally
/// entangled pairs AC and BD.
double entanglement_production(const quantum::RankOnePovm& m);

struct ProductionResult {
  double initial;  // AC|BD entanglement before the measurement
  double final;    // average C|D entanglement after it
};
/// Measures M_a on |xi> built with ancilla amplitude c.
ProductionResult production_with_ancilla(double a, double c);
/// Measures M_{a,c} on |eta> with ancilla parameters (a', c').
ProductionResult production_with_ancilla(const quantum::MacParams& m, double a_prime, double c_prime);

// Three-qubit example: eight eigenstates on A', A (Alice) and B (Bob).

/// The measurement, ordered as in the protocol's leaves.
quantum::RankOnePovm three_qubit_measurement();

struct DemoResult {
  double average_cost;
  InducedPovm povm;
};
/// Exact aggregation on the maximally mixed input.
DemoResult demo_three_qubit();
/// Expected ebits on a particular input state of A', A, B.
double demo_three_qubit(const PureState& input);

}  // namespace locc::protocol
