#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "locc/bounds.hpp"
#include "locc/entropy.hpp"
#include "locc/families.hpp"
#include "locc/measurements.hpp"
#include "locc/params.hpp"
#include "locc/protocol.hpp"

using namespace locc;
using namespace locc::protocol;
using bounds::RoundSchedule;
using quantum::complement_amplitude;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

double h(double z) { return quantum::binary_entropy(std::clamp(z, 0.0, 1.0)); }

double sigma3(double p, std::size_t n) { return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

// Elementwise comparison of two POVMs given in the same order.
double povm_diff(const InducedPovm& got, const quantum::RankOnePovm& want) {
  double worst = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) {
    CMatrix e = want.element_matrix(k);
    worst = std::max(worst, got.elements[k].max_abs_diff(e));
  }
  return worst;
}

}  // namespace

TEST_CASE("round configuration") {
  const double a = std::sqrt(0.8), x = std::sqrt(0.9);
  const auto cfg = RoundConfig::make(a, x);
  CHECK(cfg.A * cfg.A + cfg.B * cfg.B == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cfg.A * x / a == doctest::Approx(cfg.B * complement_amplitude(x) / complement_amplitude(a)).epsilon(1e-12));
  CHECK_THROWS_AS(RoundConfig::make(1.0, x), std::domain_error);
  CHECK_THROWS_AS(RoundConfig::make(a, 1.0), std::domain_error);
}

TEST_CASE("round Kraus operators form a complete instrument") {
  for (double x : {0.2, kInvSqrt2, 0.95}) {
    const auto cfg = RoundConfig::make(std::sqrt(0.7), x);
    CMatrix sum(4, 4);
    for (Branch br : {Branch::PP1, Branch::PQ1, Branch::QP2, Branch::QQ2}) {
      const CMatrix k = round_kraus(cfg, br);
      sum = sum + k.adjoint() * k;
    }
    CHECK(sum.max_abs_diff(CMatrix::identity(4)) < 1e-12);
  }
  CHECK(is_good(Branch::PP1));
  CHECK(is_good(Branch::QQ2));
  CHECK_FALSE(is_good(Branch::PQ1));
  CHECK_FALSE(is_good(Branch::QP2));
}

TEST_CASE("induced POVM examples") {
  SUBCASE("product basis") {
    const auto p = induced_povm(1.0, RoundSchedule({0.9}));
    // Elements phi+, phi-, psi+, psi- are |00>, |11>, |01>, |10> at a = 1.
    const auto basis = quantum::standard_basis_measurement({2, 2});
    const std::size_t order[] = {0, 3, 1, 2};
    for (std::size_t k = 0; k < 4; ++k) CHECK(p.elements[k].max_abs_diff(basis.element_matrix(order[k])) < 1e-10);
  }
  SUBCASE("one round") {
    const double a = std::sqrt(0.8);
    const auto p = induced_povm(a, RoundSchedule({std::sqrt(0.9)}));
    CHECK(povm_diff(p, quantum::ma_measurement(quantum::MaParams::from_a(a))) < 1e-10);
    CHECK(p.completeness_residual() < 1e-10);
  }
  SUBCASE("Bell basis with two rounds") {
    const auto p = induced_povm(kInvSqrt2, RoundSchedule({0.9, 0.6}));
    std::vector<quantum::PovmElement> bell;
    for (const auto& s : quantum::bell_states()) bell.push_back({1.0, s, ""});
    CHECK(povm_diff(p, quantum::RankOnePovm(std::move(bell))) < 1e-10);
  }
}

TEST_CASE("exact aggregation: exactness, conservation and cost") {
  const std::vector<std::vector<double>> schedules{{0.9}, {0.6}, {kInvSqrt2}, {0.95, 0.8}, {0.3, 0.9}, {0.99, 0.2, 0.7}};
  for (double a2 : {0.5, 0.6, 0.75, 0.9, 0.99}) {
    const double a = std::sqrt(a2);
    for (const auto& xs : schedules) {
      CAPTURE(a2);
      CAPTURE(xs.size());
      const RoundSchedule s(xs);
      const auto summary = aggregate_protocol(a, s);
      CHECK(std::abs(summary.total_probability - 1.0) < 1e-10);
      CHECK(std::abs(summary.expected_cost - bounds::multiround_upper(a, s)) < 1e-10);
      CHECK_NOTHROW(induced_povm(a, s));
      // Exactness holds in every working frame, including negative a.
      CHECK_NOTHROW(induced_povm(-a, s));
    }
  }
}

TEST_CASE("first-step cost recursion") {
  const double a = std::sqrt(0.8), x = std::sqrt(0.9);
  const RoundSchedule s({x, 0.7});
  const double rest = aggregate_protocol(bounds::next_parameter(a, x).raw, RoundSchedule({0.7})).expected_cost;
  CHECK(aggregate_protocol(a, s).expected_cost ==
        doctest::Approx(h(x * x) + bounds::failure_probability(a, x) * rest).epsilon(1e-12));
}

TEST_CASE("protocol runs") {
  SUBCASE("product basis costs nothing and reads the qubits") {
    for (std::size_t i = 0; i < 4; ++i) {
      const auto in = quantum::PureState::basis({2, 2}, {i / 2, i % 2});
      const auto run = run_protocol(1.0, RoundSchedule({0.9}), in, 7 + i);
      CHECK(run.trace.ebits_consumed == 0.0);
      CHECK_FALSE(run.trace.teleported);
      CHECK(run.trace.round_outcomes.empty());
      // Outcomes phi+, phi-, psi+, psi- are |00>, |11>, |01>, |10> at a = 1.
      const std::size_t expected[] = {0, 2, 3, 1};
      CHECK(run.trace.outcome_index == expected[i]);
    }
  }
  SUBCASE("ledger matches the path") {
    const double a = std::sqrt(0.8);
    const RoundSchedule s({std::sqrt(0.9), 0.8});
    Sampler inputs(99);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto run = run_protocol(a, s, sample_mixed_input(inputs), seed);
      double expected = 0.0;
      for (std::size_t r = 0; r < run.trace.round_outcomes.size(); ++r) expected += h(s.xs[r] * s.xs[r]);
      if (run.trace.teleported) expected += 1.0;
      CHECK(run.trace.ebits_consumed == doctest::Approx(expected).epsilon(1e-14));
      CHECK(run.trace.outcome_index < 4);
    }
  }
  SUBCASE("ancillas are carried into the posterior") {
    const auto in = quantum::random_state({2, 2, 3}, 5);
    const auto run = run_protocol(std::sqrt(0.8), RoundSchedule({0.9}), in, 3);
    CHECK(run.posterior.dims() == quantum::Layout{3});
    CHECK(run.posterior.norm_squared() == doctest::Approx(1.0));
  }
  SUBCASE("seeded runs are reproducible") {
    const auto in = quantum::random_state({2, 2}, 11);
    const auto r1 = run_protocol(std::sqrt(0.7), RoundSchedule({0.8, 0.5}), in, 1234);
    const auto r2 = run_protocol(std::sqrt(0.7), RoundSchedule({0.8, 0.5}), in, 1234);
    CHECK(r1.trace.outcome_label == r2.trace.outcome_label);
    CHECK(r1.trace.ebits_consumed == r2.trace.ebits_consumed);
  }
  CHECK_THROWS_AS(run_protocol(0.9, RoundSchedule({0.5}), quantum::PureState::basis({3, 2}, {0, 0}), 1),
                  std::invalid_argument);
}

TEST_CASE("Bell point: half the runs finish in the first round") {
  const std::size_t n = 20000;
  Sampler inputs(2024);
  std::size_t good = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const auto run = run_protocol(kInvSqrt2, RoundSchedule({kInvSqrt2}), sample_mixed_input(inputs), 100 + t);
    const auto& first = run.trace.round_outcomes.front();
    const bool g = (first.alice == 'P' && first.bob == "P1") || (first.alice == 'Q' && first.bob == "Q2");
    good += g ? 1 : 0;
  }
  CHECK(std::abs(static_cast<double>(good) / n - 0.5) < sigma3(0.5, n));
  CHECK(bounds::failure_probability(kInvSqrt2, kInvSqrt2) == doctest::Approx(0.5));
}

TEST_CASE("Monte Carlo outcome frequencies") {
  const double a = std::sqrt(0.8);
  const RoundSchedule s({std::sqrt(0.9)});
  const std::size_t n = 20000;
  Sampler inputs(77);
  std::size_t fails = 0;
  std::array<std::size_t, 4> counts{};
  for (std::size_t t = 0; t < n; ++t) {
    const auto run = run_protocol(a, s, sample_mixed_input(inputs), 5000 + t);
    fails += run.trace.teleported ? 1 : 0;
    ++counts[run.trace.outcome_index];
  }
  const double f = bounds::failure_probability(a, std::sqrt(0.9));
  CHECK(std::abs(static_cast<double>(fails) / n - f) < sigma3(f, n));
  for (auto c : counts) CHECK(std::abs(static_cast<double>(c) / n - 0.25) < sigma3(0.25, n));
}

TEST_CASE("Pauli-invariant protocol") {
  SUBCASE("two qubits, one state: cost is h(a^2)") {
    const double a = std::sqrt(0.8);
    const quantum::Ensemble ens{{1.0, quantum::ma_eigenstates(quantum::MaAmplitudes{a, complement_amplitude(a)})[0]}};
    const auto summary = aggregate_pauli_protocol(2, ens);
    CHECK(summary.expected_cost == doctest::Approx(h(0.8)).epsilon(1e-12));
    CHECK(std::abs(summary.total_probability - 1.0) < 1e-10);
    CHECK(povm_diff(summary.povm, quantum::pauli_invariant_povm(2, ens)) < 1e-10);
    Sampler inputs(8);
    double total = 0.0;
    for (std::uint64_t t = 0; t < 500; ++t) {
      const auto in = quantum::PureState::basis({2, 2}, {static_cast<std::size_t>(inputs.uniform() * 2),
                                                         static_cast<std::size_t>(inputs.uniform() * 2)});
      total += run_pauli_povm_protocol(2, ens, in, t).trace.ebits_consumed;
    }
    CHECK(total / 500 == doctest::Approx(h(0.8)).epsilon(1e-12));
  }
  SUBCASE("Bell resource: outcomes are uniform") {
    const quantum::Ensemble ens{{1.0, quantum::bell_states()[0]}};
    const std::size_t n = 16000;
    Sampler inputs(3);
    std::map<std::string, std::size_t> counts;
    for (std::size_t t = 0; t < n; ++t) {
      const auto in = quantum::PureState::basis({2, 2}, {static_cast<std::size_t>(inputs.uniform() * 2),
                                                         static_cast<std::size_t>(inputs.uniform() * 2)});
      ++counts[run_pauli_povm_protocol(2, ens, in, 900 + t).trace.outcome_label];
    }
    CHECK(counts.size() == 16);
    for (const auto& [label, c] : counts) {
      CAPTURE(label);
      CHECK(std::abs(static_cast<double>(c) / n - 1.0 / 16) < sigma3(1.0 / 16, n));
    }
  }
  SUBCASE("qutrits with a random state") {
    const quantum::Ensemble ens{{0.6, quantum::random_state({3, 3}, 17)}, {0.4, quantum::random_state({3, 3}, 18)}};
    const auto summary = aggregate_pauli_protocol(3, ens);
    const auto target = quantum::pauli_invariant_povm(3, ens);
    CHECK(povm_diff(summary.povm, target) < 1e-10);
    CHECK(summary.povm.completeness_residual() < 1e-10);
    CHECK(std::abs(summary.expected_cost - bounds::avg_entanglement_lower(target)) < 1e-10);
    for (std::size_t k = 0; k < target.size(); ++k) CHECK(summary.povm.labels[k] == target[k].label);
  }
  SUBCASE("Monte Carlo matches the aggregated probabilities") {
    const quantum::Ensemble ens{{1.0, quantum::random_state({2, 2}, 23)}};
    const auto in = quantum::random_state({2, 2}, 24);
    const auto target = quantum::pauli_invariant_povm(2, ens);
    const std::size_t n = 16000;
    std::vector<std::size_t> counts(target.size());
    for (std::size_t t = 0; t < n; ++t) ++counts[run_pauli_povm_protocol(2, ens, in, t).trace.outcome_index];
    for (std::size_t k = 0; k < target.size(); ++k) {
      const double p = target[k].weight * std::norm(quantum::inner_product(target[k].state, in));
      CHECK(std::abs(static_cast<double>(counts[k]) / n - p) < sigma3(p, n) + 1e-12);
    }
  }
}

TEST_CASE("entanglement production") {
  CHECK(entanglement_production(quantum::standard_basis_measurement({2, 2})) == doctest::Approx(0.0));
  const auto p = quantum::MaParams::from_a(std::sqrt(0.8));
  CHECK(entanglement_production(quantum::ma_measurement(p)) == doctest::Approx(h(0.8)).epsilon(1e-12));
  CHECK(entanglement_production(quantum::m8_measurement(p)) == doctest::Approx(h(0.8)).epsilon(1e-12));
  for (const auto& m : {quantum::ma_measurement(p), quantum::m8_measurement(p),
                        quantum::mac_measurement(quantum::MacParams::from_ac(0.8, 0.95)),
                        quantum::pauli_invariant_povm(3, {{1.0, quantum::random_state({3, 3}, 4)}})})
    CHECK(std::abs(entanglement_production(m) - bounds::avg_entanglement_lower(m)) < 1e-10);
}

TEST_CASE("production with an ancilla") {
  const auto bell = production_with_ancilla(kInvSqrt2, kInvSqrt2);
  CHECK(bell.initial == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(bell.final == doctest::Approx(1.0).epsilon(1e-12));
  for (double c : {0.1, 0.5, 0.9}) {
    const auto r = production_with_ancilla(1.0, c);
    CHECK(r.initial == doctest::Approx(h(c * c)).epsilon(1e-12));
    CHECK(r.final == doctest::Approx(h(c * c)).epsilon(1e-12));
  }
  const double a = std::sqrt(0.8), b = std::sqrt(0.2), c = std::sqrt(0.3), d = std::sqrt(0.7);
  const auto r = production_with_ancilla(a, c);
  CHECK(std::abs((r.final - r.initial) - (h(0.3) - h(std::pow(a * c + b * d, 2)))) < 1e-10);

  SUBCASE("four-outcome form") {
    const auto m = quantum::MacParams::from_ac(0.8, 0.9);
    const auto g = production_with_ancilla(m, 0.7, 0.6);
    CHECK(g.final == doctest::Approx((h(0.49) + h(0.36)) / 2).epsilon(1e-12));
    const auto pr = bounds::mac_initial_probabilities(m, 0.7, 0.6);
    double expected = 0.0;
    for (double q : pr)
      if (q > 0) expected -= q * std::log2(q);
    CHECK(g.initial == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("three-qubit demo") {
  const auto demo = demo_three_qubit();
  CHECK(demo.average_cost == 0.5);
  CHECK(demo.povm.completeness_residual() < 1e-12);
  CHECK(demo_three_qubit(quantum::PureState::basis({2, 2, 2}, {1, 0, 0})) == 0.0);
  CHECK(demo_three_qubit(quantum::PureState::basis({2, 2, 2}, {0, 0, 0})) == doctest::Approx(1.0));
  CHECK(three_qubit_measurement().size() == 8);
}
