#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "locc/entropy.hpp"
#include "locc/protocol.hpp"

namespace locc::protocol {

using quantum::cplx;
using quantum::MaAmplitudes;

namespace {

constexpr std::array<Branch, 4> kBranches{Branch::PP1, Branch::PQ1, Branch::QP2, Branch::QQ2};

double h(double z) { return quantum::binary_entropy(std::clamp(z, 0.0, 1.0)); }

MaAmplitudes working(double a) { return {a, quantum::complement_amplitude(a)}; }

bool product(double a) { return bounds::is_product(a, quantum::complement_amplitude(a)); }

// Row vector <bra| T.
std::vector<cplx> bra_times(const PureState& bra, const CMatrix& t) {
  std::vector<cplx> row(t.cols());
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const cplx c = std::conj(bra[r]);
    for (std::size_t col = 0; col < t.cols(); ++col) row[col] += c * t(r, col);
  }
  return row;
}

void validate(double a, const RoundSchedule& schedule) {
  if (!(a >= -1.0 && a <= 1.0)) throw std::invalid_argument("protocol: |a| > 1");
  for (double x : schedule.xs)
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("protocol: every x must lie in (0,1)");
}

struct Aggregator {
  const RoundSchedule& schedule;
  std::array<CMatrix, 4> elements{CMatrix(4, 4), CMatrix(4, 4), CMatrix(4, 4), CMatrix(4, 4)};
  double expected_cost = 0.0;
  double total_probability = 0.0;
  std::size_t leaves = 0;

  void leaf(std::size_t outcome, std::span<const cplx> row, double cost) {
    std::vector<cplx> ket(row.size());
    double w = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      ket[i] = std::conj(row[i]);
      w += std::norm(row[i]);
    }
    elements[outcome].add_projector(1.0, ket);
    // Weight on the maximally mixed input: tr(K^dag K) / 4.
    expected_cost += 0.25 * w * cost;
    total_probability += 0.25 * w;
    ++leaves;
  }

  void finish_with(double a, const CMatrix& t, double cost) {
    const auto states = quantum::ma_eigenstates(working(a));
    for (std::size_t k = 0; k < 4; ++k) leaf(k, bra_times(states[k], t), cost);
  }

  void descend(std::size_t level, double a, const CMatrix& t, double cost) {
    if (product(a)) return finish_with(a, t, cost);
    if (level == schedule.rounds()) return finish_with(a, t, cost + 1.0);
    const double x = schedule.xs[level];
    const RoundConfig cfg = RoundConfig::make(a, x);
    const double spent = cost + h(x * x);
    for (Branch br : kBranches) {
      const CMatrix next = round_kraus(cfg, br) * t;
      if (is_good(br)) {
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) leaf(good_leaf_outcome(i, j), next.row(2 * i + j), spent);
      } else {
        descend(level + 1, bounds::next_parameter(a, x).raw, next, spent);
      }
    }
  }
};

}  // namespace

BranchSummary aggregate_protocol(double a, const RoundSchedule& schedule) {
  validate(a, schedule);
  Aggregator agg{schedule};
  agg.descend(0, a, CMatrix::identity(4), 0.0);
  BranchSummary out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.povm.labels.emplace_back(kMaOutcomeNames[k]);
    out.povm.elements.push_back(std::move(agg.elements[k]));
  }
  out.expected_cost = agg.expected_cost;
  out.total_probability = agg.total_probability;
  out.leaves = agg.leaves;
  return out;
}

InducedPovm induced_povm(double a, const RoundSchedule& schedule) {
  BranchSummary summary = aggregate_protocol(a, schedule);
  const auto states = quantum::ma_eigenstates(working(a));
  for (std::size_t k = 0; k < 4; ++k) {
    CMatrix expected(4, 4);
    expected.add_projector(1.0, states[k].amplitudes());
    const double diff = summary.povm.elements[k].max_abs_diff(expected);
    if (diff > kExactTolerance)
      throw std::logic_error("induced_povm: element " + summary.povm.labels[k] + " differs from M_a by " +
                             std::to_string(diff));
  }
  return std::move(summary.povm);
}

ProtocolRun run_protocol(double a, const RoundSchedule& schedule, const PureState& input, std::uint64_t seed) {
  validate(a, schedule);
  if (input.subsystems() < 2 || input.dims()[0] != 2 || input.dims()[1] != 2)
    throw std::invalid_argument("run_protocol: input must start with two qubits A, B");
  if (!input.is_normalized()) throw std::invalid_argument("run_protocol: input must be normalized");
  Sampler rng(seed);
  ProtocolTrace trace;
  PureState state = input;
  std::string path;

  auto measure_finally = [&](const std::array<PureState, 4>& bras, auto&& outcome_of) {
    std::vector<PureState> branches;
    std::vector<double> weights;
    for (const auto& bra : bras) {
      branches.push_back(quantum::partial_inner_product(bra, state, {0, 1}));
      weights.push_back(branches.back().norm_squared());
    }
    const std::size_t pick = rng.choose(weights);
    trace.outcome_index = outcome_of(pick);
    trace.outcome_label = path + (path.empty() ? "" : ":") + kMaOutcomeNames[trace.outcome_index];
    return ProtocolRun{trace, branches[pick].normalized()};
  };
  auto identity = [](std::size_t k) { return k; };

  double cur = a;
  for (std::size_t level = 0;; ++level) {
    if (product(cur)) return measure_finally(quantum::ma_eigenstates(working(cur)), identity);
    if (level == schedule.rounds()) {
      trace.teleported = true;
      trace.ebits_consumed += 1.0;
      return measure_finally(quantum::ma_eigenstates(working(cur)), identity);
    }
    const double x = schedule.xs[level];
    const RoundConfig cfg = RoundConfig::make(cur, x);
    trace.ebits_consumed += h(x * x);
    std::vector<PureState> outcomes;
    std::vector<double> weights;
    for (Branch br : kBranches) {
      outcomes.push_back(quantum::apply(round_kraus(cfg, br), state, {0, 1}));
      weights.push_back(outcomes.back().norm_squared());
    }
    const std::size_t pick = rng.choose(weights);
    const Branch br = kBranches[pick];
    const std::string name = branch_name(br);
    trace.round_outcomes.push_back({level + 1, name[0], name.substr(1)});
    path += (path.empty() ? "" : ".") + name;
    state = outcomes[pick].normalized();
    if (is_good(br)) {
      std::array<PureState, 4> basis{PureState::basis({2, 2}, {0, 0}), PureState::basis({2, 2}, {0, 1}),
                                     PureState::basis({2, 2}, {1, 0}), PureState::basis({2, 2}, {1, 1})};
      return measure_finally(basis, [](std::size_t k) { return good_leaf_outcome(k / 2, k % 2); });
    }
    cur = bounds::next_parameter(cur, x).raw;
  }
}

}  // namespace locc::protocol
