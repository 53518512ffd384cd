#include <cmath>
#include <stdexcept>

#include "locc/bounds.hpp"
#include "locc/protocol.hpp"

namespace locc::protocol {

using quantum::cplx;

namespace {

using Pair = std::array<std::array<double, 4>, 2>;

constexpr double kS = 0.70710678118654752440;

// Alice's subspaces on A,C (index 2A + C).
constexpr Pair kAliceP{{{kS, 0, 0, kS}, {0, kS, -kS, 0}}};   // Phi+, Psi-
constexpr Pair kAliceQ{{{kS, 0, 0, -kS}, {0, kS, kS, 0}}};   // Phi-, Psi+

// Bob's subspaces on B,D (index 2B + D).
Pair bob_subspace(Branch branch, double A, double B) {
  switch (branch) {
    case Branch::PP1: return {{{A, 0, 0, B}, {0, B, A, 0}}};
    case Branch::PQ1: return {{{B, 0, 0, -A}, {0, A, -B, 0}}};
    case Branch::QP2: return {{{B, 0, 0, A}, {0, A, B, 0}}};
    case Branch::QQ2: return {{{A, 0, 0, -B}, {0, B, -A, 0}}};
  }
  throw std::logic_error("unknown branch");
}

}  // namespace

RoundConfig RoundConfig::make(double a, double x) {
  const double b = quantum::complement_amplitude(a);
  if (bounds::is_product(a, b)) throw std::domain_error("RoundConfig: product measurement needs no round");
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("RoundConfig: x must lie in (0,1)");
  const double y = quantum::complement_amplitude(x);
  const double p = a / x, q = b / y;
  const double n = std::hypot(p, q);
  return {x, p / n, q / n};
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::PP1: return "PP1";
    case Branch::PQ1: return "PQ1";
    case Branch::QP2: return "QP2";
    case Branch::QQ2: return "QQ2";
  }
  return "?";
}

bool is_good(Branch b) { return b == Branch::PP1 || b == Branch::QQ2; }

CMatrix round_kraus(const RoundConfig& cfg, Branch branch) {
  const Pair& alice = (branch == Branch::PP1 || branch == Branch::PQ1) ? kAliceP : kAliceQ;
  const Pair bob = bob_subspace(branch, cfg.A, cfg.B);
  const double y = quantum::complement_amplitude(cfg.x);
  const double resource[4] = {cfg.x, 0.0, 0.0, y};
  CMatrix k(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t in_a = 0; in_a < 2; ++in_a)
        for (std::size_t in_b = 0; in_b < 2; ++in_b) {
          double sum = 0.0;
          for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t d = 0; d < 2; ++d)
              sum += alice[i][2 * in_a + c] * bob[j][2 * in_b + d] * resource[2 * c + d];
          k(2 * i + j, 2 * in_a + in_b) = sum;
        }
  return k;
}

std::size_t good_leaf_outcome(std::size_t alice, std::size_t bob) {
  static constexpr std::size_t kTable[2][2] = {{0, 2}, {3, 1}};
  return kTable[alice][bob];
}

double InducedPovm::completeness_residual() const {
  if (elements.empty()) return 0.0;
  CMatrix sum(elements.front().rows(), elements.front().cols());
  for (const auto& e : elements) sum += e;
  return sum.max_abs_diff(CMatrix::identity(sum.rows()));
}

Sampler::Sampler(std::uint64_t seed) : engine_(seed) {}

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Sampler::choose(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double u = uniform() * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

PureState sample_mixed_input(Sampler& rng) {
  const std::size_t i = static_cast<std::size_t>(rng.uniform() * 4.0);
  return PureState::basis({2, 2}, {i / 2, i % 2});
}

}  // namespace locc::protocol
