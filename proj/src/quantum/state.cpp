#include "locc/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "locc/kernels.hpp"

namespace locc::quantum {
namespace {

std::size_t product(const Layout& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_layout(const std::vector<cplx>& amps, const Layout& dims, const std::vector<std::string>& labels) {
  if (dims.size() > kMaxSubsystems) throw std::invalid_argument("PureState: too many subsystems");
  for (auto d : dims)
    if (d == 0 || d > kMaxLocalDimension) throw std::invalid_argument("PureState: subsystem dimension out of range");
  if (product(dims) != amps.size())
    throw std::invalid_argument("PureState: amplitude count " + std::to_string(amps.size()) +
                                " does not match layout");
  if (!labels.empty() && labels.size() != dims.size())
    throw std::invalid_argument("PureState: label count does not match layout");
}

// Row-major strides for a layout.
std::vector<std::size_t> strides(const Layout& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> picked) {
  std::vector<bool> used(n, false);
  for (auto t : picked) {
    if (t >= n) throw std::invalid_argument("subsystem index out of range");
    if (used[t]) throw std::invalid_argument("duplicate subsystem index");
    used[t] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k)
    if (!used[k]) rest.push_back(k);
  return rest;
}

// Amplitudes of `state` reordered so that `front` subsystems come first, then
// the rest in layout order. Returns (matrix of front_dim x rest_dim, rest dims).
struct Grouped {
  std::vector<cplx> data;
  std::size_t front_dim;
  std::size_t rest_dim;
  std::vector<std::size_t> rest;
};

Grouped group(const PureState& state, std::span<const std::size_t> front) {
  auto rest = complement(state.subsystems(), front);
  std::vector<std::size_t> order(front.begin(), front.end());
  order.insert(order.end(), rest.begin(), rest.end());
  PureState p = state.permuted(order);
  std::size_t fd = 1;
  for (auto t : front) fd *= state.dims()[t];
  std::vector<cplx> data(p.amplitudes().begin(), p.amplitudes().end());
  return {std::move(data), fd, state.size() / fd, std::move(rest)};
}

}  // namespace

PureState::PureState(std::vector<cplx> amplitudes, Layout dims, std::vector<std::string> labels)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)), labels_(std::move(labels)) {
  check_layout(amplitudes_, dims_, labels_);
  const double n2 = norm_squared();
  if (std::abs(n2 - 1.0) > kNormTolerance)
    throw std::invalid_argument("PureState: squared norm " + std::to_string(n2) + " is not 1");
}

PureState PureState::unnormalized(std::vector<cplx> amplitudes, Layout dims, std::vector<std::string> labels) {
  check_layout(amplitudes, dims, labels);
  PureState s;
  s.amplitudes_ = std::move(amplitudes);
  s.dims_ = std::move(dims);
  s.labels_ = std::move(labels);
  s.normalized_ = false;
  return s;
}

PureState PureState::basis(Layout dims, std::span<const std::size_t> digits) {
  if (digits.size() != dims.size()) throw std::invalid_argument("PureState::basis: digit count mismatch");
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (digits[k] >= dims[k]) throw std::invalid_argument("PureState::basis: digit out of range");
    index = index * dims[k] + digits[k];
  }
  std::vector<cplx> amps(product(dims));
  amps.at(index) = 1.0;
  return PureState(std::move(amps), std::move(dims));
}

PureState PureState::basis(Layout dims, std::initializer_list<std::size_t> digits) {
  return basis(std::move(dims), std::span<const std::size_t>(digits.begin(), digits.size()));
}

double PureState::norm_squared() const { return kernels::norm2(amplitudes_); }

PureState PureState::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw std::domain_error("PureState::normalized: zero vector");
  std::vector<cplx> amps = amplitudes_;
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : amps) z *= inv;
  return PureState(std::move(amps), dims_, labels_);
}

PureState PureState::conjugate() const {
  PureState s = *this;
  for (auto& z : s.amplitudes_) z = std::conj(z);
  return s;
}

PureState PureState::tensor(const PureState& rhs) const {
  std::vector<cplx> amps(size() * rhs.size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < rhs.size(); ++j) amps[i * rhs.size() + j] = amplitudes_[i] * rhs.amplitudes_[j];
  Layout dims = dims_;
  dims.insert(dims.end(), rhs.dims_.begin(), rhs.dims_.end());
  std::vector<std::string> labels;
  if (!labels_.empty() && !rhs.labels_.empty()) {
    labels = labels_;
    labels.insert(labels.end(), rhs.labels_.begin(), rhs.labels_.end());
  }
  if (normalized_ && rhs.normalized_) {
    PureState s;
    s.amplitudes_ = std::move(amps);
    s.dims_ = std::move(dims);
    s.labels_ = std::move(labels);
    check_layout(s.amplitudes_, s.dims_, s.labels_);
    return s;
  }
  return unnormalized(std::move(amps), std::move(dims), std::move(labels));
}

PureState PureState::permuted(std::span<const std::size_t> order) const {
  if (order.size() != dims_.size() || complement(dims_.size(), order).size() != 0)
    throw std::invalid_argument("PureState::permuted: not a permutation");
  Layout new_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims_[order[k]];
  const auto old_strides = strides(dims_);
  std::vector<cplx> amps(size());
  std::vector<std::size_t> digit(order.size(), 0);
  for (std::size_t idx = 0; idx < size(); ++idx) {
    std::size_t src = 0;
    for (std::size_t k = 0; k < order.size(); ++k) src += digit[k] * old_strides[order[k]];
    amps[idx] = amplitudes_[src];
    for (std::size_t k = order.size(); k-- > 0;) {
      if (++digit[k] < new_dims[k]) break;
      digit[k] = 0;
    }
  }
  PureState s = *this;
  s.amplitudes_ = std::move(amps);
  s.dims_ = std::move(new_dims);
  if (!labels_.empty())
    for (std::size_t k = 0; k < order.size(); ++k) s.labels_[k] = labels_[order[k]];
  return s;
}

PureState PureState::with_labels(std::vector<std::string> labels) const {
  if (labels.size() != dims_.size()) throw std::invalid_argument("with_labels: label count mismatch");
  PureState s = *this;
  s.labels_ = std::move(labels);
  return s;
}

cplx inner_product(const PureState& lhs, const PureState& rhs) {
  if (lhs.dims() != rhs.dims()) throw std::invalid_argument("inner_product: layout mismatch");
  return kernels::dotc(lhs.amplitudes(), rhs.amplitudes());
}

double infidelity(const PureState& lhs, const PureState& rhs) {
  return 1.0 - std::norm(inner_product(lhs, rhs));
}

bool equal_up_to_phase(const PureState& lhs, const PureState& rhs, double tol) {
  return lhs.dims() == rhs.dims() && std::abs(infidelity(lhs, rhs)) <= tol;
}

BipartiteSplit::BipartiteSplit(std::size_t subsystem_count, std::vector<std::size_t> left)
    : left_(std::move(left)), right_(complement(subsystem_count, left_)) {
  if (left_.empty() || right_.empty()) throw std::invalid_argument("BipartiteSplit: both sides must be nonempty");
}

PureState apply(const CMatrix& op, const PureState& state, std::span<const std::size_t> targets) {
  Grouped g = group(state, targets);
  if (!op.square() || op.cols() != g.front_dim) throw std::invalid_argument("apply: operator dimension mismatch");
  // (op (x) I) on the grouped layout, then undo the grouping.
  std::vector<cplx> out(g.data.size());
  for (std::size_t r = 0; r < op.rows(); ++r)
    for (std::size_t c = 0; c < op.cols(); ++c) {
      const cplx s = op(r, c);
      if (s == cplx{}) continue;
      kernels::axpy(s, std::span<const cplx>(g.data.data() + c * g.rest_dim, g.rest_dim),
                    std::span<cplx>(out.data() + r * g.rest_dim, g.rest_dim));
    }
  std::vector<std::size_t> order(targets.begin(), targets.end());
  order.insert(order.end(), g.rest.begin(), g.rest.end());
  Layout grouped_dims;
  for (auto k : order) grouped_dims.push_back(state.dims()[k]);
  std::vector<std::size_t> inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inverse[order[k]] = k;
  PureState result = PureState::unnormalized(std::move(out), std::move(grouped_dims)).permuted(inverse);
  std::vector<cplx> amps(result.amplitudes().begin(), result.amplitudes().end());
  if (state.is_normalized() && std::abs(result.norm_squared() - 1.0) <= kNormTolerance)
    return PureState(std::move(amps), state.dims(), state.labels());
  return PureState::unnormalized(std::move(amps), state.dims(), state.labels());
}

PureState apply(const CMatrix& op, const PureState& state, std::initializer_list<std::size_t> targets) {
  return apply(op, state, std::span<const std::size_t>(targets.begin(), targets.size()));
}

PureState partial_inner_product(const PureState& bra, const PureState& ket, std::span<const std::size_t> targets) {
  if (bra.subsystems() != targets.size()) throw std::invalid_argument("partial_inner_product: bra/target count mismatch");
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (targets[k] >= ket.subsystems() || ket.dims()[targets[k]] != bra.dims()[k])
      throw std::invalid_argument("partial_inner_product: dimension mismatch");
  }
  Grouped g = group(ket, targets);
  std::vector<cplx> out(g.rest_dim);
  for (std::size_t c = 0; c < g.front_dim; ++c) {
    const cplx s = std::conj(bra[c]);
    if (s == cplx{}) continue;
    kernels::axpy(s, std::span<const cplx>(g.data.data() + c * g.rest_dim, g.rest_dim), out);
  }
  Layout dims;
  std::vector<std::string> labels;
  for (auto r : g.rest) {
    dims.push_back(ket.dims()[r]);
    if (!ket.labels().empty()) labels.push_back(ket.labels()[r]);
  }
  return PureState::unnormalized(std::move(out), std::move(dims), std::move(labels));
}

PureState partial_inner_product(const PureState& bra, const PureState& ket, std::initializer_list<std::size_t> targets) {
  return partial_inner_product(bra, ket, std::span<const std::size_t>(targets.begin(), targets.size()));
}

CMatrix reduced_density_matrix(const PureState& state, std::span<const std::size_t> keep) {
  Grouped g = group(state, keep);
  CMatrix rho(g.front_dim, g.front_dim);
  for (std::size_t r = 0; r < g.front_dim; ++r)
    for (std::size_t c = r; c < g.front_dim; ++c) {
      const cplx v = kernels::dotc(std::span<const cplx>(g.data.data() + c * g.rest_dim, g.rest_dim),
                                   std::span<const cplx>(g.data.data() + r * g.rest_dim, g.rest_dim));
      rho(r, c) = v;
      rho(c, r) = std::conj(v);
    }
  return rho;
}

PureState random_state(Layout dims, std::uint64_t seed) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> amps(n);
  for (auto& z : amps) {
    const double re = gauss(engine);
    z = cplx(re, gauss(engine));
  }
  return PureState::unnormalized(std::move(amps), std::move(dims)).normalized();
}

}  // namespace locc::quantum
