#include "locc/entropy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace locc::quantum {

double binary_entropy(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0,1]: " + std::to_string(z));
  if (z == 0.0 || z == 1.0) return 0.0;
  return -(z * std::log2(z) + (1.0 - z) * std::log2(1.0 - z));
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw std::domain_error("shannon_entropy: negative probability");
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

std::vector<double> schmidt_coefficients(const PureState& state, const BipartiteSplit& split) {
  if (split.subsystem_count() != state.subsystems())
    throw std::invalid_argument("schmidt_coefficients: split does not match layout");
  std::size_t left_dim = 1, right_dim = 1;
  for (auto k : split.left()) left_dim *= state.dims()[k];
  for (auto k : split.right()) right_dim *= state.dims()[k];
  const auto& smaller = left_dim <= right_dim ? split.left() : split.right();
  const CMatrix rho = reduced_density_matrix(state, smaller);

  const auto n = static_cast<Eigen::Index>(rho.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rho(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("schmidt_coefficients: eigensolver failed");

  const double trace = rho.trace().real();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda > kSchmidtClamp) out.push_back(lambda / trace);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double entanglement_entropy(const PureState& state, const BipartiteSplit& split) {
  const auto lambdas = schmidt_coefficients(state, split);
  if (lambdas.size() == 2) return binary_entropy(std::clamp(lambdas[0], 0.0, 1.0));
  return shannon_entropy(lambdas);
}

double entanglement_entropy(const PureState& state) {
  if (state.subsystems() != 2) throw std::invalid_argument("entanglement_entropy: expected two subsystems");
  return entanglement_entropy(state, BipartiteSplit(2, {0}));
}

}  // namespace locc::quantum
