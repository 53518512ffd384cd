#include "locc/measurements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "locc/kernels.hpp"

namespace locc::quantum {
namespace {

PureState two_qubit(cplx a00, cplx a01, cplx a10, cplx a11) { return PureState({a00, a01, a10, a11}, {2, 2}); }

void check_unit(double a, double b, const char* what) {
  if (a < -kParamTolerance || b < -kParamTolerance) throw std::invalid_argument(std::string(what) + ": negative coefficient");
  if (std::abs(a * a + b * b - 1.0) > kParamTolerance)
    throw std::invalid_argument(std::string(what) + ": coefficients are not normalized");
}

}  // namespace

MaParams::MaParams(double a, double b) : a_(a), b_(b) {
  check_unit(a, b, "MaParams");
  if (a < b - kParamTolerance) throw std::invalid_argument("MaParams: requires a >= b");
}

MaParams MaParams::from_a(double a) { return {a, complement_amplitude(a)}; }

MaParams MaParams::from_b(double b) { return {complement_amplitude(b), b}; }

MaAmplitudes MaAmplitudes::checked(double a, double b) {
  if (b < -kParamTolerance || std::abs(a * a + b * b - 1.0) > kParamTolerance)
    throw std::invalid_argument("MaAmplitudes: need b >= 0 and a^2 + b^2 = 1");
  return {a, b};
}

MacParams::MacParams(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  check_unit(a, b, "MacParams(a,b)");
  check_unit(c, d, "MacParams(c,d)");
}

MacParams MacParams::from_ac(double a, double c) {
  return {a, complement_amplitude(a), c, complement_amplitude(c)};
}

RankOnePovm::RankOnePovm(std::vector<PovmElement> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("RankOnePovm: no elements");
  for (const auto& e : elements_) {
    if (!(e.weight > 0.0 && e.weight <= 1.0 + kCompletenessTolerance))
      throw std::invalid_argument("RankOnePovm: weight outside (0,1] for element " + e.label);
    if (!e.state.is_normalized() || e.state.dims() != elements_.front().state.dims())
      throw std::invalid_argument("RankOnePovm: element " + e.label + " is not a normalized state on the common layout");
  }
  const double residual = completeness_residual();
  if (residual > kCompletenessTolerance)
    throw std::invalid_argument("RankOnePovm: elements do not sum to the identity (residual " +
                                std::to_string(residual) + ")");
}

CMatrix RankOnePovm::element_matrix(std::size_t i) const {
  const auto& e = elements_.at(i);
  CMatrix m(e.state.size(), e.state.size());
  m.add_projector(e.weight, e.state.amplitudes());
  return m;
}

double completeness_residual(const std::vector<PovmElement>& elements) {
  const std::size_t n = elements.front().state.size();
  CMatrix sum(n, n);
  for (const auto& e : elements) sum.add_projector(e.weight, e.state.amplitudes());
  return sum.max_abs_diff(CMatrix::identity(n));
}

double RankOnePovm::completeness_residual() const { return quantum::completeness_residual(elements_); }

std::array<PureState, 4> ma_eigenstates(const MaAmplitudes& m) {
  const double a = m.a, b = m.b;
  return {two_qubit(a, 0, 0, b), two_qubit(b, 0, 0, -a), two_qubit(0, a, b, 0), two_qubit(0, b, -a, 0)};
}

std::array<PureState, 4> bell_states() {
  const double s = std::numbers::sqrt2 / 2.0;
  // Built directly so each is normalized to the last bit.
  return {two_qubit(s, 0, 0, s), two_qubit(s, 0, 0, -s), two_qubit(0, s, s, 0), two_qubit(0, s, -s, 0)};
}

RankOnePovm ma_measurement(const MaParams& p) {
  auto s = ma_eigenstates(MaAmplitudes::from(p));
  return RankOnePovm({{1.0, s[0], "phi+"}, {1.0, s[1], "phi-"}, {1.0, s[2], "psi+"}, {1.0, s[3], "psi-"}});
}

RankOnePovm mac_measurement(const MacParams& p) {
  auto sa = ma_eigenstates({p.a(), p.b()});
  auto sc = ma_eigenstates({p.c(), p.d()});
  return RankOnePovm({{1.0, sa[0], "phi+_a"}, {1.0, sa[1], "phi-_a"}, {1.0, sc[2], "psi+_c"}, {1.0, sc[3], "psi-_c"}});
}

RankOnePovm m8_measurement(const MaParams& p) {
  auto sa = ma_eigenstates({p.a(), p.b()});
  auto sb = ma_eigenstates({p.b(), p.a()});
  return RankOnePovm({{0.5, sa[0], "phi+_a"},
                      {0.5, sa[1], "phi-_a"},
                      {0.5, sa[2], "psi+_a"},
                      {0.5, sa[3], "psi-_a"},
                      {0.5, sb[0], "phi+_b"},
                      {0.5, sb[1], "phi-_b"},
                      {0.5, sb[2], "psi+_b"},
                      {0.5, sb[3], "psi-_b"}});
}

RankOnePovm standard_basis_measurement(const Layout& dims) {
  std::vector<PovmElement> elements;
  std::vector<std::size_t> digits(dims.size(), 0);
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string label;
    for (auto v : digits) label += std::to_string(v);
    elements.push_back({1.0, PureState::basis(dims, digits), label});
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++digits[k] < dims[k]) break;
      digits[k] = 0;
    }
  }
  return RankOnePovm(std::move(elements));
}

CMatrix generalized_pauli(std::size_t d, PauliKind kind, unsigned power) {
  if (d < 2) throw std::invalid_argument("generalized_pauli: d must be at least 2");
  CMatrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (kind == PauliKind::X) {
      m((r + power) % d, r) = 1.0;
    } else {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((r * power) % d) / static_cast<double>(d);
      m(r, r) = std::polar(1.0, angle);
    }
  }
  return m;
}

PureState generalized_bell(std::size_t d, std::size_t j, std::size_t k) {
  if (j >= d || k >= d) throw std::invalid_argument("generalized_bell: index out of range");
  std::vector<cplx> amps(d * d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  // (Z^j (x) X^k)|r, r> = omega^{jr} |r, r+k>
  for (std::size_t r = 0; r < d; ++r) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * r) % d) / static_cast<double>(d);
    amps[r * d + (r + k) % d] = s * std::polar(1.0, angle);
  }
  return PureState(std::move(amps), {d, d});
}

CMatrix ma_unitary(const MaParams& p) {
  const double a = p.a(), b = p.b();
  return CMatrix{{a, 0, 0, b}, {0, a, b, 0}, {0, -b, a, 0}, {-b, 0, 0, a}};
}

std::string pauli_label(std::size_t j1, std::size_t k1, std::size_t j2, std::size_t k2, std::size_t s) {
  return std::to_string(j1) + std::to_string(k1) + std::to_string(j2) + std::to_string(k2) + ";" + std::to_string(s);
}

RankOnePovm pauli_invariant_povm(std::size_t d, const Ensemble& ensemble) {
  if (d < 2) throw std::invalid_argument("pauli_invariant_povm: d must be at least 2");
  if (ensemble.empty()) throw std::invalid_argument("pauli_invariant_povm: empty ensemble");
  double total = 0.0;
  for (const auto& [p, phi] : ensemble) {
    if (!(p > 0.0)) throw std::invalid_argument("pauli_invariant_povm: weights must be positive");
    if (phi.dims() != Layout{d, d} || !phi.is_normalized())
      throw std::invalid_argument("pauli_invariant_povm: ensemble states must be normalized d x d states");
    total += p;
  }
  if (std::abs(total - 1.0) > kCompletenessTolerance)
    throw std::invalid_argument("pauli_invariant_povm: ensemble weights do not sum to 1");

  std::vector<CMatrix> zx(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      zx[j * d + k] = generalized_pauli(d, PauliKind::Z, static_cast<unsigned>(j)) *
                      generalized_pauli(d, PauliKind::X, static_cast<unsigned>(k));

  std::vector<PovmElement> elements;
  elements.reserve(ensemble.size() * d * d * d * d);
  const double dd = static_cast<double>(d * d);
  for (std::size_t s = 0; s < ensemble.size(); ++s) {
    const auto& [p, phi] = ensemble[s];
    for (std::size_t j1 = 0; j1 < d; ++j1)
      for (std::size_t k1 = 0; k1 < d; ++k1)
        for (std::size_t j2 = 0; j2 < d; ++j2)
          for (std::size_t k2 = 0; k2 < d; ++k2) {
            const CMatrix op = zx[j1 * d + k1].kron(zx[j2 * d + k2]);
            auto amps = op.apply(phi.amplitudes());
            elements.push_back({p / dd, PureState(std::move(amps), {d, d}), pauli_label(j1, k1, j2, k2, s)});
          }
  }
  return RankOnePovm(std::move(elements));
}

}  // namespace locc::quantum
