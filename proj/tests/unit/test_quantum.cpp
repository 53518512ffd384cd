#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "locc/entropy.hpp"
#include "locc/families.hpp"
#include "locc/measurements.hpp"

using namespace locc::quantum;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

double h_ref(double z) {
  if (z <= 0.0 || z >= 1.0) return 0.0;
  return -z * std::log2(z) - (1.0 - z) * std::log2(1.0 - z);
}

// Random unitary by Gram-Schmidt on a complex Gaussian matrix.
CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<std::vector<cplx>> cols(n, std::vector<cplx>(n));
  for (auto& c : cols)
    for (auto& z : c) {
      const double re = g(rng);
      z = cplx(re, g(rng));
    }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx p = 0.0;
      for (std::size_t i = 0; i < n; ++i) p += std::conj(cols[k][i]) * cols[j][i];
      for (std::size_t i = 0; i < n; ++i) cols[j][i] -= p * cols[k][i];
    }
    double nrm = 0.0;
    for (auto z : cols[j]) nrm += std::norm(z);
    for (auto& z : cols[j]) z /= std::sqrt(nrm);
  }
  CMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) = cols[j][i];
  return u;
}

CMatrix projector(const PureState& s, double w = 1.0) {
  CMatrix m(s.size(), s.size());
  m.add_projector(w, s.amplitudes());
  return m;
}

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) == doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-14));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.811278).epsilon(1e-6));
  CHECK_THROWS_AS(binary_entropy(-1e-9), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.0 + 1e-9), std::domain_error);
  const double p[] = {0.5, 0.25, 0.25, 0.0};
  CHECK(shannon_entropy(p) == doctest::Approx(1.5));
}

TEST_CASE("pure state construction and validation") {
  CHECK_THROWS_AS(PureState({1.0, 1.0}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0}, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(PureState::basis({2, 2, 2, 2, 2, 2, 2}, {0, 0, 0, 0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PureState::basis({9}, {0}), std::invalid_argument);
  const auto u = PureState::unnormalized({2.0, 0.0}, {2});
  CHECK_FALSE(u.is_normalized());
  CHECK(u.norm_squared() == 4.0);
  CHECK(u.normalized().is_normalized());
  CHECK_THROWS_AS(PureState::unnormalized({0.0, 0.0}, {2}).normalized(), std::domain_error);
  CHECK_THROWS_AS(BipartiteSplit(2, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteSplit(2, {}), std::invalid_argument);
}

TEST_CASE("permutation and tensor products follow layout order") {
  const auto s = PureState::basis({2, 3}, {1, 2});
  const std::size_t order[] = {1, 0};
  const auto p = s.permuted(order);
  CHECK(p.dims() == Layout{3, 2});
  CHECK(std::abs(inner_product(p, PureState::basis({3, 2}, {2, 1})) - 1.0) < 1e-15);
  const auto t = PureState::basis({2}, {1}).tensor(PureState::basis({2}, {0}));
  CHECK(t[2] == cplx(1.0));
}

TEST_CASE("Schmidt coefficients") {
  SUBCASE("product state") {
    const auto s = schmidt_coefficients(PureState::basis({2, 2}, {0, 0}), BipartiteSplit(2, {0}));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == doctest::Approx(1.0));
  }
  SUBCASE("Bell state") {
    const auto s = schmidt_coefficients(bell_states()[0], BipartiteSplit(2, {0}));
    REQUIRE(s.size() == 2);
    CHECK(s[0] == doctest::Approx(0.5));
    CHECK(s[1] == doctest::Approx(0.5));
  }
  SUBCASE("ancilla state across AC|BD, a^2 = 0.8, c^2 = 0.6") {
    const double a = std::sqrt(0.8), b = std::sqrt(0.2), c = std::sqrt(0.6), d = std::sqrt(0.4);
    const auto xi = xi_state(MaAmplitudes{a, b}, MaAmplitudes{c, d});
    const auto s = schmidt_coefficients(xi, BipartiteSplit(4, {0, 2}));
    REQUIRE(s.size() == 2);
    CHECK(s[0] == doctest::Approx((a * c + b * d) * (a * c + b * d)).epsilon(1e-12));
    CHECK(s[1] == doctest::Approx((a * d - b * c) * (a * d - b * c)).epsilon(1e-10));
    CHECK(entanglement_entropy(xi, BipartiteSplit(4, {0, 2})) ==
          doctest::Approx(h_ref((a * c + b * d) * (a * c + b * d))).epsilon(1e-10));
  }
}

TEST_CASE("ancilla state Schmidt spectrum on a dense grid") {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double a = kInvSqrt2 + (1.0 - kInvSqrt2) * i / 20.0;
      const double c = j / 20.0;
      const double b = complement_amplitude(a), d = complement_amplitude(c);
      const auto s = schmidt_coefficients(xi_state(MaAmplitudes{a, b}, MaAmplitudes{c, d}), BipartiteSplit(4, {0, 2}));
      const double hi = std::pow(a * c + b * d, 2), lo = std::pow(a * d - b * c, 2);
      CAPTURE(a);
      CAPTURE(c);
      CHECK(std::abs(s[0] - std::max(hi, lo)) < 1e-10);
      if (s.size() > 1) CHECK(std::abs(s[1] - std::min(hi, lo)) < 1e-10);
      else CHECK(std::min(hi, lo) < 1e-10);
    }
}

TEST_CASE("Schmidt spectra are descending and normalized") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_state({2, 3, 2}, seed);
    const auto sc = schmidt_coefficients(s, BipartiteSplit(3, {1}));
    double total = 0.0;
    for (std::size_t i = 0; i < sc.size(); ++i) {
      total += sc[i];
      if (i) CHECK(sc[i] <= sc[i - 1]);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("entanglement entropy") {
  CHECK(entanglement_entropy(bell_states()[2]) == doctest::Approx(1.0).epsilon(1e-12));
  const auto s = ma_eigenstates(MaAmplitudes::from(MaParams::from_a(std::sqrt(0.8))));
  CHECK(entanglement_entropy(s[0]) == doctest::Approx(0.721928).epsilon(1e-6));
  CHECK(entanglement_entropy(PureState::basis({3, 3}, {1, 2})) == doctest::Approx(0.0));
}

TEST_CASE("entanglement entropy is invariant under local unitaries") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_state({2, 3, 2}, 100 + trial);
    const BipartiteSplit cut(3, {0, 2});
    const double before = entanglement_entropy(s, cut);
    auto t = apply(random_unitary(4, rng), s, {0, 2});
    t = apply(random_unitary(3, rng), t, {1});
    CHECK(t.is_normalized());
    CHECK(entanglement_entropy(t, cut) == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("apply acts on the listed subsystems in order") {
  // sigma_x on subsystem 1 of |0 0 1> gives |0 1 1>.
  const CMatrix x{{0, 1}, {1, 0}};
  const auto r = apply(x, PureState::basis({2, 2, 2}, {0, 0, 1}), {1});
  CHECK(std::abs(inner_product(r, PureState::basis({2, 2, 2}, {0, 1, 1})) - 1.0) < 1e-15);
  // CNOT with control 2, target 0: |0 0 1> -> |1 0 1>.
  const CMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  const auto c = apply(cnot, PureState::basis({2, 2, 2}, {0, 0, 1}), {2, 0});
  CHECK(std::abs(inner_product(c, PureState::basis({2, 2, 2}, {1, 0, 1})) - 1.0) < 1e-15);
}

TEST_CASE("partial inner products") {
  SUBCASE("measurement state against two Bell pairs") {
    const auto phi = ma_eigenstates(MaAmplitudes::from(MaParams::from_a(std::sqrt(0.8))))[0];
    const auto ket = purified_maximally_mixed(2);
    const auto r = partial_inner_product(phi, ket, {2, 3});
    CHECK_FALSE(r.is_normalized());
    CHECK(r.dims() == Layout{2, 2});
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(r[i] - 0.5 * phi[i]) < 1e-15);
  }
  SUBCASE("basis bra on one qubit") {
    const auto r = partial_inner_product(PureState::basis({2}, {0}), PureState::basis({2, 2}, {0, 0}), {1});
    CHECK(r.norm_squared() == doctest::Approx(1.0));
    CHECK(std::abs(r[0] - 1.0) < 1e-15);
  }
  SUBCASE("Bell kets give the eight states of the interchanged family") {
    const double a = std::sqrt(0.8);
    const auto m8 = m8_measurement(MaParams::from_a(a));
    const auto bell = bell_states();
    const auto bra = ma_eigenstates(MaAmplitudes::from(MaParams::from_a(a)))[0];
    std::set<std::size_t> hit;
    for (const auto& ac : bell)
      for (const auto& bd : bell) {
        // |ac>_{AC} |bd>_{BD} in the layout A, B, C, D.
        const std::size_t order[] = {0, 2, 1, 3};
        const auto ket = ac.tensor(bd).permuted(order);
        const auto r = partial_inner_product(bra, ket, {2, 3});
        CHECK(r.norm_squared() == doctest::Approx(0.25).epsilon(1e-12));
        const auto n = r.normalized();
        std::size_t matches = 0;
        for (std::size_t i = 0; i < m8.size(); ++i)
          if (equal_up_to_phase(n, m8[i].state)) {
            ++matches;
            hit.insert(i);
          }
        CHECK(matches == 1);
      }
    CHECK(hit.size() == 8);
  }
  SUBCASE("weights over a complete bra family sum to one") {
    const auto psi = random_state({2, 3, 2, 2}, 9);
    double total = 0.0;
    for (const auto& b : bell_states()) total += partial_inner_product(b, psi, {3, 0}).norm_squared();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(partial_inner_product(PureState::basis({3}, {0}), PureState::basis({2, 2}, {0, 0}), {0}),
                    std::invalid_argument);
  }
}

TEST_CASE("M_a measurement") {
  SUBCASE("a = 1 is the standard basis") {
    const auto m = ma_measurement(MaParams::product());
    std::set<std::size_t> seen;
    for (const auto& e : m)
      for (std::size_t i = 0; i < 4; ++i)
        if (std::abs(std::abs(e.state[i]) - 1.0) < 1e-15) seen.insert(i);
    CHECK(seen.size() == 4);
  }
  SUBCASE("a = 1/sqrt2 is the Bell basis") {
    const auto m = ma_measurement(MaParams::bell());
    const auto bell = bell_states();
    for (std::size_t k = 0; k < 4; ++k) CHECK(equal_up_to_phase(m[k].state, bell[k]));
  }
  SUBCASE("a^2 = 0.8: equal entanglement, complete") {
    const auto m = ma_measurement(MaParams::from_a(std::sqrt(0.8)));
    for (const auto& e : m) CHECK(entanglement_entropy(e.state) == doctest::Approx(h_ref(0.8)).epsilon(1e-12));
    CHECK(m.completeness_residual() < 1e-14);
  }
  CHECK_THROWS_AS(MaParams(0.5, std::sqrt(0.75)), std::invalid_argument);
  CHECK_THROWS_AS(MaParams(0.9, 0.5), std::invalid_argument);
}

TEST_CASE("composite measurements") {
  SUBCASE("M_{a,c} is complete for any parameters") {
    for (double a : {0.3, 0.7, 0.95})
      for (double c : {0.0, 0.5, 1.0}) CHECK(mac_measurement(MacParams::from_ac(a, c)).completeness_residual() < 1e-14);
  }
  SUBCASE("eight-outcome measurement at a = b repeats the Bell basis") {
    const auto m = m8_measurement(MaParams::bell());
    CHECK(m.size() == 8);
    const auto bell = bell_states();
    for (const auto& b : bell) {
      int count = 0;
      for (const auto& e : m) count += equal_up_to_phase(e.state, b) ? 1 : 0;
      CHECK(count == 2);
    }
    CHECK(m.completeness_residual() < 1e-14);
  }
  SUBCASE("Pauli orbit of one M_a state reproduces the eight-outcome measurement") {
    const auto p = MaParams::from_a(std::sqrt(0.8));
    const auto pauli = pauli_invariant_povm(2, {{1.0, ma_eigenstates(MaAmplitudes::from(p))[0]}});
    const auto m8 = m8_measurement(p);
    CHECK(pauli.size() == 16);
    for (const auto& e : m8) {
      double weight = 0.0;
      for (const auto& q : pauli)
        if (equal_up_to_phase(q.state, e.state)) weight += q.weight;
      CHECK(weight == doctest::Approx(e.weight).epsilon(1e-12));
    }
  }
  SUBCASE("Pauli-invariant POVM for d = 3 against a direct matrix sum") {
    const auto phi = random_state({3, 3}, 2024);
    const auto povm = pauli_invariant_povm(3, {{1.0, phi}});
    CHECK(povm.size() == 81);
    // Independent sum: weights 1/9 on (Z^j1 X^k1 (x) Z^j2 X^k2)|phi>, built entrywise.
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    std::vector<cplx> sum(81 * 1, 0.0);
    CMatrix total(9, 9);
    for (int j1 = 0; j1 < 3; ++j1)
      for (int k1 = 0; k1 < 3; ++k1)
        for (int j2 = 0; j2 < 3; ++j2)
          for (int k2 = 0; k2 < 3; ++k2) {
            std::vector<cplx> v(9);
            for (int m1 = 0; m1 < 3; ++m1)
              for (int m2 = 0; m2 < 3; ++m2) {
                const int r1 = (m1 + k1) % 3, r2 = (m2 + k2) % 3;
                v[r1 * 3 + r2] += std::pow(w, j1 * r1 + j2 * r2) * phi[m1 * 3 + m2];
              }
            total.add_projector(1.0 / 9.0, v);
          }
    CHECK(total.max_abs_diff(CMatrix::identity(9)) < 1e-10);
    CHECK(povm.completeness_residual() < 1e-10);
  }
  SUBCASE("ensembles must be normalized") {
    const auto phi = random_state({2, 2}, 1);
    CHECK_THROWS_AS(pauli_invariant_povm(2, {{0.5, phi}}), std::invalid_argument);
    CHECK_THROWS_AS(pauli_invariant_povm(2, {{1.0, PureState::unnormalized({1, 1, 0, 0}, {2, 2})}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(pauli_invariant_povm(1, {{1.0, phi}}), std::invalid_argument);
  }
}

TEST_CASE("generalized Pauli operators and Bell states") {
  const auto x = generalized_pauli(2, PauliKind::X, 1);
  const auto z = generalized_pauli(2, PauliKind::Z, 1);
  CHECK(x.max_abs_diff(CMatrix{{0, 1}, {1, 0}}) < 1e-15);
  CHECK(z.max_abs_diff(CMatrix{{1, 0}, {0, -1}}) < 1e-15);
  CHECK(equal_up_to_phase(generalized_bell(2, 0, 0), bell_states()[0]));

  // With X|m> = |m+1> and Z|m> = w^m |m>: Z X = w X Z.
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const auto x3 = generalized_pauli(3, PauliKind::X, 1);
  const auto z3 = generalized_pauli(3, PauliKind::Z, 1);
  CHECK((z3 * x3).max_abs_diff(w * (x3 * z3)) < 1e-15);
  CHECK(unitarity_residual(x3) < 1e-15);
  CHECK(unitarity_residual(z3) < 1e-15);
  CHECK(matrix_power(x3, 3).max_abs_diff(CMatrix::identity(3)) < 1e-15);

  for (std::size_t d : {2u, 3u, 4u}) {
    std::vector<PureState> b;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) b.push_back(generalized_bell(d, j, k));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t k = 0; k < b.size(); ++k)
        CHECK(std::abs(inner_product(b[i], b[k]) - (i == k ? 1.0 : 0.0)) < 1e-14);
  }
  CHECK_THROWS_AS(generalized_bell(2, 2, 0), std::invalid_argument);
}

TEST_CASE("the M_a unitary") {
  CHECK(ma_unitary(MaParams::product()).max_abs_diff(CMatrix::identity(4)) < 1e-15);
  for (double a2 : {0.5, 0.6, 0.8, 0.99}) {
    const auto p = MaParams::from_a(std::sqrt(a2));
    const auto u = ma_unitary(p);
    CHECK(unitarity_residual(u) < 1e-12);
    const auto states = ma_eigenstates(MaAmplitudes::from(p));
    CHECK(equal_up_to_phase(apply(u, states[0], {0, 1}), PureState::basis({2, 2}, {0, 0})));
    // U M_a U^dagger is the standard basis measurement.
    const auto standard = standard_basis_measurement({2, 2});
    for (const auto& s : states) {
      const auto image = apply(u, s, {0, 1});
      int matched = 0;
      for (const auto& e : standard) matched += equal_up_to_phase(image, e.state, 1e-12) ? 1 : 0;
      CHECK(matched == 1);
    }
  }
}

TEST_CASE("ancilla families") {
  const auto pm = purified_maximally_mixed(3);
  CHECK(pm.dims() == Layout{3, 3, 3, 3});
  CHECK(entanglement_entropy(pm, BipartiteSplit(4, {0, 2})) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(entanglement_entropy(pm, BipartiteSplit(4, {0, 1})) == doctest::Approx(2.0 * std::log2(3.0)).epsilon(1e-12));
  const auto eta = eta_state(MacParams::from_ac(0.8, 0.9), 0.7, 0.75);
  CHECK(eta.is_normalized());
  // eta with (a, c) = (a', c') and c = a reduces to xi with c = a.
  const auto e2 = eta_state(MacParams::from_ac(0.8, 0.8), 0.6, 0.6);
  const auto x2 = xi_state(MaAmplitudes{0.8, 0.6}, MaAmplitudes{0.6, 0.8});
  CHECK(equal_up_to_phase(e2, x2));
}
