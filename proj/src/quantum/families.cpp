#include "locc/families.hpp"

#include <cmath>
#include <stdexcept>

#include "locc/measurements.hpp"

namespace locc::quantum {

PureState purified_maximally_mixed(std::size_t d) { return purified_maximally_mixed(Layout{d, d}); }

PureState purified_maximally_mixed(const Layout& dims) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  Layout full = dims;
  full.insert(full.end(), dims.begin(), dims.end());
  std::vector<cplx> amps(total * total);
  const double s = 1.0 / std::sqrt(static_cast<double>(total));
  // |i>_system |i>_reference for every joint basis index i.
  for (std::size_t i = 0; i < total; ++i) amps[i * total + i] = s;
  return PureState(std::move(amps), std::move(full));
}

PureState xi_state(const MaParams& measurement, const MaParams& ancilla) {
  return xi_state(MaAmplitudes::from(measurement), MaAmplitudes::from(ancilla));
}

PureState xi_state(const MaAmplitudes& measurement, const MaAmplitudes& ancilla) {
  const auto ab = ma_eigenstates(measurement);
  const auto cd = ma_eigenstates(ancilla);
  std::vector<cplx> amps(16);
  for (std::size_t k = 0; k < 4; ++k) {
    PureState term = ab[k].tensor(cd[k]);
    for (std::size_t i = 0; i < 16; ++i) amps[i] += 0.5 * term[i];
  }
  return PureState(std::move(amps), {2, 2, 2, 2}, {"A", "B", "C", "D"});
}

PureState eta_state(const MacParams& m, double a_prime, double c_prime) {
  const MaAmplitudes ap{a_prime, complement_amplitude(a_prime)};
  const MaAmplitudes cp{c_prime, complement_amplitude(c_prime)};
  const auto sa = ma_eigenstates({m.a(), m.b()});
  const auto sc = ma_eigenstates({m.c(), m.d()});
  const auto ta = ma_eigenstates(ap);
  const auto tc = ma_eigenstates(cp);
  const PureState* ab[4] = {&sa[0], &sa[1], &sc[2], &sc[3]};
  const PureState* cd[4] = {&ta[0], &ta[1], &tc[2], &tc[3]};
  std::vector<cplx> amps(16);
  for (std::size_t k = 0; k < 4; ++k) {
    PureState term = ab[k]->tensor(*cd[k]);
    for (std::size_t i = 0; i < 16; ++i) amps[i] += 0.5 * term[i];
  }
  return PureState(std::move(amps), {2, 2, 2, 2}, {"A", "B", "C", "D"});
}

}  // namespace locc::quantum
