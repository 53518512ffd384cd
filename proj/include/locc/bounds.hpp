#pragma once
// Upper and lower bounds on the entanglement cost of M_a-type measurements.
//
// A measurement M_a is identified by its amplitude a; b = sqrt(1 - a^2).
// Functions taking `double a` accept the canonical range 1/sqrt2 <= a <= 1
// unless stated otherwise.

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "locc/measurements.hpp"
#include "locc/params.hpp"

namespace locc::bounds {

using quantum::MaAmplitudes;
using quantum::MacParams;
using quantum::MaParams;

/// Below this either amplitude counts as zero: the measurement is a product
/// basis and can be performed locally for free.
inline constexpr double kProductThreshold = 1e-12;

bool is_product(double a, double b);

/// min(log2 dA, log2 dB)
double teleport_upper(std::size_t dA, std::size_t dB);

/// (1/d^2) sum_i weight_i E(phi_i), with E taken across the first subsystem.
double avg_entanglement_lower(const quantum::RankOnePovm& m);

/// 1 - 1/((a/x)^2 + (b/y)^2) for the resource x|00> + y|11>, y = sqrt(1 - x^2).
/// Accepts a in [-1, 1] with b = sqrt(1 - a^2).
double failure_probability(double a, double x);
/// Same, with x^2 and y^2 given separately so neither loses precision.
double failure_probability_sq(double a2, double b2, double x2, double y2);

struct NextParameter {
  double raw;                    // a2 as it comes out of the round, possibly negative or below b2
  double raw_b;                  // b2 >= 0
  quantum::MaParams canonical;   // (|a2|, b2) reordered so that a >= b
  bool swapped;                  // true when |a2| < b2
};

/// Parameter of the measurement left over after a failed round.
/// Throws std::domain_error when the denominator vanishes.
NextParameter next_parameter(double a, double x);

struct RoundSchedule {
  std::vector<double> xs;  // resource amplitudes x_1..x_L, each in (0, 1)

  RoundSchedule() = default;
  explicit RoundSchedule(std::vector<double> xs_);
  std::size_t rounds() const noexcept { return xs.size(); }
};

/// B_L: h(x1^2) + F(a, x1) B_{L-1}(a2; x2..), with B_0 = 1 (teleport).
/// `a` is the working-frame amplitude of the protocol and may be negative.
double multiround_upper(double a, const RoundSchedule& schedule);

struct MultiroundResult {
  double value;
  RoundSchedule schedule;  // working-frame schedule reproducing `value` exactly
};

/// Minimizes B_n over n <= max_rounds and over the resource parameters.
MultiroundResult multiround_upper_opt(double a, std::size_t max_rounds);

/// min over x in (0,1] of h(x^2) + F(a, x); x = 1 is plain teleportation.
double single_round_upper(double a);
struct SingleRoundUpper {
  double value;
  double x;  // 1 when teleportation wins
};
SingleRoundUpper single_round_upper_detail(double a);

/// min over l of (sum_{j>=l} alpha_j) / (sum_{j>=l} beta_j), capped at 1.
/// Both spectra descending and normalized.
double jp_success_bound(std::span<const double> initial_sq_schmidt, std::span<const double> final_sq_schmidt);

struct SingleRoundLower {
  double value;
  double c;
  double d;
};
/// Single-round lower bound: ((ac+bd)^2 - c^2)/(1 - c^2) at the root of
/// h[c^2/(ac+bd)^2] = ((ac+bd)^2 - c^2)/(1 - c^2) with b <= d <= 1/sqrt2.
SingleRoundLower single_round_lower_detail(double a);
double single_round_lower(double a);

/// h(c^2) - h[(ac+bd)^2]
double ancilla_gain(double a, double c);

struct AbsoluteLower {
  double value;
  double c;
};
/// max over c of h(c^2) - h[(ac+bd)^2]
AbsoluteLower absolute_lower_detail(double a);
double absolute_lower(double a);
/// max over c of h[(ac+bd)^2] - h(c^2); same maximum, maximizer at the complement.
AbsoluteLower absolute_lower_mirror(double a);

/// The four outcome probabilities of the M_{a,c} production experiment for
/// the ancilla parameters (a', c').
std::array<double, 4> mac_initial_probabilities(const MacParams& m, double a_prime, double c_prime);

struct MacLower {
  double value;
  double a_prime;
  double c_prime;
};
/// max over (a', c') of [h(a'^2) + h(c'^2)]/2 - H(probabilities).
MacLower mac_lower_detail(const MacParams& m);
double mac_lower(const MacParams& m);

/// 2b sqrt(log2(1/b)); requires 0 < b <= 0.1.
double asymptotic_single_round(double b);
/// 1.9123 b; requires 0 < b <= 0.1.
double asymptotic_absolute_lower(double b);
/// Small-b slope of the optimal multi-round protocol.
double berry_slope();
/// Root of (d^2 - c^2) ln(d/c) = 1 with c < d.
double small_b_optimal_c();

struct BoundsRow {
  double a;
  double b;
  double avg_ent;
  double lower_absolute;
  double lower_single;
  double upper_single;
  double upper_multiround;
  std::size_t multiround_rounds;
  double teleport_upper;
};

BoundsRow bounds_row(double a, std::size_t max_rounds);

namespace detail {

inline constexpr double kMinResourceExponent = -14.0;

/// Maps s in [0,1] monotonically to (x^2, y^2) of a resource x|00> + y|11>:
/// s in [0, 1/2] sweeps y^2 from 1e-14 to 1/2 on a log scale, s in [1/2, 1]
/// sweeps x^2 from 1/2 down to 1e-14 likewise. Both squares are returned so
/// the smaller one keeps full relative precision.
std::pair<double, double> resource_split(double s);

}  // namespace detail

}  // namespace locc::bounds
