#include "locc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "locc/entropy.hpp"
#include "locc/optimize.hpp"

namespace locc::bounds {

using quantum::binary_entropy;
using quantum::complement_amplitude;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// h on arguments that may overshoot [0,1] by rounding.
double h(double z) { return binary_entropy(std::clamp(z, 0.0, 1.0)); }

double ratio_term(double p, double q) {
  if (p == 0.0) return 0.0;
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  return p / q;
}

void check_canonical(double a, const char* what) {
  if (!(a >= kInvSqrt2 - quantum::kParamTolerance && a <= 1.0 + quantum::kParamTolerance))
    throw std::invalid_argument(std::string(what) + ": a must lie in [1/sqrt2, 1]");
}

void check_small_b(double b) {
  if (!(b > 0.0 && b <= 0.1)) throw std::invalid_argument("small-b approximation needs 0 < b <= 0.1");
}

}  // namespace

bool is_product(double a, double b) { return std::abs(a) < kProductThreshold || std::abs(b) < kProductThreshold; }

double teleport_upper(std::size_t dA, std::size_t dB) {
  if (dA < 2 || dB < 2) throw std::invalid_argument("teleport_upper: dimensions must be at least 2");
  return std::min(std::log2(static_cast<double>(dA)), std::log2(static_cast<double>(dB)));
}

double avg_entanglement_lower(const quantum::RankOnePovm& m) {
  double total = 0.0;
  for (const auto& e : m) total += e.weight * quantum::entanglement_entropy(e.state);
  return total / static_cast<double>(m.dimension());
}

double failure_probability_sq(double a2, double b2, double x2, double y2) {
  const double s = ratio_term(a2, x2) + ratio_term(b2, y2);
  if (std::isinf(s)) return 1.0;
  return std::clamp(1.0 - 1.0 / s, 0.0, 1.0);
}

double failure_probability(double a, double x) {
  if (!(a >= -1.0 && a <= 1.0)) throw std::invalid_argument("failure_probability: |a| > 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("failure_probability: x outside [0,1]");
  const double b = complement_amplitude(a);
  const double y = complement_amplitude(x);
  return failure_probability_sq(a * a, b * b, x * x, y * y);
}

NextParameter next_parameter(double a, double x) {
  if (!(a >= -1.0 && a <= 1.0)) throw std::invalid_argument("next_parameter: |a| > 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("next_parameter: x outside [0,1]");
  const double b = complement_amplitude(a);
  const double y = complement_amplitude(x);
  const double x2 = x * x, y2 = y * y;
  const double den = std::sqrt(x2 * x2 * b * b + y2 * y2 * a * a);
  if (!(den > 0.0)) throw std::domain_error("next_parameter: degenerate denominator");
  const double raw = (x2 - y2) * a * b / den;
  const double raw_b = (x2 * b * b + y2 * a * a) / den;
  const double mag = std::abs(raw);
  const bool swapped = mag < raw_b;
  const double hi = swapped ? raw_b : mag;
  const double lo = swapped ? mag : raw_b;
  // Renormalize away the last-bit drift so the MaParams check always passes.
  const double norm = std::hypot(hi, lo);
  return {raw, raw_b, quantum::MaParams(hi / norm, lo / norm), swapped};
}

RoundSchedule::RoundSchedule(std::vector<double> xs_) : xs(std::move(xs_)) {
  for (double x : xs)
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("RoundSchedule: every x must lie in (0,1)");
}

double multiround_upper(double a, const RoundSchedule& schedule) {
  if (!(a >= -1.0 && a <= 1.0)) throw std::invalid_argument("multiround_upper: |a| > 1");
  for (double x : schedule.xs)
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("multiround_upper: every x must lie in (0,1)");
  // Accumulate front to back: cost += P(reach round j) * h(x_j^2).
  double cost = 0.0, reach = 1.0, cur = a;
  for (double x : schedule.xs) {
    if (is_product(cur, complement_amplitude(cur))) return cost;
    const double y = complement_amplitude(x);
    cost += reach * h(y * y);
    reach *= failure_probability(cur, x);
    cur = next_parameter(cur, x).raw;
  }
  if (is_product(cur, complement_amplitude(cur))) return cost;
  return cost + reach;
}

SingleRoundUpper single_round_upper_detail(double a) {
  const double aa = std::abs(a);
  const double b = complement_amplitude(a);
  if (is_product(aa, b)) return {0.0, 1.0};
  // Search over y^2 on a log scale in both tails; see resource_split.
  const double a2 = aa * aa, b2 = b * b;
  auto objective = [&](double s) {
    const auto [x2, y2] = detail::resource_split(s);
    return h(y2) + failure_probability_sq(a2, b2, x2, y2);
  };
  auto r = optimize::minimize_scalar(objective, optimize::Interval(0.0, 1.0));
  if (r.value >= 1.0) return {1.0, 1.0};
  return {r.value, std::sqrt(detail::resource_split(r.arg).first)};
}

double single_round_upper(double a) { return single_round_upper_detail(a).value; }

double jp_success_bound(std::span<const double> alpha, std::span<const double> beta) {
  auto validate = [](std::span<const double> s, const char* what) {
    if (s.empty()) throw std::invalid_argument(std::string(what) + " spectrum is empty");
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0.0 || (i > 0 && s[i] > s[i - 1] + 1e-15))
        throw std::invalid_argument(std::string(what) + " spectrum must be nonnegative and descending");
      sum += s[i];
    }
    if (std::abs(sum - 1.0) > 1e-10) throw std::invalid_argument(std::string(what) + " spectrum must sum to 1");
  };
  validate(alpha, "initial");
  validate(beta, "final");
  const std::size_t n = std::max(alpha.size(), beta.size());
  double best = 1.0;
  for (std::size_t l = 1; l < n; ++l) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = l; j < alpha.size(); ++j) num += alpha[j];
    for (std::size_t j = l; j < beta.size(); ++j) den += beta[j];
    if (den > 0.0) best = std::min(best, num / den);
  }
  return std::clamp(best, 0.0, 1.0);
}

SingleRoundLower single_round_lower_detail(double a) {
  check_canonical(std::abs(a), "single_round_lower");
  const double aa = std::min(1.0, std::abs(a));
  const double b = complement_amplitude(aa);
  if (b < kProductThreshold) return {0.0, 1.0, 0.0};
  if (aa - b < quantum::kParamTolerance) return {1.0, kInvSqrt2, kInvSqrt2};
  // (ac+bd)^2 - c^2 written without the cancellation of ac+bd-c.
  auto gap = [&](double c, double d) { return (b * d - c * b * b / (1.0 + aa)) * (aa * c + b * d + c); };
  auto g = [&](double d) {
    const double c = complement_amplitude(d);
    const double s = (aa * c + b * d) * (aa * c + b * d);
    return h(c * c / s) - gap(c, d) / (d * d);
  };
  const double d = optimize::bisect_root(g, optimize::Interval(b, kInvSqrt2));
  const double c = complement_amplitude(d);
  return {gap(c, d) / (d * d), c, d};
}

double single_round_lower(double a) { return single_round_lower_detail(a).value; }

double ancilla_gain(double a, double c) {
  const double b = complement_amplitude(a);
  const double d = complement_amplitude(c);
  const double overlap = a * c + b * d;
  return h(c * c) - h(overlap * overlap);
}

AbsoluteLower absolute_lower_detail(double a) {
  check_canonical(std::abs(a), "absolute_lower");
  const double aa = std::min(1.0, std::abs(a));
  auto r = optimize::maximize_scalar([&](double c) { return ancilla_gain(aa, c); }, optimize::Interval(0.0, 1.0));
  return {std::max(0.0, r.value), r.arg};
}

double absolute_lower(double a) { return absolute_lower_detail(a).value; }

AbsoluteLower absolute_lower_mirror(double a) {
  check_canonical(std::abs(a), "absolute_lower_mirror");
  const double aa = std::min(1.0, std::abs(a));
  auto r = optimize::maximize_scalar([&](double c) { return -ancilla_gain(aa, c); }, optimize::Interval(0.0, 1.0));
  return {std::max(0.0, r.value), r.arg};
}

std::array<double, 4> mac_initial_probabilities(const MacParams& m, double ap, double cp) {
  const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double bp = complement_amplitude(ap), dp = complement_amplitude(cp);
  const double s1 = a * ap + b * bp, s2 = c * cp + d * dp;
  const double t1 = a * bp - b * ap, t2 = d * cp - c * dp;
  return {(s1 + s2) * (s1 + s2) / 4.0, (s1 - s2) * (s1 - s2) / 4.0, (t1 + t2) * (t1 + t2) / 4.0,
          (t1 - t2) * (t1 - t2) / 4.0};
}

MacLower mac_lower_detail(const MacParams& m) {
  auto objective = [&](double ap, double cp) {
    const auto p = mac_initial_probabilities(m, ap, cp);
    const double total = p[0] + p[1] + p[2] + p[3];
    if (std::abs(total - 1.0) > 1e-9)
      throw std::logic_error("mac_lower: outcome probabilities sum to " + std::to_string(total));
    return (h(ap * ap) + h(cp * cp)) / 2.0 - quantum::shannon_entropy(p);
  };
  auto r = optimize::maximize_2d(objective, optimize::Interval(0.0, 1.0), optimize::Interval(0.0, 1.0));
  return {std::max(0.0, r.value), r.arg1, r.arg2};
}

double mac_lower(const MacParams& m) { return mac_lower_detail(m).value; }

double asymptotic_single_round(double b) {
  check_small_b(b);
  return 2.0 * b * std::sqrt(std::log2(1.0 / b));
}

double asymptotic_absolute_lower(double b) {
  check_small_b(b);
  return 1.9123 * b;
}

double berry_slope() { return 5.6418; }

double small_b_optimal_c() {
  return optimize::bisect_root(
      [](double c) {
        const double d = complement_amplitude(c);
        return (d * d - c * c) * std::log(d / c) - 1.0;
      },
      optimize::Interval(0.05, 0.7));
}

BoundsRow bounds_row(double a, std::size_t max_rounds) {
  check_canonical(a, "bounds_row");
  a = std::min(a, 1.0);
  const double b = complement_amplitude(a);
  const MultiroundResult multi = multiround_upper_opt(a, max_rounds);
  BoundsRow row{};
  row.a = a;
  row.b = b;
  row.avg_ent = avg_entanglement_lower(quantum::ma_measurement(MaParams(a, b)));
  row.lower_absolute = absolute_lower(a);
  row.lower_single = single_round_lower(a);
  row.upper_single = single_round_upper(a);
  row.upper_multiround = multi.value;
  row.multiround_rounds = multi.schedule.rounds();
  row.teleport_upper = teleport_upper(2, 2);
  return row;
}

}  // namespace locc::bounds
