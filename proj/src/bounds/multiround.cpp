// Optimization of the multi-round schedule.
//
// Values are computed in the canonical frame a >= b >= 0, where the cost of
// k remaining rounds is a function V_k(b) of b alone. Deep levels are read
// from tables of V_k on a grid in b; the top levels are optimized directly.
// The winning schedule is mapped back to the protocol's working frame and
// re-evaluated with multiround_upper, so the reported value is always exact.

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "locc/bounds.hpp"
#include "locc/entropy.hpp"
#include "locc/optimize.hpp"

namespace locc::bounds {

using quantum::complement_amplitude;

namespace detail {

std::pair<double, double> resource_split(double s) {
  static const double span = -kMinResourceExponent + std::log10(0.5);
  if (s <= 0.5) {
    const double y2 = std::pow(10.0, kMinResourceExponent + (s / 0.5) * span);
    return {1.0 - y2, y2};
  }
  const double x2 = std::pow(10.0, kMinResourceExponent + ((1.0 - s) / 0.5) * span);
  return {x2, 1.0 - x2};
}

}  // namespace detail

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr std::size_t kTableIntervals = 1024;
constexpr std::size_t kExactLevels = 2;

double h(double z) { return quantum::binary_entropy(std::clamp(z, 0.0, 1.0)); }

struct Canonical {
  double a;
  double b;
};

Canonical canonical(double a) {
  const double b = complement_amplitude(a);
  const double m = std::abs(a);
  return m >= b ? Canonical{m, b} : Canonical{b, m};
}

// Canonical b after a failed round with resource (x2, y2).
double next_b(const Canonical& p, double x2, double y2) {
  const double den = std::sqrt(x2 * x2 * p.b * p.b + y2 * y2 * p.a * p.a);
  const double raw = std::abs((x2 - y2) * p.a * p.b / den);
  const double raw_b = (x2 * p.b * p.b + y2 * p.a * p.a) / den;
  return std::min(raw, raw_b) / std::hypot(raw, raw_b);
}

// Nodes b_i = (1/sqrt2)(i/N)^2 crowd toward b = 0, where V_k bends most.
double table_node(std::size_t i) {
  const double t = static_cast<double>(i) / static_cast<double>(kTableIntervals);
  return kInvSqrt2 * t * t;
}

struct LevelChoice;
LevelChoice optimize_level(std::size_t k, const Canonical& p, std::size_t exact);

class ValueTables {
 public:
  static constexpr std::size_t kMaxLevel = 32;

  static ValueTables& instance() {
    static ValueTables tables;
    return tables;
  }

  // V_k at b, linearly interpolated. V_0 is exact.
  double value(std::size_t k, double b) {
    if (b < kProductThreshold) return 0.0;
    if (k == 0) return 1.0;
    const std::vector<double>& t = table(k);
    const double pos = std::sqrt(std::min(b, kInvSqrt2) / kInvSqrt2) * static_cast<double>(kTableIntervals);
    const std::size_t i = std::min(static_cast<std::size_t>(pos), kTableIntervals - 1);
    const double lo = table_node(i), hi = table_node(i + 1);
    const double w = (b - lo) / (hi - lo);
    return t[i] + w * (t[i + 1] - t[i]);
  }

 private:
  const std::vector<double>& table(std::size_t k);

  std::array<std::once_flag, kMaxLevel + 1> built_;
  std::array<std::vector<double>, kMaxLevel + 1> levels_;
};

struct LevelChoice {
  double value;
  bool teleport;
  double x2;  // canonical-frame resource of this round
  double y2;
};

// Best use of k remaining rounds from canonical b. `exact` levels below this
// one are optimized directly; below those the tables take over.
LevelChoice optimize_level(std::size_t k, const Canonical& p, std::size_t exact) {
  if (p.b < kProductThreshold) return {0.0, false, 1.0, 0.0};
  if (k == 0) return {1.0, true, 0.0, 0.0};
  auto& tables = ValueTables::instance();
  const double a2 = p.a * p.a, b2 = p.b * p.b;
  auto round_cost = [&](double s, auto&& rest) {
    const auto [x2, y2] = detail::resource_split(s);
    const double f = failure_probability_sq(a2, b2, x2, y2);
    const double tail = f > 0.0 ? rest(next_b(p, x2, y2)) : 0.0;
    return h(y2) + f * tail;
  };
  auto coarse = [&](double s) { return round_cost(s, [&](double nb) { return tables.value(k - 1, nb); }); };
  auto fine = [&](double s) {
    return round_cost(s, [&](double nb) {
      if (exact == 0 || k == 1) return tables.value(k - 1, nb);
      const double na = complement_amplitude(nb);
      return optimize_level(k - 1, Canonical{na, nb}, exact - 1).value;
    });
  };
  const auto r = optimize::minimize_two_stage(coarse, fine, optimize::Interval(0.0, 1.0));
  if (r.value >= 1.0) return {1.0, true, 0.0, 0.0};
  const auto [x2, y2] = detail::resource_split(r.arg);
  return {r.value, false, x2, y2};
}

const std::vector<double>& ValueTables::table(std::size_t k) {
  if (k > kMaxLevel) throw std::invalid_argument("multiround_upper_opt: too many rounds");
  // Building level k reads level k-1, which has its own flag.
  std::call_once(built_[k], [&] {
    std::vector<double> t(kTableIntervals + 1);
    for (std::size_t i = 0; i <= kTableIntervals; ++i) {
      const double b = table_node(i);
      t[i] = optimize_level(k, Canonical{complement_amplitude(b), b}, 0).value;
    }
    levels_[k] = std::move(t);
  });
  return levels_[k];
}

}  // namespace

MultiroundResult multiround_upper_opt(double a, std::size_t max_rounds) {
  if (!(a >= -1.0 && a <= 1.0)) throw std::invalid_argument("multiround_upper_opt: |a| > 1");
  const Canonical start = canonical(a);
  if (start.b < kProductThreshold) return {0.0, RoundSchedule{}};
  MultiroundResult best{1.0, RoundSchedule{}};
  for (std::size_t n = 1; n <= max_rounds; ++n) {
    std::vector<double> xs;
    double cur = a;  // working-frame amplitude
    for (std::size_t level = 0; level < n; ++level) {
      const Canonical p = canonical(cur);
      if (p.b < kProductThreshold) break;
      const std::size_t remaining = n - level;
      const LevelChoice c = optimize_level(remaining, p, std::min(remaining, kExactLevels) - 1);
      if (c.teleport) break;
      // Canonical (a, b) is the working frame with a and b interchanged
      // whenever |cur| < b, which also interchanges x and y.
      const bool swapped = std::abs(cur) < complement_amplitude(cur);
      const double x = std::sqrt(swapped ? c.y2 : c.x2);
      if (!(x > 0.0 && x < 1.0)) break;
      xs.push_back(x);
      cur = next_parameter(cur, x).raw;
    }
    RoundSchedule schedule(std::move(xs));
    const double value = multiround_upper(a, schedule);
    if (value < best.value) best = {value, std::move(schedule)};
  }
  return best;
}

}  // namespace locc::bounds
