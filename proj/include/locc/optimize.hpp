#pragma once
// Deterministic grid-then-golden scalar optimization and bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace locc::optimize {

inline constexpr std::size_t kGridPoints = 2001;
inline constexpr std::size_t kGridPoints2d = 201;
inline constexpr double kBracketTolerance = 1e-10;
inline constexpr double kRootTolerance = 1e-12;
inline constexpr double kEndpointNudge = 1e-12;
inline constexpr int kMinPasses2d = 3;
inline constexpr int kMaxPasses2d = 200;

struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw std::invalid_argument("Interval: need lo < hi");
  }
  double width() const noexcept { return hi - lo; }
  /// i-th of n equally spaced points, endpoints included exactly.
  double point(std::size_t i, std::size_t n) const noexcept {
    if (i + 1 == n) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
};

struct OptResult {
  double arg;
  double value;
  std::size_t evaluations;
};

struct OptResult2d {
  double arg1;
  double arg2;
  double value;
  std::size_t evaluations;
};

class NonFiniteObjective : public std::domain_error {
 public:
  explicit NonFiniteObjective(double x)
      : std::domain_error("objective is not finite at x = " + std::to_string(x)), arg(x) {}
  NonFiniteObjective(double x, double y)
      : std::domain_error("objective is not finite at (" + std::to_string(x) + ", " + std::to_string(y) + ")"),
        arg(x),
        arg2(y) {}
  double arg;
  double arg2 = std::numeric_limits<double>::quiet_NaN();
};

class NoSignChange : public std::domain_error {
 public:
  NoSignChange(double lo, double hi)
      : std::domain_error("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]") {}
};

namespace detail {

// Interior points must be finite. Endpoints get one inward nudge first.
template <class F>
double eval_checked(F& f, double x, std::size_t& count) {
  ++count;
  const double v = f(x);
  if (!std::isfinite(v)) throw NonFiniteObjective(x);
  return v;
}

template <class F>
std::pair<double, double> eval_endpoint(F& f, double x, double inward, std::size_t& count) {
  ++count;
  double v = f(x);
  if (std::isfinite(v)) return {x, v};
  const double nudged = x + inward * kEndpointNudge;
  return {nudged, eval_checked(f, nudged, count)};
}

}  // namespace detail

/// Best point of an equally spaced scan; the smallest argument wins ties.
template <class F>
OptResult grid_scan_min(F&& f, Interval iv, std::size_t points = kGridPoints) {
  std::size_t count = 0;
  auto [best_x, best_v] = detail::eval_endpoint(f, iv.lo, +1.0, count);
  for (std::size_t i = 1; i < points; ++i) {
    double x = iv.point(i, points);
    double v;
    if (i + 1 == points) {
      std::tie(x, v) = detail::eval_endpoint(f, x, -1.0, count);
    } else {
      v = detail::eval_checked(f, x, count);
    }
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return {best_x, best_v, count};
}

/// Golden-section search on [lo, hi] until the bracket is narrower than tol.
/// Returns the best point evaluated, which may be either bracket interior point.
template <class F>
OptResult golden_section_min(F&& f, Interval iv, double tol = kBracketTolerance) {
  constexpr double kInvPhi = 0.6180339887498949;
  std::size_t count = 0;
  double lo = iv.lo, hi = iv.hi;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = detail::eval_checked(f, x1, count);
  double f2 = detail::eval_checked(f, x2, count);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = detail::eval_checked(f, x1, count);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = detail::eval_checked(f, x2, count);
    }
  }
  if (f2 < f1) return {x2, f2, count};
  return {x1, f1, count};
}

/// Grid scan on a coarse objective, then golden refinement on a fine one in
/// the two cells around the best grid point. Returns the better of the grid
/// point and the refined point, both scored by `fine`.
template <class Coarse, class Fine>
OptResult minimize_two_stage(Coarse&& coarse, Fine&& fine, Interval iv, std::size_t points = kGridPoints) {
  OptResult grid = grid_scan_min(coarse, iv, points);
  const double step = iv.width() / static_cast<double>(points - 1);
  const double lo = std::max(iv.lo, grid.arg - step);
  const double hi = std::min(iv.hi, grid.arg + step);
  std::size_t count = grid.evaluations + 1;
  const double grid_fine = fine(grid.arg);
  if (!std::isfinite(grid_fine)) throw NonFiniteObjective(grid.arg);
  OptResult best{grid.arg, grid_fine, 0};
  if (hi - lo > kBracketTolerance) {
    // The bracket may touch an endpoint where the objective is singular.
    auto safe = [&](double x) {
      const double v = fine(x);
      return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };
    OptResult refined = golden_section_min(safe, Interval(lo, hi));
    count += refined.evaluations;
    if (refined.value < best.value) best = refined;
  }
  best.evaluations = count;
  return best;
}

/// 2001-point grid scan, then golden-section refinement in the two grid cells
/// around the best point. Never worse than the best grid value.
template <class F>
OptResult minimize_scalar(F&& f, Interval iv) {
  return minimize_two_stage(f, f, iv);
}

template <class F>
OptResult maximize_scalar(F&& f, Interval iv) {
  OptResult r = minimize_scalar([&](double x) { return -f(x); }, iv);
  r.value = -r.value;
  return r;
}

/// Root of f on iv by bisection, to kRootTolerance in the argument.
template <class F>
double bisect_root(F&& f, Interval iv, double tol = kRootTolerance) {
  double lo = iv.lo, hi = iv.hi;
  double flo = f(lo), fhi = f(hi);
  if (!std::isfinite(flo)) throw NonFiniteObjective(lo);
  if (!std::isfinite(fhi)) throw NonFiniteObjective(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw NoSignChange(lo, hi);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (!std::isfinite(fm)) throw NonFiniteObjective(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// 201 x 201 grid, then alternating coordinate golden searches (each within one
/// grid step of the current point) until a pass no longer improves.
template <class F>
OptResult2d maximize_2d(F&& f, Interval iv1, Interval iv2) {
  std::size_t count = 0;
  auto g = [&](double u, double v) {
    ++count;
    const double r = f(u, v);
    if (!std::isfinite(r)) throw NonFiniteObjective(u, v);
    return r;
  };
  const std::size_t n = kGridPoints2d;
  double bu = iv1.lo, bv = iv2.lo, best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = iv1.point(i, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = iv2.point(j, n);
      const double r = g(u, v);
      if (r > best) {
        best = r;
        bu = u;
        bv = v;
      }
    }
  }
  const double h1 = iv1.width() / static_cast<double>(n - 1);
  const double h2 = iv2.width() / static_cast<double>(n - 1);
  for (int pass = 0; pass < kMaxPasses2d; ++pass) {
    const double before = best;
    {
      Interval br(std::max(iv1.lo, bu - h1), std::min(iv1.hi, bu + h1));
      OptResult r = golden_section_min([&](double u) { return -g(u, bv); }, br);
      if (-r.value > best) {
        best = -r.value;
        bu = r.arg;
      }
    }
    {
      Interval br(std::max(iv2.lo, bv - h2), std::min(iv2.hi, bv + h2));
      OptResult r = golden_section_min([&](double v) { return -g(bu, v); }, br);
      if (-r.value > best) {
        best = -r.value;
        bv = r.arg;
      }
    }
    if (pass + 1 >= kMinPasses2d && !(best > before)) break;
  }
  return {bu, bv, best, count};
}

}  // namespace locc::optimize
