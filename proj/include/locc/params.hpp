#pragma once
// Parameters of the two-qubit measurement families.

#include <algorithm>
#include <cmath>

namespace locc::quantum {

inline constexpr double kParamTolerance = 1e-12;

/// Canonical parameters of M_a: a >= b >= 0, a^2 + b^2 = 1.
class MaParams {
 public:
  MaParams(double a, double b);
  /// b = sqrt(1 - a^2), computed as sqrt((1-a)(1+a)).
  static MaParams from_a(double a);
  /// a = sqrt(1 - b^2); accurate for small b.
  static MaParams from_b(double b);
  static MaParams bell() { return from_b(std::sqrt(0.5)); }
  static MaParams product() { return {1.0, 0.0}; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

/// Amplitudes (a, b) of an M_a-shaped measurement in a protocol's working
/// frame: b >= 0 and a^2 + b^2 = 1, but a may be negative or smaller than b.
struct MaAmplitudes {
  double a;
  double b;

  static MaAmplitudes from(const MaParams& p) { return {p.a(), p.b()}; }
  /// Valid amplitudes, or std::invalid_argument.
  static MaAmplitudes checked(double a, double b);
};

/// Parameters of M_{a,c}: a^2+b^2 = 1, c^2+d^2 = 1, all nonnegative.
class MacParams {
 public:
  MacParams(double a, double b, double c, double d);
  static MacParams from_ac(double a, double c);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }

 private:
  double a_, b_, c_, d_;
};

/// sqrt(1 - v^2) without cancellation near |v| = 1.
inline double complement_amplitude(double v) { return std::sqrt(std::max(0.0, (1.0 - v) * (1.0 + v))); }

}  // namespace locc::quantum
