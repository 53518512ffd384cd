// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a CPUID check (see dispatch.cpp).
#include <immintrin.h>

#include "locc/kernels.hpp"

namespace locc::kernels {
namespace {

// Each __m256d holds two complex numbers laid out as [re0, im0, re1, im1].

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum_even(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[0] + t[2];
}
inline double hsum_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[1] + t[3];
}

// Accumulates direct = x*y lane-wise and crossed = x*swap(y).
inline void dot_accumulate(const cplx* x, const cplx* y, std::size_t n, __m256d& direct,
                           __m256d& crossed) {
  direct = _mm256_setzero_pd();
  crossed = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    direct = _mm256_fmadd_pd(xv, yv, direct);
    crossed = _mm256_fmadd_pd(xv, swap_re_im(yv), crossed);
  }
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d direct, crossed;
  dot_accumulate(x, y, n, direct, crossed);
  // conj(x) y: re = xr yr + xi yi, im = xr yi - xi yr
  double re = hsum_even(direct) + hsum_odd(direct);
  double im = hsum_even(crossed) - hsum_odd(crossed);
  if (n % 2) {
    const cplx t = std::conj(x[n - 1]) * y[n - 1];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d direct, crossed;
  dot_accumulate(x, y, n, direct, crossed);
  // x y: re = xr yr - xi yi, im = xr yi + xi yr
  double re = hsum_even(direct) - hsum_odd(direct);
  double im = hsum_even(crossed) + hsum_odd(crossed);
  if (n % 2) {
    const cplx t = x[n - 1] * y[n - 1];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

double norm2_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double s = hsum_even(acc) + hsum_odd(acc);
  if (n % 2) s += std::norm(x[n - 1]);
  return s;
}

// y += alpha * x, optionally with x conjugated.
template <bool Conjugate>
inline void axpy_impl(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = load2(x + i);
    if constexpr (Conjugate) xv = _mm256_xor_pd(xv, conj_mask);
    // [ar xr - ai xi, ar xi + ai xr]
    const __m256d cross = _mm256_mul_pd(ai, swap_re_im(xv));
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, cross);
    store2(y + i, _mm256_add_pd(load2(y + i), prod));
  }
  if (n % 2) y[n - 1] += alpha * (Conjugate ? std::conj(x[n - 1]) : x[n - 1]);
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  axpy_impl<false>(alpha, x, y, n);
}

void her_avx2(double alpha, const cplx* v, cplx* m, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) axpy_impl<true>(alpha * v[r], v, m + r * n, n);
}

constexpr KernelTable kAvx2{Isa::avx2, dotc_avx2, dotu_avx2, norm2_avx2, axpy_avx2, her_avx2};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace locc::kernels
