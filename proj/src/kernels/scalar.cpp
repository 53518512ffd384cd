#include "locc/kernels.hpp"

namespace locc::kernels {
namespace {

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

cplx dotu_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm2_scalar(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
  }
}

void her_scalar(double alpha, const cplx* v, cplx* m, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) {
    const cplx s = alpha * v[r];
    cplx* row = m + r * n;
    for (std::size_t c = 0; c < n; ++c) {
      // s * conj(v_c)
      const double vr = v[c].real(), vi = v[c].imag();
      row[c] = {row[c].real() + s.real() * vr + s.imag() * vi,
                row[c].imag() + s.imag() * vr - s.real() * vi};
    }
  }
}

constexpr KernelTable kScalar{Isa::scalar, dotc_scalar, dotu_scalar, norm2_scalar, axpy_scalar,
                              her_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace locc::kernels
