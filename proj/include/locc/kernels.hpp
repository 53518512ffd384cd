#pragma once
// Complex double-precision vector kernels.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active variant is chosen once at startup from CPUID
// and can be overridden with LOCC_KERNELS=scalar|avx2 or select().

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace locc::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Function table for one instruction set. All matrices are row-major.
struct KernelTable {
  Isa isa;
  /// sum_i conj(x_i) * y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  /// sum_i x_i * y_i
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  /// sum_i |x_i|^2
  double (*norm2)(const cplx* x, std::size_t n);
  /// y += alpha * x
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// m += alpha * v v^dagger for an n x n matrix m
  void (*her)(double alpha, const cplx* v, cplx* m, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
#if defined(LOCC_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table() noexcept;
#endif

bool supported(Isa isa) noexcept;
/// Best instruction set available on this CPU.
Isa detect() noexcept;
/// Table for a specific instruction set; throws std::invalid_argument if unsupported.
const KernelTable& table(Isa isa);
/// Currently active table.
const KernelTable& active() noexcept;
/// Switch the active table. Throws std::invalid_argument if unsupported.
void select(Isa isa);

std::string_view name(Isa isa) noexcept;

inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  return active().dotc(x.data(), y.data(), x.size());
}
inline cplx dotu(std::span<const cplx> x, std::span<const cplx> y) {
  return active().dotu(x.data(), y.data(), x.size());
}
inline double norm2(std::span<const cplx> x) { return active().norm2(x.data(), x.size()); }
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void her(double alpha, std::span<const cplx> v, std::span<cplx> m) {
  active().her(alpha, v.data(), m.data(), v.size());
}

}  // namespace locc::kernels
