#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "locc/kernels.hpp"

namespace locc::kernels {
namespace {

const KernelTable* initial_table() noexcept {
  [[maybe_unused]] Isa isa = detect();
  if (const char* env = std::getenv("LOCC_KERNELS")) {
    const std::string_view v(env);
    if (v == "scalar") isa = Isa::scalar;
    else if (v == "avx2" && supported(Isa::avx2)) isa = Isa::avx2;
  }
#if defined(LOCC_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return &avx2_table();
#endif
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> current{initial_table()};
  return current;
}

}  // namespace

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(LOCC_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa detect() noexcept { return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const KernelTable& table(Isa isa) {
  if (!supported(isa)) throw std::invalid_argument("kernel set not supported on this CPU: " + std::string(name(isa)));
#if defined(LOCC_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return avx2_table();
#endif
  return scalar_table();
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

void select(Isa isa) { slot().store(&table(isa), std::memory_order_release); }

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace locc::kernels
