#include "gridreach/kernels/kernels.hpp"

#include <atomic>

namespace gridreach::kernels {

namespace {

Isa detect() { return avx2_available() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& isa_slot() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() {
#if defined(GRIDREACH_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  isa_slot().store(isa, std::memory_order_relaxed);
}

Isa active_isa() { return isa_slot().load(std::memory_order_relaxed); }

void expand_row(std::uint64_t* g, const std::uint64_t* east, const std::uint64_t* west, int nwords,
                std::uint64_t* scratch) {
#if defined(GRIDREACH_HAVE_AVX2)
  if (nwords > 1 && nwords <= 4 && active_isa() == Isa::avx2) {
    expand_row_avx2(g, east, west, nwords, scratch);
    return;
  }
#endif
  expand_row_scalar(g, east, west, nwords, scratch);
}

int find_crossing(const std::int32_t* lo, const std::int32_t* hi, int n, std::int32_t a,
                  std::int32_t b) {
#if defined(GRIDREACH_HAVE_AVX2)
  if (n >= 8 && active_isa() == Isa::avx2) return find_crossing_avx2(lo, hi, n, a, b);
#endif
  return find_crossing_scalar(lo, hi, n, a, b);
}

}  // namespace gridreach::kernels
