#pragma once

#include <cstdint>

namespace gridreach::kernels {

/// Horizontal closure of one bit row. Bit x of `east` means the edge x -> x+1,
/// bit x of `west` the edge x -> x-1. On return `g` holds every position
/// reachable from its initial bits using those edges. `scratch` must hold
/// 4 * nwords words.
using ExpandRowFn = void (*)(std::uint64_t* g, const std::uint64_t* east, const std::uint64_t* west,
                             int nwords, std::uint64_t* scratch);

/// Index of the first i with lo[i] < a < hi[i] < b or a < lo[i] < b < hi[i],
/// or -1. Requires a < b and lo[i] < hi[i].
using FindCrossingFn = int (*)(const std::int32_t* lo, const std::int32_t* hi, int n, std::int32_t a,
                               std::int32_t b);

void expand_row_scalar(std::uint64_t* g, const std::uint64_t* east, const std::uint64_t* west,
                       int nwords, std::uint64_t* scratch);
int find_crossing_scalar(const std::int32_t* lo, const std::int32_t* hi, int n, std::int32_t a,
                         std::int32_t b);

#if defined(GRIDREACH_HAVE_AVX2)
// Rows of up to four words; wider rows fall back to the scalar kernel.
void expand_row_avx2(std::uint64_t* g, const std::uint64_t* east, const std::uint64_t* west,
                     int nwords, std::uint64_t* scratch);
int find_crossing_avx2(const std::int32_t* lo, const std::int32_t* hi, int n, std::int32_t a,
                       std::int32_t b);
#endif

enum class Isa { scalar, avx2 };

bool avx2_available();

/// Selects the implementation used by expand_row / find_crossing. Requesting
/// avx2 on a machine without it (or a build without it) keeps scalar.
void set_isa(Isa isa);
Isa active_isa();

void expand_row(std::uint64_t* g, const std::uint64_t* east, const std::uint64_t* west, int nwords,
                std::uint64_t* scratch);
int find_crossing(const std::int32_t* lo, const std::int32_t* hi, int n, std::int32_t a,
                  std::int32_t b);

}  // namespace gridreach::kernels
