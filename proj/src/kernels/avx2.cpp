#include "gridreach/kernels/kernels.hpp"

#include <immintrin.h>

namespace gridreach::kernels {

namespace {

// Whole-lane moves: lane k takes lane k-1 (up) or k+1 (down); the vacated lane is zero.
inline __m256i lanes_up1(__m256i v) {
  return _mm256_blend_epi32(_mm256_permute4x64_epi64(v, _MM_SHUFFLE(2, 1, 0, 0)),
                            _mm256_setzero_si256(), 0x03);
}
inline __m256i lanes_up2(__m256i v) {
  return _mm256_blend_epi32(_mm256_permute4x64_epi64(v, _MM_SHUFFLE(1, 0, 0, 0)),
                            _mm256_setzero_si256(), 0x0F);
}
inline __m256i lanes_down1(__m256i v) {
  return _mm256_blend_epi32(_mm256_permute4x64_epi64(v, _MM_SHUFFLE(3, 3, 2, 1)),
                            _mm256_setzero_si256(), 0xC0);
}
inline __m256i lanes_down2(__m256i v) {
  return _mm256_blend_epi32(_mm256_permute4x64_epi64(v, _MM_SHUFFLE(3, 3, 3, 2)),
                            _mm256_setzero_si256(), 0xF0);
}

// 256-bit shift toward higher bit indices.
inline __m256i shl256(__m256i v, int s) {
  if (s == 64) return lanes_up1(v);
  if (s == 128) return lanes_up2(v);
  const __m128i c = _mm_cvtsi32_si128(s);
  const __m128i cc = _mm_cvtsi32_si128(64 - s);
  return _mm256_or_si256(_mm256_sll_epi64(v, c), _mm256_srl_epi64(lanes_up1(v), cc));
}

// 256-bit shift toward lower bit indices.
inline __m256i shr256(__m256i v, int s) {
  if (s == 64) return lanes_down1(v);
  if (s == 128) return lanes_down2(v);
  const __m128i c = _mm_cvtsi32_si128(s);
  const __m128i cc = _mm_cvtsi32_si128(64 - s);
  return _mm256_or_si256(_mm256_srl_epi64(v, c), _mm256_sll_epi64(lanes_down1(v), cc));
}

inline __m256i load_partial(const std::uint64_t* p, int n) {
  alignas(32) std::uint64_t buf[4] = {0, 0, 0, 0};
  for (int i = 0; i < n; ++i) buf[i] = p[i];
  return _mm256_load_si256(reinterpret_cast<const __m256i*>(buf));
}

inline void store_partial(std::uint64_t* p, __m256i v, int n) {
  alignas(32) std::uint64_t buf[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(buf), v);
  for (int i = 0; i < n; ++i) p[i] = buf[i];
}

}  // namespace

void expand_row_avx2(std::uint64_t* g, const std::uint64_t* east, const std::uint64_t* west,
                     int nwords, std::uint64_t* scratch) {
  if (nwords > 4) {
    expand_row_scalar(g, east, west, nwords, scratch);
    return;
  }
  const int nbits = nwords * 64;
  const __m256i g0 = load_partial(g, nwords);
  __m256i ge = g0, p = load_partial(east, nwords);
  __m256i gw = g0, q = load_partial(west, nwords);
  for (int s = 1; s < nbits; s <<= 1) {
    ge = _mm256_or_si256(ge, shl256(_mm256_and_si256(ge, p), s));
    p = _mm256_and_si256(p, shr256(p, s));
    gw = _mm256_or_si256(gw, shr256(_mm256_and_si256(gw, q), s));
    q = _mm256_and_si256(q, shl256(q, s));
  }
  store_partial(g, _mm256_or_si256(ge, gw), nwords);
}

int find_crossing_avx2(const std::int32_t* lo, const std::int32_t* hi, int n, std::int32_t a,
                       std::int32_t b) {
  const __m256i va = _mm256_set1_epi32(a);
  const __m256i vb = _mm256_set1_epi32(b);
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + i));
    // c < a < d < b
    const __m256i x = _mm256_and_si256(_mm256_and_si256(_mm256_cmpgt_epi32(va, c), _mm256_cmpgt_epi32(d, va)),
                                       _mm256_cmpgt_epi32(vb, d));
    // a < c < b < d
    const __m256i y = _mm256_and_si256(_mm256_and_si256(_mm256_cmpgt_epi32(c, va), _mm256_cmpgt_epi32(vb, c)),
                                       _mm256_cmpgt_epi32(d, vb));
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_or_si256(x, y)));
    if (mask != 0) return i + __builtin_ctz(unsigned(mask));
  }
  const int r = find_crossing_scalar(lo + i, hi + i, n - i, a, b);
  return r < 0 ? -1 : i + r;
}

}  // namespace gridreach::kernels
