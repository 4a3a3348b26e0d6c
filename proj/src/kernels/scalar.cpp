#include "gridreach/kernels/kernels.hpp"

namespace gridreach::kernels {

namespace {

// dst = src shifted toward higher bit indices by s.
void shl(std::uint64_t* dst, const std::uint64_t* src, int n, int s) {
  const int ws = s >> 6, bs = s & 63;
  for (int i = n - 1; i >= 0; --i) {
    const int j = i - ws;
    std::uint64_t v = 0;
    if (j >= 0) {
      v = src[j] << bs;
      if (bs != 0 && j - 1 >= 0) v |= src[j - 1] >> (64 - bs);
    }
    dst[i] = v;
  }
}

// dst = src shifted toward lower bit indices by s.
void shr(std::uint64_t* dst, const std::uint64_t* src, int n, int s) {
  const int ws = s >> 6, bs = s & 63;
  for (int i = 0; i < n; ++i) {
    const int j = i + ws;
    std::uint64_t v = 0;
    if (j < n) {
      v = src[j] >> bs;
      if (bs != 0 && j + 1 < n) v |= src[j + 1] << (64 - bs);
    }
    dst[i] = v;
  }
}

void expand_one_word(std::uint64_t& g, std::uint64_t east, std::uint64_t west) {
  std::uint64_t ge = g, p = east;
  for (int s = 1; s < 64; s <<= 1) {
    ge |= (ge & p) << s;
    p &= p >> s;
  }
  std::uint64_t gw = g, q = west;
  for (int s = 1; s < 64; s <<= 1) {
    gw |= (gw & q) >> s;
    q &= q << s;
  }
  g = ge | gw;
}

}  // namespace

void expand_row_scalar(std::uint64_t* g, const std::uint64_t* east, const std::uint64_t* west,
                       int nwords, std::uint64_t* scratch) {
  if (nwords == 1) {
    expand_one_word(g[0], east[0], west[0]);
    return;
  }
  std::uint64_t* acc = scratch;
  std::uint64_t* p = scratch + nwords;
  std::uint64_t* t = scratch + 2 * nwords;
  std::uint64_t* u = scratch + 3 * nwords;
  const int nbits = nwords * 64;

  for (int i = 0; i < nwords; ++i) {
    acc[i] = g[i];
    p[i] = east[i];
  }
  for (int s = 1; s < nbits; s <<= 1) {
    for (int i = 0; i < nwords; ++i) t[i] = acc[i] & p[i];
    shl(u, t, nwords, s);
    for (int i = 0; i < nwords; ++i) acc[i] |= u[i];
    shr(u, p, nwords, s);
    for (int i = 0; i < nwords; ++i) p[i] &= u[i];
  }
  // acc now holds the east closure; reuse p for the west pass.
  for (int i = 0; i < nwords; ++i) p[i] = west[i];
  for (int s = 1; s < nbits; s <<= 1) {
    for (int i = 0; i < nwords; ++i) t[i] = g[i] & p[i];
    shr(u, t, nwords, s);
    for (int i = 0; i < nwords; ++i) g[i] |= u[i];
    shl(u, p, nwords, s);
    for (int i = 0; i < nwords; ++i) p[i] &= u[i];
  }
  for (int i = 0; i < nwords; ++i) g[i] |= acc[i];
}

int find_crossing_scalar(const std::int32_t* lo, const std::int32_t* hi, int n, std::int32_t a,
                         std::int32_t b) {
  for (int i = 0; i < n; ++i) {
    const std::int32_t c = lo[i], d = hi[i];
    if ((c < a && a < d && d < b) || (a < c && c < b && b < d)) return i;
  }
  return -1;
}

}  // namespace gridreach::kernels
