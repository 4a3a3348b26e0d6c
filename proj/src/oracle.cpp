#include "gridreach/oracle.hpp"

#include <algorithm>
#include <bit>

#include "gridreach/kernels/kernels.hpp"

namespace gridreach {

bool oracle_reach(const GridView& g, VertexId s, VertexId t) {
  if (!g.contains(s) || !g.contains(t)) throw GridError("query vertex outside the grid");
  if (s == t) return true;
  const Window& w = g.window();
  const std::int64_t width = w.x1 - w.x0 + 1;
  auto index = [&](VertexId v) { return std::int64_t(v.y - w.y0) * width + (v.x - w.x0); };

  core_vector<std::uint64_t> visited(std::size_t((w.vertex_count() + 63) / 64), 0);
  core_vector<VertexId> stack;
  auto visit = [&](VertexId v) {
    const std::int64_t i = index(v);
    std::uint64_t& word = visited[std::size_t(i >> 6)];
    const std::uint64_t bit = std::uint64_t(1) << (i & 63);
    if (word & bit) return false;
    word |= bit;
    return true;
  };
  visit(s);
  stack.push_back(s);
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (Direction d : kDirections) {
      if (!g.has_edge(v, d)) continue;
      const VertexId u = step(v, d);
      if (u == t) return true;
      if (visit(u)) stack.push_back(u);
    }
  }
  return false;
}

FloodFill::FloodFill(const GridView& view)
    : view_(view),
      nw_(view.row_words()),
      rows_(std::size_t(view.window().height() + 1) * std::size_t(nw_), 0),
      buf_(std::size_t(8) * std::size_t(nw_), 0) {}

void FloodFill::seed(VertexId v) {
  if (!view_.contains(v)) throw GridError("seed outside the window");
  const std::int32_t x = v.x - view_.window().x0;
  row_ptr(v.y)[x >> 6] |= std::uint64_t(1) << (x & 63);
}

bool FloodFill::reached(VertexId v) const {
  if (!view_.contains(v)) return false;
  const std::int32_t x = v.x - view_.window().x0;
  return (row(v.y)[std::size_t(x >> 6)] >> (x & 63)) & 1u;
}

std::int64_t FloodFill::count() const {
  std::int64_t c = 0;
  for (std::uint64_t w : rows_) c += std::popcount(w);
  return c;
}

bool FloodFill::sweep(std::int32_t y_from, std::int32_t y_to, bool expand_all) {
  const int dy = y_to >= y_from ? 1 : -1;
  const Direction vertical = dy > 0 ? Direction::north : Direction::south;
  const std::size_t nw = std::size_t(nw_);
  std::uint64_t* east = buf_.data();
  std::uint64_t* west = east + nw;
  std::uint64_t* vflag = west + nw;
  std::uint64_t* old = vflag + nw;
  std::uint64_t* scratch = old + nw;
  bool grew = false;
  bool prev_nonzero = false;
  for (std::int32_t y = y_from;; y += dy) {
    std::uint64_t* r = row_ptr(y);
    bool changed = false;
    if (y != y_from && prev_nonzero) {
      const std::uint64_t* prev = row_ptr(y - dy);
      view_.flag_row(vertical, y - dy, {vflag, nw});
      for (std::size_t i = 0; i < nw; ++i) {
        const std::uint64_t add = prev[i] & vflag[i] & ~r[i];
        changed |= add != 0;
        r[i] |= add;
      }
    }
    bool nonzero = false;
    for (std::size_t i = 0; i < nw; ++i) nonzero |= r[i] != 0;
    if (nonzero && (changed || expand_all)) {
      std::copy(r, r + nw, old);
      view_.flag_row(Direction::east, y, {east, nw});
      view_.flag_row(Direction::west, y, {west, nw});
      kernels::expand_row(r, east, west, int(nw), scratch);
      if (!changed)
        for (std::size_t i = 0; i < nw; ++i) changed |= r[i] != old[i];
    }
    grew |= changed;
    prev_nonzero = nonzero;
    if (y == y_to) break;
  }
  return grew;
}

void FloodFill::run() {
  const Window& w = view_.window();
  // After a sweep the set is closed under horizontal moves and under vertical
  // moves in the sweep direction, so one quiet sweep means a fixpoint.
  sweep(w.y0, w.y1, true);
  bool down = true;
  while (down ? sweep(w.y1, w.y0, false) : sweep(w.y0, w.y1, false)) down = !down;
}

}  // namespace gridreach
