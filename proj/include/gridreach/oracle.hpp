#pragma once

#include "gridreach/grid.hpp"
#include "gridreach/instrument.hpp"

namespace gridreach {

/// Depth-first search inside the view's window. Visited bits and the stack
/// are charged to the core channel of the current workspace.
bool oracle_reach(const GridView& g, VertexId s, VertexId t);
inline bool oracle_reach(const GridGraph& g, VertexId s, VertexId t) {
  return oracle_reach(GridView(g), s, t);
}

/// Set of window vertices reachable from a seed set, computed by row-parallel
/// flood fill (horizontal closure per row, alternating vertical sweeps).
class FloodFill {
 public:
  explicit FloodFill(const GridView& view);

  void seed(VertexId v);
  void run();
  bool reached(VertexId v) const;
  std::int64_t count() const;
  const GridView& view() const { return view_; }

  /// Row y of the reach set, bits indexed from the window's x0.
  std::span<const std::uint64_t> row(std::int32_t y) const {
    return {rows_.data() + std::size_t(y - view_.window().y0) * nw_, std::size_t(nw_)};
  }

 private:
  std::uint64_t* row_ptr(std::int32_t y) { return rows_.data() + std::size_t(y - view_.window().y0) * nw_; }
  // Sweeps from y_from toward y_to; returns true if any row grew.
  bool sweep(std::int32_t y_from, std::int32_t y_to, bool expand_all);

  GridView view_;
  std::int32_t nw_;
  core_vector<std::uint64_t> rows_;
  core_vector<std::uint64_t> buf_;
};

}  // namespace gridreach
