#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "gridreach/grid.hpp"
#include "gridreach/instrument.hpp"

namespace gridreach {

/// One block of a decomposition. Its perimeter is walked counter-clockwise
/// starting at the bottom-left corner (the anchor, index 0).
struct Block {
  std::int32_t i = 0;
  std::int32_t j = 0;
  Window win;

  std::int32_t perimeter() const { return 2 * (win.width() + win.height()); }
  friend bool operator==(const Block& a, const Block& b) { return a.win == b.win; }
};

/// Ccw index of v from the block anchor, or -1 when v is not on the perimeter.
std::int32_t perimeter_pos(const Block& b, VertexId v);
/// Inverse of perimeter_pos; pos is taken modulo the perimeter.
VertexId perimeter_vertex(const Block& b, std::int32_t pos);

/// Next perimeter vertex counter-clockwise. Throws GridError off the perimeter.
VertexId ccw_next(const Block& b, VertexId v);
/// Smallest p >= 0 with ccw_next^p(w) == v.
std::int32_t ccw_index(const Block& b, VertexId w, VertexId v);

struct AuxEdge {
  Block block;
  VertexId u, v;
  std::int32_t p = 0;  // ccw index of u from the anchor
  std::int32_t q = 0;  // ccw index of v from the anchor
};

AuxEdge make_aux_edge(const Block& b, VertexId u, VertexId v);

/// Strict interleaving of endpoint indices; pairs sharing an endpoint never cross.
constexpr bool crosses_pos(std::int32_t p, std::int32_t q, std::int32_t r, std::int32_t s) {
  const std::int32_t a = p < q ? p : q, b = p < q ? q : p;
  const std::int32_t c = r < s ? r : s, d = r < s ? s : r;
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

/// Throws GridError for edges of different blocks.
bool crosses(const AuxEdge& e, const AuxEdge& f);

/// Minimum endpoint index of f counted from `anchor`.
std::int32_t closeness_key(const Block& b, std::int32_t anchor_pos, std::int32_t p, std::int32_t q);

/// True iff f's nearer endpoint comes strictly before g's, counting from anchor.
bool closer(VertexId anchor, const AuxEdge& f, const AuxEdge& g);

/// Blocks of side t tiling `area`; the last block row/column may be smaller.
/// Boundary lines are x0, x0 + o + k*t (below x1) and x1, where o = phase_x if
/// non-zero and t otherwise, so with phase 0 the first block is also full
/// size. Likewise for y. Aux vertices (on some boundary line) are numbered
/// row-major by (y, x).
class Decomposition {
 public:
  Decomposition() = default;
  Decomposition(Window area, std::int32_t t, std::int32_t phase_x = 0, std::int32_t phase_y = 0);

  /// max(1, floor(side^(1-alpha))).
  static std::int32_t block_side(std::int32_t side, double alpha);

  const Window& area() const { return area_; }
  std::int32_t t() const { return t_; }
  std::int32_t blocks_x() const { return nbx_; }
  std::int32_t blocks_y() const { return nby_; }
  Block block(std::int32_t i, std::int32_t j) const;

  /// Index of the boundary line through x (resp. y), or -1.
  std::int32_t x_line(std::int32_t x) const { return line_index(x, area_.x0, area_.x1, ox_, nbx_); }
  std::int32_t y_line(std::int32_t y) const { return line_index(y, area_.y0, area_.y1, oy_, nby_); }
  /// Coordinate of vertical (resp. horizontal) boundary line k, 0 <= k <= blocks.
  std::int32_t x_line_pos(std::int32_t k) const { return line_pos(k, area_.x0, area_.x1, ox_, nbx_); }
  std::int32_t y_line_pos(std::int32_t k) const { return line_pos(k, area_.y0, area_.y1, oy_, nby_); }

  bool is_aux(VertexId v) const {
    return area_.contains(v) && (x_line(v.x) >= 0 || y_line(v.y) >= 0);
  }

  std::int32_t aux_count() const { return prefix(area_.y1 + 1); }
  /// Row-major rank among aux vertices; -1 for non-aux vertices.
  std::int32_t aux_id(VertexId v) const;
  VertexId aux_vertex(std::int32_t id) const;

  /// Blocks whose perimeter contains v (up to four). Returns the count.
  int blocks_of(VertexId v, std::array<Block, 4>& out) const;
  /// The block whose closed window contains v, preferring the lowest indices.
  Block block_containing(VertexId v) const;

 private:
  std::int32_t line_index(std::int32_t c, std::int32_t lo, std::int32_t hi, std::int32_t o, std::int32_t nb) const {
    if (c < lo || c > hi) return -1;
    if (c == hi) return nb;
    if (c == lo) return 0;
    const std::int32_t d = c - lo - o;
    return d >= 0 && d % t_ == 0 ? 1 + d / t_ : -1;
  }
  std::int32_t line_pos(std::int32_t k, std::int32_t lo, std::int32_t hi, std::int32_t o, std::int32_t nb) const {
    return k <= 0 ? lo : k >= nb ? hi : lo + o + (k - 1) * t_;
  }
  // block column (row) of a coordinate strictly between lines
  std::int32_t cell(std::int32_t c, std::int32_t lo, std::int32_t o, std::int32_t nb) const {
    const std::int32_t d = c - lo;
    return d < o ? 0 : std::min(nb - 1, 1 + (d - o) / t_);
  }
  std::int32_t prefix(std::int32_t y) const;  // aux vertices with row < y

  Window area_;
  std::int32_t t_ = 1;
  std::int32_t ox_ = 1, oy_ = 1;
  std::int32_t nbx_ = 1, nby_ = 1;
};

/// Answers "which perimeter vertices of block b does v reach (or get reached
/// from)" inside b's subgrid. Results are perimeter-position bitsets.
class BlockBackend {
 public:
  virtual ~BlockBackend() = default;
  virtual void perimeter_reach(const GridGraph& g, const Block& b, VertexId v, bool reverse,
                               core_vector<std::uint64_t>& out) = 0;
  std::int64_t queries() const { return queries_; }

 protected:
  std::int64_t queries_ = 0;
};

/// Flood fill on the block window.
class OracleBackend final : public BlockBackend {
 public:
  void perimeter_reach(const GridGraph& g, const Block& b, VertexId v, bool reverse,
                       core_vector<std::uint64_t>& out) override;
};

inline bool test_bit(std::span<const std::uint64_t> bits, std::int64_t i) {
  return (bits[std::size_t(i >> 6)] >> (i & 63)) & 1u;
}
inline void set_bit(std::span<std::uint64_t> bits, std::int64_t i) {
  bits[std::size_t(i >> 6)] |= std::uint64_t(1) << (i & 63);
}

/// True iff the backend finds a u -> v path inside the block's subgrid.
bool aux_edge_exists(const GridGraph& g, const Block& b, VertexId u, VertexId v, BlockBackend& backend);

/// Vertex-induced subgraph H of Aux(G). Either every aux vertex of the
/// decomposition, or an explicit sorted member list.
class AuxSubgraph {
 public:
  AuxSubgraph(const GridGraph& g, const Decomposition& d);
  AuxSubgraph(const GridGraph& g, const Decomposition& d, conn_vector<std::int32_t> members);

  const GridGraph& graph() const { return *g_; }
  const Decomposition& decomposition() const { return *d_; }
  bool is_full() const { return full_; }

  std::int32_t size() const { return full_ ? d_->aux_count() : std::int32_t(members_.size()); }
  std::int32_t member(std::int32_t k) const { return full_ ? k : members_[std::size_t(k)]; }
  /// Position of `id` in the member order, or -1.
  std::int32_t rank(std::int32_t id) const;
  bool contains_id(std::int32_t id) const { return rank(id) >= 0; }
  bool contains(VertexId v) const {
    const std::int32_t id = d_->aux_id(v);
    return id >= 0 && contains_id(id);
  }

  /// Perimeter positions of b that are members, ascending.
  template <class Vec>
  void block_members(const Block& b, Vec& positions) const {
    positions.clear();
    const std::int32_t per = b.perimeter();
    for (std::int32_t pos = 0; pos < per; ++pos)
      if (full_ || contains_id(d_->aux_id(perimeter_vertex(b, pos)))) positions.push_back(pos);
  }

 private:
  const GridGraph* g_;
  const Decomposition* d_;
  bool full_;
  conn_vector<std::int32_t> members_;
};

/// Calls f(edge) for each ordered member pair (u, v), u != v, joined by a path
/// in b's subgrid; ordered by (p, q).
void enumerate_block_edges(const AuxSubgraph& h, const Block& b, BlockBackend& backend,
                           const std::function<void(const AuxEdge&)>& f);

}  // namespace gridreach
