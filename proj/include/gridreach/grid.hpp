#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridreach {

/// Lattice point (x, y). Ordering is row-major: by y, then by x.
struct VertexId {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

enum class Direction : std::uint8_t { east = 0, north = 1, west = 2, south = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::east, Direction::north,
                                                         Direction::west, Direction::south};

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<unsigned>(d) + 2) & 3u);
}

constexpr VertexId step(VertexId v, Direction d) {
  switch (d) {
    case Direction::east: return {v.x + 1, v.y};
    case Direction::north: return {v.x, v.y + 1};
    case Direction::west: return {v.x - 1, v.y};
    case Direction::south: return {v.x, v.y - 1};
  }
  return v;
}

/// Direction of the unit step a -> b, or nothing when |a-b|_1 != 1.
bool unit_direction(VertexId a, VertexId b, Direction& out);

class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GridError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Directed grid graph on [0,m] x [0,m]. Outgoing edges are stored as four
/// bit planes (one per direction), each row-major with `words_per_row` words.
class GridGraph {
 public:
  GridGraph() = default;
  explicit GridGraph(std::int32_t m);

  std::int32_t side() const { return m_; }
  std::int64_t vertex_count() const { return std::int64_t(m_ + 1) * (m_ + 1); }
  std::int32_t words_per_row() const { return wpr_; }

  bool contains(VertexId v) const { return v.x >= 0 && v.y >= 0 && v.x <= m_ && v.y <= m_; }

  bool has_edge(VertexId v, Direction d) const {
    const auto& p = planes_[static_cast<unsigned>(d)];
    const std::size_t word = std::size_t(v.y) * wpr_ + (std::size_t(v.x) >> 6);
    return (p[word] >> (v.x & 63)) & 1u;
  }
  bool has_edge(VertexId from, VertexId to) const;

  /// Adds from -> from+d. Throws GridError if the target leaves the lattice.
  void add_edge(VertexId from, Direction d);
  void remove_edge(VertexId from, Direction d);

  std::int64_t edge_count() const;

  /// Row `y` of the outgoing-edge plane for direction `d`.
  std::span<const std::uint64_t> plane_row(Direction d, std::int32_t y) const {
    return {planes_[static_cast<unsigned>(d)].data() + std::size_t(y) * wpr_, std::size_t(wpr_)};
  }

  friend bool operator==(const GridGraph&, const GridGraph&) = default;

 private:
  std::int32_t m_ = 0;
  std::int32_t wpr_ = 0;
  std::array<std::vector<std::uint64_t>, 4> planes_;
};

/// Inclusive vertex window [x0,x1] x [y0,y1].
struct Window {
  std::int32_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  std::int32_t width() const { return x1 - x0; }
  std::int32_t height() const { return y1 - y0; }
  std::int64_t vertex_count() const { return std::int64_t(x1 - x0 + 1) * (y1 - y0 + 1); }
  bool contains(VertexId v) const { return v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Block (i, j) of side t: the window [i*t, (i+1)*t] x [j*t, (j+1)*t], clipped
/// to the grid (the last block row/column may be smaller).
struct SubgridRef {
  std::int32_t i = 0;
  std::int32_t j = 0;
  std::int32_t t = 1;
};

/// Read-only induced subgraph of a GridGraph on a window. A transposed view
/// reverses every edge. Coordinates stay those of the underlying grid.
class GridView {
 public:
  GridView() = default;
  explicit GridView(const GridGraph& g)
      : g_(&g), win_{0, 0, g.side(), g.side()} {}
  GridView(const GridGraph& g, Window w, bool transposed = false);

  const GridGraph& graph() const { return *g_; }
  const Window& window() const { return win_; }
  bool transposed() const { return transposed_; }
  GridView reversed() const { return GridView(*g_, win_, !transposed_); }
  GridView restrict(Window w) const { return GridView(*g_, w, transposed_); }

  bool contains(VertexId v) const { return win_.contains(v); }

  bool has_edge(VertexId v, Direction d) const {
    const VertexId w = step(v, d);
    if (!win_.contains(v) || !win_.contains(w)) return false;
    return transposed_ ? g_->has_edge(w, opposite(d)) : g_->has_edge(v, d);
  }

  /// Bits x0..x1 of the direction-`d` flags on row y, with edges leaving the
  /// window masked off. `out` must hold words_for_width() words.
  void flag_row(Direction d, std::int32_t y, std::span<std::uint64_t> out) const;

  std::int32_t row_bits() const { return win_.x1 - win_.x0 + 1; }
  std::int32_t row_words() const { return (row_bits() + 63) / 64; }

  std::int64_t edge_count() const;

 private:
  const GridGraph* g_ = nullptr;
  Window win_;
  bool transposed_ = false;
};

/// View of block `ref` of g; throws GridError when the window is out of range.
GridView subgrid_view(const GridGraph& g, SubgridRef ref);

GridGraph parse_grid(std::string_view text);
std::string serialize_grid(const GridGraph& g);

/// Each candidate directed unit edge is present independently with
/// probability p; deterministic per (m, p, seed).
GridGraph generate_random(std::int32_t m, double p, std::uint64_t seed);

GridGraph load_grid_file(const std::string& path);
void save_grid_file(const GridGraph& g, const std::string& path);

}  // namespace gridreach
