#include "gridreach/grid.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace gridreach {

namespace {

// Copies `nbits` bits starting at `start` (may be negative or run past the
// row) into out[0..]; missing bits read as zero.
void extract_bits(std::span<const std::uint64_t> row, std::int64_t start, std::int32_t nbits,
                  std::span<std::uint64_t> out) {
  const std::int64_t total = std::int64_t(row.size()) * 64;
  const std::int32_t nwords = (nbits + 63) / 64;
  for (std::int32_t w = 0; w < nwords; ++w) {
    const std::int64_t bit = start + std::int64_t(w) * 64;
    std::uint64_t v = 0;
    if (bit >= 0 && bit < total) {
      const std::int64_t wi = bit >> 6;
      const int sh = int(bit & 63);
      v = row[std::size_t(wi)] >> sh;
      if (sh != 0 && wi + 1 < std::int64_t(row.size())) v |= row[std::size_t(wi + 1)] << (64 - sh);
    } else if (bit < 0 && bit > -64) {
      const int sh = int(-bit);
      v = row[0] << sh;
      // high part would come from a word at negative index; nothing there.
    }
    out[std::size_t(w)] = v;
  }
  if (const int rem = nbits & 63; rem != 0) out[std::size_t(nwords - 1)] &= (std::uint64_t(1) << rem) - 1;
}

void clear_bit(std::span<std::uint64_t> out, std::int32_t bit) {
  out[std::size_t(bit >> 6)] &= ~(std::uint64_t(1) << (bit & 63));
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_ints(std::string_view s, std::vector<std::int64_t>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
    if (ec != std::errc() || (ptr != s.data() + s.size() && *ptr != ' ' && *ptr != '\t')) return false;
    out.push_back(v);
    i = std::size_t(ptr - s.data());
  }
  return true;
}

}  // namespace

bool unit_direction(VertexId a, VertexId b, Direction& out) {
  for (Direction d : kDirections) {
    if (step(a, d) == b) {
      out = d;
      return true;
    }
  }
  return false;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : GridError("line " + std::to_string(line) + ": " + what), line_(line) {}

GridGraph::GridGraph(std::int32_t m) : m_(m), wpr_((m + 1 + 63) / 64) {
  if (m < 1) throw GridError("grid side must be at least 1");
  for (auto& p : planes_) p.assign(std::size_t(m + 1) * std::size_t(wpr_), 0);
}

bool GridGraph::has_edge(VertexId from, VertexId to) const {
  Direction d;
  if (!contains(from) || !contains(to) || !unit_direction(from, to, d)) return false;
  return has_edge(from, d);
}

void GridGraph::add_edge(VertexId from, Direction d) {
  if (!contains(from) || !contains(step(from, d))) throw GridError("edge leaves the lattice");
  auto& p = planes_[static_cast<unsigned>(d)];
  p[std::size_t(from.y) * wpr_ + (std::size_t(from.x) >> 6)] |= std::uint64_t(1) << (from.x & 63);
}

void GridGraph::remove_edge(VertexId from, Direction d) {
  if (!contains(from)) return;
  auto& p = planes_[static_cast<unsigned>(d)];
  p[std::size_t(from.y) * wpr_ + (std::size_t(from.x) >> 6)] &= ~(std::uint64_t(1) << (from.x & 63));
}

std::int64_t GridGraph::edge_count() const {
  std::int64_t n = 0;
  for (const auto& p : planes_)
    for (std::uint64_t w : p) n += std::popcount(w);
  return n;
}

GridView::GridView(const GridGraph& g, Window w, bool transposed)
    : g_(&g), win_(w), transposed_(transposed) {
  if (w.x0 < 0 || w.y0 < 0 || w.x1 > g.side() || w.y1 > g.side() || w.x0 > w.x1 || w.y0 > w.y1)
    throw GridError("window out of range");
}

void GridView::flag_row(Direction d, std::int32_t y, std::span<std::uint64_t> out) const {
  const std::int32_t nbits = row_bits();
  const std::int32_t nwords = row_words();
  auto zero = [&] { std::fill(out.begin(), out.begin() + nwords, 0); };
  // Source plane, row and bit offset of the flag that encodes `d` in this view.
  Direction src = d;
  std::int32_t row = y;
  std::int64_t start = win_.x0;
  if (transposed_) {
    src = opposite(d);
    switch (d) {
      case Direction::east: start = win_.x0 + 1; break;
      case Direction::west: start = win_.x0 - 1; break;
      case Direction::north: row = y + 1; break;
      case Direction::south: row = y - 1; break;
    }
  }
  if ((d == Direction::north && y >= win_.y1) || (d == Direction::south && y <= win_.y0)) {
    zero();
    return;
  }
  extract_bits(g_->plane_row(src, row), start, nbits, out);
  if (d == Direction::east) clear_bit(out, nbits - 1);
  if (d == Direction::west) clear_bit(out, 0);
}

std::int64_t GridView::edge_count() const {
  std::int64_t n = 0;
  std::vector<std::uint64_t> buf(static_cast<std::size_t>(row_words()));
  for (std::int32_t y = win_.y0; y <= win_.y1; ++y)
    for (Direction d : kDirections) {
      flag_row(d, y, buf);
      for (std::uint64_t w : buf) n += std::popcount(w);
    }
  return n;
}

GridView subgrid_view(const GridGraph& g, SubgridRef ref) {
  if (ref.t < 1 || ref.i < 0 || ref.j < 0) throw GridError("invalid subgrid reference");
  const std::int64_t x0 = std::int64_t(ref.i) * ref.t;
  const std::int64_t y0 = std::int64_t(ref.j) * ref.t;
  if (x0 >= g.side() || y0 >= g.side()) {
    if (!(ref.i == 0 && ref.j == 0)) throw GridError("subgrid window out of range");
  }
  const Window w{std::int32_t(x0), std::int32_t(y0),
                 std::int32_t(std::min<std::int64_t>(x0 + ref.t, g.side())),
                 std::int32_t(std::min<std::int64_t>(y0 + ref.t, g.side()))};
  return GridView(g, w);
}

GridGraph parse_grid(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  GridGraph g;
  std::vector<std::int64_t> nums;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!have_header) {
      if (line.substr(0, 4) != "grid" || line.size() < 5 || (line[4] != ' ' && line[4] != '\t'))
        throw ParseError(line_no, "expected header 'grid <m>'");
      if (!parse_ints(line.substr(4), nums) || nums.size() != 1)
        throw ParseError(line_no, "malformed header");
      if (nums[0] < 1 || nums[0] > (1 << 20)) throw ParseError(line_no, "grid side out of range");
      g = GridGraph(std::int32_t(nums[0]));
      have_header = true;
      continue;
    }
    if (!parse_ints(line, nums) || nums.size() != 4)
      throw ParseError(line_no, "expected '<x1> <y1> <x2> <y2>'");
    for (std::int64_t v : nums)
      if (v < 0 || v > g.side()) throw ParseError(line_no, "coordinate out of range");
    const VertexId a{std::int32_t(nums[0]), std::int32_t(nums[1])};
    const VertexId b{std::int32_t(nums[2]), std::int32_t(nums[3])};
    Direction d;
    if (!unit_direction(a, b, d)) throw ParseError(line_no, "non-unit edge");
    if (g.has_edge(a, d)) throw ParseError(line_no, "duplicate edge");
    g.add_edge(a, d);
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  return g;
}

std::string serialize_grid(const GridGraph& g) {
  std::string out = "grid " + std::to_string(g.side()) + "\n";
  for (std::int32_t x = 0; x <= g.side(); ++x)
    for (std::int32_t y = 0; y <= g.side(); ++y)
      for (Direction d : kDirections) {
        const VertexId v{x, y};
        if (!g.has_edge(v, d)) continue;
        const VertexId w = step(v, d);
        out += std::to_string(v.x) + ' ' + std::to_string(v.y) + ' ' + std::to_string(w.x) + ' ' +
               std::to_string(w.y) + '\n';
      }
  return out;
}

GridGraph generate_random(std::int32_t m, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw GridError("edge probability must lie in [0,1]");
  GridGraph g(m);
  std::mt19937_64 rng(seed);
  for (std::int32_t y = 0; y <= m; ++y)
    for (std::int32_t x = 0; x <= m; ++x)
      for (Direction d : kDirections) {
        const VertexId v{x, y};
        if (!g.contains(step(v, d))) continue;
        const double u = double(rng() >> 11) * 0x1.0p-53;
        if (u < p) g.add_edge(v, d);
      }
  return g;
}

GridGraph load_grid_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GridError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_grid(ss.str());
}

void save_grid_file(const GridGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GridError("cannot write " + path);
  out << serialize_grid(g);
  if (!out) throw GridError("write failed for " + path);
}

}  // namespace gridreach
