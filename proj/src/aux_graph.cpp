#include "gridreach/aux_graph.hpp"

#include <algorithm>
#include <cmath>

#include "gridreach/oracle.hpp"

namespace gridreach {

std::int32_t perimeter_pos(const Block& b, VertexId v) {
  const Window& w = b.win;
  if (!w.contains(v)) return -1;
  const std::int32_t wd = w.width(), ht = w.height();
  if (v.y == w.y0) return v.x - w.x0;
  if (v.x == w.x1) return wd + (v.y - w.y0);
  if (v.y == w.y1) return wd + ht + (w.x1 - v.x);
  if (v.x == w.x0) return 2 * wd + ht + (w.y1 - v.y);
  return -1;
}

VertexId perimeter_vertex(const Block& b, std::int32_t pos) {
  const Window& w = b.win;
  const std::int32_t wd = w.width(), ht = w.height(), per = b.perimeter();
  pos %= per;
  if (pos < 0) pos += per;
  if (pos <= wd) return {w.x0 + pos, w.y0};
  if (pos <= wd + ht) return {w.x1, w.y0 + (pos - wd)};
  if (pos <= 2 * wd + ht) return {w.x1 - (pos - wd - ht), w.y1};
  return {w.x0, w.y1 - (pos - 2 * wd - ht)};
}

VertexId ccw_next(const Block& b, VertexId v) {
  const std::int32_t p = perimeter_pos(b, v);
  if (p < 0) throw GridError("vertex is not on the block perimeter");
  return perimeter_vertex(b, p + 1);
}

std::int32_t ccw_index(const Block& b, VertexId w, VertexId v) {
  const std::int32_t pw = perimeter_pos(b, w), pv = perimeter_pos(b, v);
  if (pw < 0 || pv < 0) throw GridError("vertex is not on the block perimeter");
  const std::int32_t per = b.perimeter();
  return ((pv - pw) % per + per) % per;
}

AuxEdge make_aux_edge(const Block& b, VertexId u, VertexId v) {
  AuxEdge e{b, u, v, perimeter_pos(b, u), perimeter_pos(b, v)};
  if (e.p < 0 || e.q < 0) throw GridError("edge endpoint off the block perimeter");
  return e;
}

bool crosses(const AuxEdge& e, const AuxEdge& f) {
  if (!(e.block == f.block)) throw GridError("crossing test across different blocks");
  return crosses_pos(e.p, e.q, f.p, f.q);
}

std::int32_t closeness_key(const Block& b, std::int32_t anchor_pos, std::int32_t p, std::int32_t q) {
  const std::int32_t per = b.perimeter();
  const std::int32_t rp = ((p - anchor_pos) % per + per) % per;
  const std::int32_t rq = ((q - anchor_pos) % per + per) % per;
  return std::min(rp, rq);
}

bool closer(VertexId anchor, const AuxEdge& f, const AuxEdge& g) {
  if (!(f.block == g.block)) throw GridError("closer: edges of different blocks");
  const std::int32_t a = perimeter_pos(f.block, anchor);
  if (a < 0) throw GridError("closer: anchor off the block perimeter");
  return closeness_key(f.block, a, f.p, f.q) < closeness_key(g.block, a, g.p, g.q);
}

Decomposition::Decomposition(Window area, std::int32_t t, std::int32_t phase_x, std::int32_t phase_y)
    : area_(area), t_(t) {
  if (t < 1) throw GridError("block side must be positive");
  if (area.width() < 1 || area.height() < 1) throw GridError("decomposition needs a 2-d area");
  if (phase_x < 0 || phase_x >= t || phase_y < 0 || phase_y >= t) throw GridError("phase must lie in [0, t)");
  ox_ = phase_x == 0 ? t : phase_x;
  oy_ = phase_y == 0 ? t : phase_y;
  auto count = [t](std::int32_t w, std::int32_t o) { return 1 + (w > o ? (w - o + t - 1) / t : 0); };
  nbx_ = count(area.width(), ox_);
  nby_ = count(area.height(), oy_);
}

std::int32_t Decomposition::block_side(std::int32_t side, double alpha) {
  const double t = std::floor(std::pow(double(side), 1.0 - alpha) + 1e-9);
  return std::max<std::int32_t>(1, std::int32_t(t));
}

Block Decomposition::block(std::int32_t i, std::int32_t j) const {
  if (i < 0 || j < 0 || i >= nbx_ || j >= nby_) throw GridError("block index out of range");
  return Block{i, j, Window{x_line_pos(i), y_line_pos(j), x_line_pos(i + 1), y_line_pos(j + 1)}};
}

std::int32_t Decomposition::prefix(std::int32_t y) const {
  const std::int32_t rows = y - area_.y0;
  std::int32_t lines;
  if (y > area_.y1) lines = nby_ + 1;
  else if (rows <= 0) lines = 0;
  else lines = 1 + std::min(nby_ - 1, rows > oy_ ? (rows - oy_ + t_ - 1) / t_ : 0);
  return rows * (nbx_ + 1) + lines * (area_.width() - nbx_);
}

std::int32_t Decomposition::aux_id(VertexId v) const {
  if (!area_.contains(v)) return -1;
  const std::int32_t xl = x_line(v.x);
  if (y_line(v.y) >= 0) return prefix(v.y) + (v.x - area_.x0);
  if (xl < 0) return -1;
  return prefix(v.y) + xl;
}

VertexId Decomposition::aux_vertex(std::int32_t id) const {
  if (id < 0 || id >= aux_count()) throw GridError("aux id out of range");
  std::int32_t lo = area_.y0, hi = area_.y1;
  while (lo < hi) {
    const std::int32_t mid = lo + (hi - lo + 1) / 2;
    if (prefix(mid) <= id) lo = mid;
    else hi = mid - 1;
  }
  const std::int32_t r = id - prefix(lo);
  if (y_line(lo) >= 0) return {area_.x0 + r, lo};
  return {x_line_pos(r), lo};
}

int Decomposition::blocks_of(VertexId v, std::array<Block, 4>& out) const {
  if (!is_aux(v)) return 0;
  std::int32_t is[2], js[2];
  int ni = 0, nj = 0;
  auto fill = [&](std::int32_t line, std::int32_t c, std::int32_t lo, std::int32_t o, std::int32_t nb, std::int32_t* dst,
                  int& n) {
    if (line >= 0) {
      if (line - 1 >= 0) dst[n++] = line - 1;
      if (line < nb) dst[n++] = line;
    } else {
      dst[n++] = cell(c, lo, o, nb);
    }
  };
  fill(x_line(v.x), v.x, area_.x0, ox_, nbx_, is, ni);
  fill(y_line(v.y), v.y, area_.y0, oy_, nby_, js, nj);
  int k = 0;
  for (int b = 0; b < nj; ++b)
    for (int a = 0; a < ni; ++a) out[std::size_t(k++)] = block(is[a], js[b]);
  return k;
}

Block Decomposition::block_containing(VertexId v) const {
  if (!area_.contains(v)) throw GridError("vertex outside the decomposed area");
  const std::int32_t i = cell(v.x, area_.x0, ox_, nbx_);
  const std::int32_t j = cell(v.y, area_.y0, oy_, nby_);
  return block(i, j);
}

void OracleBackend::perimeter_reach(const GridGraph& g, const Block& b, VertexId v, bool reverse,
                                    core_vector<std::uint64_t>& out) {
  ++queries_;
  FloodFill ff(GridView(g, b.win, reverse));
  ff.seed(v);
  ff.run();
  const std::int32_t per = b.perimeter();
  out.assign(std::size_t((per + 63) / 64), 0);
  for (std::int32_t pos = 0; pos < per; ++pos)
    if (ff.reached(perimeter_vertex(b, pos))) set_bit(out, pos);
}

bool aux_edge_exists(const GridGraph& g, const Block& b, VertexId u, VertexId v, BlockBackend& backend) {
  const std::int32_t pv = perimeter_pos(b, v);
  if (perimeter_pos(b, u) < 0 || pv < 0) throw GridError("aux edge endpoint off the block perimeter");
  if (u == v) return true;
  core_vector<std::uint64_t> bits;
  backend.perimeter_reach(g, b, u, false, bits);
  return test_bit(bits, pv);
}

AuxSubgraph::AuxSubgraph(const GridGraph& g, const Decomposition& d) : g_(&g), d_(&d), full_(true) {}

AuxSubgraph::AuxSubgraph(const GridGraph& g, const Decomposition& d, conn_vector<std::int32_t> members)
    : g_(&g), d_(&d), full_(false), members_(std::move(members)) {}

std::int32_t AuxSubgraph::rank(std::int32_t id) const {
  if (full_) return (id >= 0 && id < d_->aux_count()) ? id : -1;
  const auto it = std::lower_bound(members_.begin(), members_.end(), id);
  if (it == members_.end() || *it != id) return -1;
  return std::int32_t(it - members_.begin());
}

void enumerate_block_edges(const AuxSubgraph& h, const Block& b, BlockBackend& backend,
                           const std::function<void(const AuxEdge&)>& f) {
  core_vector<std::int32_t> members;
  h.block_members(b, members);
  core_vector<std::uint64_t> bits;
  for (std::int32_t p : members) {
    const VertexId u = perimeter_vertex(b, p);
    backend.perimeter_reach(h.graph(), b, u, false, bits);
    for (std::int32_t q : members)
      if (q != p && test_bit(bits, q)) f(AuxEdge{b, u, perimeter_vertex(b, q), p, q});
  }
}

}  // namespace gridreach
