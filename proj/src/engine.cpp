#include "gridreach/engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "gridreach/oracle.hpp"

namespace gridreach {

namespace {

constexpr std::int64_t kFrameWords = 16;

std::int32_t rel(std::int32_t pos, std::int32_t anchor, std::int32_t per) {
  return ((pos - anchor) % per + per) % per;
}

// First set bit at relative offsets [from, to) counted from `anchor`, as an
// absolute position, or -1.
std::int32_t first_in_arc(std::span<const std::uint64_t> bits, std::int32_t anchor, std::int32_t from,
                          std::int32_t to, std::int32_t per) {
  for (std::int32_t r = from; r < to;) {
    const std::int32_t pos = (anchor + r) % per;
    const std::int32_t run = std::min(to - r, per - pos);  // contiguous span before wrapping
    const std::int32_t end = pos + run;
    std::int32_t i = pos;
    while (i < end) {
      const std::uint64_t w = bits[std::size_t(i >> 6)] >> (i & 63);
      if (w != 0) {
        const std::int32_t hit = i + std::countr_zero(w);
        return hit < end ? hit : -1;
      }
      i = (i | 63) + 1;
    }
    r += run;
  }
  return -1;
}

void flood_perimeter(const GridGraph& g, const Block& b, VertexId v, bool reverse, core_vector<std::uint64_t>& out) {
  FloodFill ff(GridView(g, b.win, reverse));
  ff.seed(v);
  ff.run();
  const std::int32_t per = b.perimeter();
  out.assign(std::size_t((per + 63) / 64), 0);
  for (std::int32_t pos = 0; pos < per; ++pos)
    if (ff.reached(perimeter_vertex(b, pos))) set_bit(out, pos);
}

// Member mask of H's vertices on b's perimeter.
void member_mask(const AuxSubgraph& h, const Block& b, core_vector<std::uint64_t>& mask) {
  const std::int32_t per = b.perimeter();
  mask.assign(std::size_t((per + 63) / 64), 0);
  if (h.size() == h.decomposition().aux_count()) {
    for (std::int32_t pos = 0; pos < per; ++pos) set_bit(mask, pos);
    return;
  }
  const Decomposition& d = h.decomposition();
  for (std::int32_t pos = 0; pos < per; ++pos)
    if (h.contains_id(d.aux_id(perimeter_vertex(b, pos)))) set_bit(mask, pos);
}

}  // namespace

std::int32_t EngineConfig::depth_bound() const {
  return std::int32_t(std::ceil(3.0 / std::log2(1.0 / (1.0 - beta)) - 1e-9));
}

void EngineConfig::validate() const {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!(base_exponent > 0 && base_exponent < 1)) throw std::invalid_argument("base exponent must lie in (0, 1)");
  if (max_depth < 0) throw std::invalid_argument("max_depth must be non-negative");
  if (max_depth > 0 && max_depth < depth_bound())
    throw std::invalid_argument("max_depth below ceil(3 / log2(1 / (1 - beta)))");
  if (aux_floor < 16) throw std::invalid_argument("aux_floor must be at least 16");
  if (grid_floor < 1) throw std::invalid_argument("grid_floor must be at least 1");
}

VisitedTable::VisitedTable(const Pseudoseparator& c)
    : c_(&c),
      vflag_(c.vertices.size(), 0),
      vepoch_(c.vertices.size(), -1),
      witness_(c.edges.size(), -1),
      key_(c.edges.size(), kNoKey),
      eepoch_(c.edges.size(), -1) {}

bool VisitedTable::set_vertex(std::size_t k, std::int32_t epoch) {
  if (vflag_[k]) return false;
  vflag_[k] = 1;
  vepoch_[k] = epoch;
  return true;
}

bool VisitedTable::offer(std::size_t e, std::int32_t w, std::int32_t key, std::int32_t epoch) {
  if (key >= key_[e]) return false;
  witness_[e] = w;
  key_[e] = key;
  eepoch_[e] = epoch;
  return true;
}

bool VisitedTable::is_marked(std::int32_t id) const {
  const auto it = std::lower_bound(c_->vertices.begin(), c_->vertices.end(), id);
  if (it != c_->vertices.end() && *it == id && vflag_[std::size_t(it - c_->vertices.begin())]) return true;
  return std::find(witness_.begin(), witness_.end(), id) != witness_.end();
}

std::int32_t component_of(const StripView& s, const StripComponents& comps, std::int32_t id) {
  const std::int32_t r = s.graph().rank(id);
  if (r < 0 || comps.label[std::size_t(r)] < 0) throw GridError("vertex is not in the strip");
  return comps.label[std::size_t(r)];
}

class RecursiveBackend final : public BlockBackend {
 public:
  explicit RecursiveBackend(ReachEngine& eng) : eng_(&eng) {}
  void perimeter_reach(const GridGraph& g, const Block& b, VertexId v, bool reverse,
                       core_vector<std::uint64_t>& out) override {
    ++queries_;
    if (eng_->grid_base_case(std::max(b.win.width(), b.win.height()), true)) {
      flood_perimeter(g, b, v, reverse, out);
      return;
    }
    const std::int32_t per = b.perimeter();
    core_vector<VertexId> targets;
    targets.reserve(std::size_t(per));
    for (std::int32_t pos = 0; pos < per; ++pos) targets.push_back(perimeter_vertex(b, pos));
    core_vector<std::uint8_t> hit;
    eng_->grid_reach_multi(b.win, reverse, v, targets, hit);
    out.assign(std::size_t((per + 63) / 64), 0);
    for (std::int32_t pos = 0; pos < per; ++pos)
      if (hit[std::size_t(pos)]) set_bit(out, pos);
  }

 private:
  ReachEngine* eng_;
};

namespace {

class OracleCounted final : public BlockBackend {
 public:
  void perimeter_reach(const GridGraph& g, const Block& b, VertexId v, bool reverse,
                       core_vector<std::uint64_t>& out) override {
    ++queries_;
    WorkspaceScope unmetered(nullptr);
    flood_perimeter(g, b, v, reverse, out);
  }
};

}  // namespace

ReachEngine::ReachEngine(const GridGraph& g, EngineConfig cfg) : g_(&g), cfg_(cfg), top_side_(g.side()) {
  cfg_.validate();
  if (cfg_.max_depth == 0) cfg_.max_depth = cfg_.depth_bound();
  if (cfg_.backend == BackendKind::recursive) backend_ = std::make_unique<RecursiveBackend>(*this);
  else backend_ = std::make_unique<OracleCounted>();
}

ReachEngine::~ReachEngine() = default;

BlockBackend& ReachEngine::backend() { return *backend_; }

bool ReachEngine::grid_base_case(std::int32_t side, bool nested) const {
  const double lim = std::pow(double(top_side_), cfg_.base_exponent);
  return double(side) <= (nested ? std::max(lim, double(cfg_.grid_floor)) : lim);
}

bool ReachEngine::aux_base_case(std::int32_t h) const {
  const double lim = std::pow(double(top_side_), cfg_.base_exponent);
  return double(h) <= std::max(lim, double(cfg_.aux_floor));
}

Metrics ReachEngine::metrics() const {
  Metrics mt;
  mt.peak_core = ws_.peak(Channel::core);
  mt.peak_conn = ws_.peak(Channel::connectivity);
  mt.oracle_queries = backend_->queries();
  mt.subgrid_calls = subgrid_calls_;
  mt.recursion_depth = max_aux_depth_;
  mt.grid_depth = max_grid_depth_;
  mt.wall_ms = wall_ms_;
  return mt;
}

bool ReachEngine::grid_reach(VertexId s, VertexId t) {
  if (!g_->contains(s) || !g_->contains(t)) throw GridError("query vertex outside the grid");
  WorkspaceScope scope(&ws_);
  const auto start = std::chrono::steady_clock::now();
  bool ans = true;
  if (s != t) {
    const VertexId targets[] = {t};
    core_vector<std::uint8_t> out;
    grid_reach_multi(Window{0, 0, top_side_, top_side_}, false, s, targets, out);
    ans = out[0] != 0;
  }
  wall_ms_ += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return ans;
}

void ReachEngine::grid_reach_multi(const Window& area, bool reversed, VertexId s, std::span<const VertexId> targets,
                                   core_vector<std::uint8_t>& out) {
  if (!area.contains(s)) throw GridError("source outside the area");
  WorkspaceScope scope(&ws_);
  FrameCharge frame(kFrameWords);
  ++subgrid_calls_;
  const std::int32_t saved_aux = aux_depth_;
  aux_depth_ = 0;
  ++grid_depth_;
  max_grid_depth_ = std::max(max_grid_depth_, grid_depth_);
  struct Restore {
    ReachEngine* e;
    std::int32_t aux;
    ~Restore() {
      --e->grid_depth_;
      e->aux_depth_ = aux;
    }
  } restore{this, saved_aux};

  out.assign(targets.size(), 0);
  const std::int32_t side = std::max(area.width(), area.height());
  if (side == 0 || grid_base_case(side, grid_depth_ > 1)) {
    FloodFill ff(GridView(*g_, area, reversed));
    ff.seed(s);
    ff.run();
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (!area.contains(targets[k])) throw GridError("target outside the area");
      out[k] = ff.reached(targets[k]);
    }
    return;
  }
  const std::int32_t t = Decomposition::block_side(side, cfg_.alpha);
  auto on_boundary_x = [&](std::int32_t x) { return x == area.x0 || x == area.x1; };
  auto on_boundary_y = [&](std::int32_t y) { return y == area.y0 || y == area.y1; };
  const bool s_free = on_boundary_x(s.x) || on_boundary_y(s.y);
  const std::int32_t px = s_free ? 0 : (s.x - area.x0) % t;
  std::int32_t py = 0;
  if (targets.size() == 1 && !on_boundary_x(targets[0].x) && !on_boundary_y(targets[0].y))
    py = (targets[0].y - area.y0) % t;
  const Decomposition d(area, t, px, py);
  const AuxSubgraph h(*g_, d);

  core_vector<std::int32_t> src{d.aux_id(s)};
  core_vector<std::int32_t> ids(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    ids[k] = d.aux_id(targets[k]);
    if (ids[k] < 0) throw GridError("target is not on a block line");
  }
  core_vector<std::int32_t> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  core_vector<std::uint8_t> hit;
  if (reversed) {
    FlippedBackend flipped(*backend_);
    aux_reach_multi(h, flipped, src, sorted, hit);
  } else {
    aux_reach_multi(h, *backend_, src, sorted, hit);
  }
  for (std::size_t k = 0; k < targets.size(); ++k)
    out[k] = hit[std::size_t(std::lower_bound(sorted.begin(), sorted.end(), ids[k]) - sorted.begin())];
}

bool ReachEngine::aux_reach(const AuxSubgraph& h, std::int32_t x, std::int32_t y) {
  if (&h.graph() != g_) throw GridError("subgraph belongs to another grid");
  if (!h.contains_id(x) || !h.contains_id(y)) throw GridError("aux_reach endpoints must be members of H");
  WorkspaceScope scope(&ws_);
  const auto start = std::chrono::steady_clock::now();
  const std::int32_t src[] = {x}, dst[] = {y};
  core_vector<std::uint8_t> out;
  aux_reach_multi(h, *backend_, src, dst, out);
  wall_ms_ += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out[0] != 0;
}

void ReachEngine::aux_reach_multi(const AuxSubgraph& h, BlockBackend& backend, std::span<const std::int32_t> sources,
                                  std::span<const std::int32_t> targets, core_vector<std::uint8_t>& out) {
  WorkspaceScope scope(&ws_);
  FrameCharge frame(kFrameWords);
  ++aux_depth_;
  max_aux_depth_ = std::max(max_aux_depth_, aux_depth_);
  struct Restore {
    std::int32_t* d;
    ~Restore() { --*d; }
  } restore{&aux_depth_};
  if (aux_depth_ > cfg_.max_depth) throw EngineError("AuxReach recursion deeper than max_depth");

  out.assign(targets.size(), 0);
  if (targets.empty() || sources.empty()) return;
  if (aux_base_case(h.size())) dfs(h, backend, sources, targets, out);
  else separate_and_loop(h, backend, sources, targets, out);
}

void ReachEngine::dfs(const AuxSubgraph& h, BlockBackend& backend, std::span<const std::int32_t> sources,
                      std::span<const std::int32_t> targets, core_vector<std::uint8_t>& out) {
  const Decomposition& d = h.decomposition();
  const std::int32_t n = h.size();
  core_vector<std::uint64_t> seen(std::size_t((n + 63) / 64), 0);
  core_vector<std::int32_t> stack;
  core_vector<std::uint64_t> bits;
  auto visit = [&](std::int32_t r) {
    if (test_bit(seen, r)) return;
    set_bit(seen, r);
    stack.push_back(r);
    if (on_mark) on_mark(aux_depth_, h.member(r));
  };
  for (std::int32_t s : sources) visit(h.rank(s));
  std::array<Block, 4> blocks;
  while (!stack.empty()) {
    const std::int32_t r = stack.back();
    stack.pop_back();
    const VertexId v = d.aux_vertex(h.member(r));
    const int nb = d.blocks_of(v, blocks);
    for (int k = 0; k < nb; ++k) {
      const Block& b = blocks[std::size_t(k)];
      backend.perimeter_reach(h.graph(), b, v, false, bits);
      const std::int32_t per = b.perimeter();
      for (std::int32_t w = 0; w < std::int32_t(bits.size()); ++w)
        for (std::uint64_t word = bits[std::size_t(w)]; word != 0; word &= word - 1) {
          const std::int32_t pos = w * 64 + std::countr_zero(word);
          if (pos >= per) break;
          const std::int32_t rr = h.rank(d.aux_id(perimeter_vertex(b, pos)));
          if (rr >= 0) visit(rr);
        }
    }
  }
  for (std::size_t k = 0; k < targets.size(); ++k) out[k] = test_bit(seen, h.rank(targets[k]));
}

namespace {

// For each C edge of block b that some out-edge of the vertex at `pw`
// crosses, calls f(edge index, key) with the closeness key of the closest
// such out-edge relative to the C edge's tail. `nb` holds member out-neighbors.
template <class F>
void scan_crossings(const Pseudoseparator& c, std::int32_t block, const Block& b, std::int32_t pw,
                    std::span<const std::uint64_t> nb, F&& f) {
  const std::int32_t per = b.perimeter();
  const auto [lo, hi] = c.block_range(block);
  for (std::size_t e = lo; e < hi; ++e) {
    const SepEdge& ce = c.edges[e];
    if (pw == ce.p || pw == ce.q) continue;
    const std::int32_t rq = rel(ce.q, ce.p, per), rw = rel(pw, ce.p, per);
    // out-neighbors on the far side of the C edge
    const std::int32_t hit = rw < rq ? first_in_arc(nb, ce.p, rq + 1, per, per) : first_in_arc(nb, ce.p, 1, rq, per);
    if (hit < 0) continue;
    f(e, std::min(rw, rel(hit, ce.p, per)));
  }
}

}  // namespace

void ReachEngine::separate_and_loop(const AuxSubgraph& h, BlockBackend& backend, std::span<const std::int32_t> sources,
                                    std::span<const std::int32_t> targets, core_vector<std::uint8_t>& out) {
  const Decomposition& d = h.decomposition();
  PseudoseparatorOptions opt;
  opt.beta = cfg_.beta;
  Pseudoseparator c = build_pseudoseparator(h, backend, opt);
  c.vertices.insert(c.vertices.end(), sources.begin(), sources.end());
  c.vertices.insert(c.vertices.end(), targets.begin(), targets.end());
  std::sort(c.vertices.begin(), c.vertices.end());
  c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());

  const StripView sv(h, c);
  const StripComponents comps = components(sv, backend);
  VisitedTable vt(c);
  auto vindex = [&](std::int32_t id) -> std::int64_t {
    const auto it = std::lower_bound(c.vertices.begin(), c.vertices.end(), id);
    return it != c.vertices.end() && *it == id ? it - c.vertices.begin() : -1;
  };
  auto comp_index = [&](std::int32_t id) -> std::int32_t {
    const std::int32_t lab = comps.label[std::size_t(h.rank(id))];
    if (lab < 0) return -1;
    return std::int32_t(std::lower_bound(comps.comp_ids.begin(), comps.comp_ids.end(), lab) - comps.comp_ids.begin());
  };
  auto note = [&](std::int32_t id) {
    if (on_mark) on_mark(aux_depth_, id);
  };
  for (std::int32_t s : sources) {
    vt.set_vertex(std::size_t(vindex(s)), 0);
    note(s);
  }
  std::int64_t targets_left = 0;
  for (std::int32_t t : targets) targets_left += !vt.vertex_set(std::size_t(vindex(t)));

  // sources and targets per recursive call
  const std::int32_t cap = std::max<std::int32_t>(
      1, std::min(std::int32_t(std::sqrt(double(h.size()))), component_bound(h.size(), cfg_.beta) / 4));
  core_vector<std::uint64_t> bits, mask;
  core_vector<std::int32_t> fresh;
  core_vector<std::pair<std::int32_t, std::int32_t>> wpairs, tpairs;  // (component, aux id)
  core_vector<std::int32_t> wlist, tlist, wc, tc, local, wcomps;
  core_vector<std::uint8_t> res;
  std::array<Block, 4> blocks;

  // Calls f(block, block index, position of v, member out-neighbor bits) for
  // each block on whose perimeter v lies.
  auto neighbors = [&](std::int32_t id, bool reverse, auto&& f) {
    const VertexId v = d.aux_vertex(id);
    const int nb = d.blocks_of(v, blocks);
    for (int k = 0; k < nb; ++k) {
      const Block b = blocks[std::size_t(k)];
      backend.perimeter_reach(h.graph(), b, v, reverse, bits);
      member_mask(h, b, mask);
      for (std::size_t i = 0; i < bits.size(); ++i) bits[i] &= mask[i];
      const std::int32_t pv = perimeter_pos(b, v);
      f(b, block_index(d, b), pv);
    }
  };
  auto offer_all = [&](std::int32_t id, std::int32_t epoch) {
    bool changed = false;
    neighbors(id, false, [&](const Block& b, std::int32_t bi, std::int32_t pv) {
      scan_crossings(c, bi, b, pv, bits, [&](std::size_t e, std::int32_t key) {
        if (vt.offer(e, id, key, epoch)) {
          changed = true;
          note(id);
        }
      });
    });
    return changed;
  };
  auto mark_vertex = [&](std::int64_t k, std::int32_t epoch) {
    if (!vt.set_vertex(std::size_t(k), epoch)) return false;
    note(c.vertices[std::size_t(k)]);
    const std::int32_t id = c.vertices[std::size_t(k)];
    if (std::binary_search(targets.begin(), targets.end(), id)) --targets_left;
    return true;
  };

  const std::int32_t iterations = cfg_.early_exit && targets_left == 0 ? 0 : h.size();
  for (std::int32_t iter = 1; iter <= iterations; ++iter) {
    const std::int32_t prev = iter - 1;
    fresh.clear();
    for (std::size_t k = 0; k < vt.vertex_cells(); ++k)
      if (vt.vertex_set(k) && vt.vertex_epoch(k) == prev) fresh.push_back(c.vertices[k]);
    for (std::size_t e = 0; e < vt.edge_cells(); ++e)
      if (vt.witness(e) >= 0 && vt.edge_epoch(e) == prev) fresh.push_back(vt.witness(e));
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    if (fresh.empty()) {
      if (cfg_.early_exit) break;
      continue;
    }
    bool changed = false;

    // Direct edges out of the newly marked vertices, and the components they
    // lead into.
    wpairs.clear();
    for (std::int32_t w : fresh) {
      local.clear();
      const std::int32_t cw = comp_index(w);
      if (cw >= 0) local.push_back(cw);
      neighbors(w, false, [&](const Block& b, std::int32_t bi, std::int32_t pw) {
        const std::int32_t per = b.perimeter();
        for (std::int32_t q = 0; q < per; ++q) {
          if (!test_bit(bits, q) || q == pw) continue;
          const std::int32_t id = d.aux_id(perimeter_vertex(b, q));
          const std::int64_t k = vindex(id);
          if (k >= 0) changed |= mark_vertex(k, iter);
          else local.push_back(comp_index(id));
        }
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        scan_crossings(c, bi, b, pw, bits, [&](std::size_t e, std::int32_t key) {
          if (vt.offer(e, w, key, iter)) {
            changed = true;
            note(w);
          }
        });
      });
      for (std::int32_t cu : local) wpairs.push_back({cu, w});
    }
    std::sort(wpairs.begin(), wpairs.end());
    wcomps.clear();
    for (const auto& [cu, w] : wpairs)
      if (wcomps.empty() || wcomps.back() != cu) wcomps.push_back(cu);

    // Unmarked C vertices with an in-edge from each component.
    tpairs.clear();
    if (!wpairs.empty()) {
      for (std::size_t k = 0; k < vt.vertex_cells(); ++k) {
        if (vt.vertex_set(k)) continue;
        const std::int32_t v = c.vertices[k];
        local.clear();
        neighbors(v, true, [&](const Block& b, std::int32_t, std::int32_t pv) {
          const std::int32_t per = b.perimeter();
          for (std::int32_t q = 0; q < per; ++q) {
            if (!test_bit(bits, q) || q == pv) continue;
            const std::int32_t cu = comp_index(d.aux_id(perimeter_vertex(b, q)));
            if (cu >= 0 && std::binary_search(wcomps.begin(), wcomps.end(), cu)) local.push_back(cu);
          }
          std::sort(local.begin(), local.end());
          local.erase(std::unique(local.begin(), local.end()), local.end());
        });
        for (std::int32_t cu : local) tpairs.push_back({cu, v});
      }
      std::sort(tpairs.begin(), tpairs.end());
      tpairs.erase(std::unique(tpairs.begin(), tpairs.end()), tpairs.end());
    }

    std::size_t ti = 0;
    for (std::size_t wi = 0; wi < wpairs.size();) {
      const std::int32_t cu = wpairs[wi].first;
      wlist.clear();
      for (; wi < wpairs.size() && wpairs[wi].first == cu; ++wi) wlist.push_back(wpairs[wi].second);
      while (ti < tpairs.size() && tpairs[ti].first < cu) ++ti;
      tlist.clear();
      for (; ti < tpairs.size() && tpairs[ti].first == cu; ++ti) tlist.push_back(tpairs[ti].second);
      const std::size_t k0 = std::size_t(comps.comp_offsets[std::size_t(cu)]);
      const std::size_t k1 = std::size_t(comps.comp_offsets[std::size_t(cu) + 1]);

      auto flush = [&] {
        if (tc.empty()) return;
        std::sort(tc.begin(), tc.end());
        tc.erase(std::unique(tc.begin(), tc.end()), tc.end());
        conn_vector<std::int32_t> members;
        members.reserve(std::size_t(k1 - k0) + wc.size() + tc.size());
        for (std::size_t k = k0; k < k1; ++k) members.push_back(h.member(comps.comp_members[k]));
        members.insert(members.end(), wc.begin(), wc.end());
        members.insert(members.end(), tc.begin(), tc.end());
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        const AuxSubgraph sub(h.graph(), d, std::move(members));
        aux_reach_multi(sub, backend, wc, tc, res);
        for (std::size_t x = 0; x < tc.size(); ++x) {
          if (!res[x]) continue;
          const std::int64_t k = vindex(tc[x]);
          if (k >= 0) changed |= mark_vertex(k, iter);
          else changed |= offer_all(tc[x], iter);
        }
        tc.clear();
      };
      auto push = [&](std::int32_t id) {
        tc.push_back(id);
        if (std::int32_t(tc.size()) >= cap) flush();
      };
      for (std::size_t w0 = 0; w0 < wlist.size(); w0 += std::size_t(cap)) {
        wc.assign(wlist.begin() + std::ptrdiff_t(w0),
                  wlist.begin() + std::ptrdiff_t(std::min(wlist.size(), w0 + std::size_t(cap))));
        tc.clear();
        for (std::int32_t v : tlist)
          if (!vt.vertex_set(std::size_t(vindex(v)))) push(v);
        // component vertices whose crossing out-edges would improve an edge cell
        for (std::size_t k = k0; k < k1; ++k) {
          const std::int32_t id = h.member(comps.comp_members[k]);
          bool useful = false;
          neighbors(id, false, [&](const Block& b, std::int32_t bi, std::int32_t pu) {
            if (useful) return;
            scan_crossings(c, bi, b, pu, bits, [&](std::size_t e, std::int32_t key) { useful |= key < vt.key(e); });
          });
          if (useful) push(id);
        }
        flush();
      }
    }
    if (cfg_.early_exit && (!changed || targets_left == 0)) break;
  }
  for (std::size_t k = 0; k < targets.size(); ++k) out[k] = vt.vertex_set(std::size_t(vindex(targets[k])));
}

bool grid_reach(const GridGraph& g, VertexId s, VertexId t, const EngineConfig& cfg, Metrics* out) {
  ReachEngine eng(g, cfg);
  const bool ans = eng.grid_reach(s, t);
  if (out) *out = eng.metrics();
  return ans;
}

}  // namespace gridreach
