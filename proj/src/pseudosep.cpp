#include "gridreach/pseudosep.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <tuple>

#include "gridreach/kernels/kernels.hpp"

namespace gridreach {

namespace {

std::int32_t words_for(std::int32_t bits) { return (bits + 63) / 64; }

// Member rank of the perimeter vertex at `pos`, or -1.
std::int32_t rank_at(const AuxSubgraph& h, const Block& b, std::int32_t pos) {
  return h.rank(h.decomposition().aux_id(perimeter_vertex(b, pos)));
}

// Smallest set bit strictly greater than `from`, or `limit` if none.
std::int32_t next_bit(std::span<const std::uint64_t> bits, std::int32_t from, std::int32_t limit) {
  std::int32_t i = from + 1;
  while (i < limit) {
    const std::uint64_t w = bits[std::size_t(i >> 6)] >> (i & 63);
    if (w != 0) {
      const std::int32_t r = i + std::countr_zero(w);
      return r < limit ? r : limit;
    }
    i = (i | 63) + 1;
  }
  return limit;
}

}  // namespace

std::int64_t PlanarSkeleton::real_count() const {
  return std::count_if(edges.begin(), edges.end(), [](const SkeletonEdge& e) { return !e.tri; });
}

std::int64_t PlanarSkeleton::tri_count() const {
  return std::count_if(edges.begin(), edges.end(), [](const SkeletonEdge& e) { return e.tri; });
}

std::int32_t block_index(const Decomposition& d, const Block& b) { return b.j * d.blocks_x() + b.i; }

Block block_at(const Decomposition& d, std::int32_t index) {
  return d.block(index % d.blocks_x(), index / d.blocks_x());
}

namespace {

// Greedy non-crossing selection in (lo, hi) order. `stop` ends the scan after
// the member at that position has been processed.
void stream_kept(const AuxSubgraph& h, const Block& b, BlockBackend& backend, std::int32_t stop,
                 const std::function<void(std::int32_t, std::int32_t, std::uint8_t)>& f) {
  const std::int32_t per = b.perimeter();
  const std::size_t nw = std::size_t(words_for(per));
  conn_vector<std::int32_t> members;
  h.block_members(b, members);
  conn_vector<std::uint64_t> member_bits(nw, 0), acc(nw, 0), both(nw, 0);
  for (std::int32_t p : members) set_bit(member_bits, p);
  core_vector<std::uint64_t> fwd, rev;
  for (std::int32_t a : members) {
    if (a > stop) break;
    const VertexId u = perimeter_vertex(b, a);
    backend.perimeter_reach(h.graph(), b, u, false, fwd);
    backend.perimeter_reach(h.graph(), b, u, true, rev);
    for (std::size_t i = 0; i < nw; ++i) both[i] = (fwd[i] | rev[i]) & member_bits[i];
    // Smallest far end among kept pairs that start before a and pass over it.
    const std::int32_t best = next_bit(acc, a, per);
    for (std::int32_t c = next_bit(both, a, per); c < per && c <= best; c = next_bit(both, c, per)) {
      const std::uint8_t dirs = std::uint8_t((test_bit(fwd, c) ? 1 : 0) | (test_bit(rev, c) ? 2 : 0));
      set_bit(acc, c);
      f(a, c, dirs);
    }
  }
}

}  // namespace

bool mxplanar_keeps(const AuxSubgraph& h, const Block& b, std::int32_t p, std::int32_t q, BlockBackend& backend) {
  const std::int32_t lo = std::min(p, q), hi = std::max(p, q);
  if (lo == hi || rank_at(h, b, lo) < 0 || rank_at(h, b, hi) < 0) return false;
  bool kept = false;
  stream_kept(h, b, backend, lo, [&](std::int32_t a, std::int32_t c, std::uint8_t) { kept |= a == lo && c == hi; });
  return kept;
}

void for_each_mxplanar_edge(const AuxSubgraph& h, const Block& b, BlockBackend& backend,
                            const std::function<void(std::int32_t, std::int32_t, std::uint8_t)>& f) {
  stream_kept(h, b, backend, b.perimeter(), f);
}

PlanarSkeleton triangulate(const AuxSubgraph& h, BlockBackend& backend) {
  const Decomposition& d = h.decomposition();
  PlanarSkeleton sk;
  sk.vertex_count = h.size();
  conn_vector<std::int32_t> members;
  conn_vector<SkeletonEdge> block_edges;
  conn_vector<std::pair<std::int32_t, std::int32_t>> chords;  // polygon indices
  conn_vector<std::int32_t> stack, face;

  for (std::int32_t j = 0; j < d.blocks_y(); ++j)
    for (std::int32_t i = 0; i < d.blocks_x(); ++i) {
      const Block b = d.block(i, j);
      const std::int32_t bi = block_index(d, b);
      h.block_members(b, members);
      const std::int32_t k = std::int32_t(members.size());
      if (k < 2) continue;
      block_edges.clear();
      for_each_mxplanar_edge(h, b, backend, [&](std::int32_t lo, std::int32_t hi, std::uint8_t dirs) {
        block_edges.push_back({bi, lo, hi, dirs, false});
      });
      const std::size_t real_end = block_edges.size();
      auto is_real = [&](std::int32_t lo, std::int32_t hi) {
        const auto it = std::lower_bound(block_edges.begin(), block_edges.begin() + std::ptrdiff_t(real_end), std::pair{lo, hi},
                                         [](const SkeletonEdge& e, const std::pair<std::int32_t, std::int32_t>& key) {
                                           return std::pair{e.lo, e.hi} < key;
                                         });
        return it != block_edges.begin() + std::ptrdiff_t(real_end) && it->lo == lo && it->hi == hi;
      };
      auto add_tri = [&](std::int32_t pa, std::int32_t pb) {
        const std::int32_t lo = std::min(pa, pb), hi = std::max(pa, pb);
        if (!is_real(lo, hi)) block_edges.push_back({bi, lo, hi, 0, true});
      };
      // boundary cycle through consecutive members
      for (std::int32_t x = 0; x + 1 < k; ++x) add_tri(members[std::size_t(x)], members[std::size_t(x + 1)]);
      if (k >= 3) add_tri(members[0], members[std::size_t(k - 1)]);

      // faces of the polygon cut by the non-crossing real chords
      chords.clear();
      auto poly = [&](std::int32_t pos) {
        return std::int32_t(std::lower_bound(members.begin(), members.end(), pos) - members.begin());
      };
      for (std::size_t e = 0; e < real_end; ++e) {
        const std::int32_t a = poly(block_edges[e].lo), c = poly(block_edges[e].hi);
        if (c - a >= 2 && !(a == 0 && c == k - 1)) chords.push_back({a, c});
      }
      std::sort(chords.begin(), chords.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first > y.first;
      });
      auto aux_of = [&](std::int32_t idx) { return d.aux_id(perimeter_vertex(b, members[std::size_t(idx)])); };
      auto fan = [&](const conn_vector<std::int32_t>& f) {
        const std::int32_t r = std::int32_t(f.size());
        if (r < 4) return;
        std::int32_t low = 0;
        for (std::int32_t x = 1; x < r; ++x)
          if (aux_of(f[std::size_t(x)]) < aux_of(f[std::size_t(low)])) low = x;
        for (std::int32_t x = 2; x < r - 1; ++x)
          add_tri(members[std::size_t(f[std::size_t(low)])], members[std::size_t(f[std::size_t((low + x) % r)])]);
      };
      stack.clear();
      std::size_t ci = 0;
      for (std::int32_t v = 0; v < k; ++v) {
        for (; ci < chords.size() && chords[ci].second == v; ++ci) {
          const std::int32_t a = chords[ci].first;
          face.clear();
          while (!stack.empty() && stack.back() != a) {
            face.push_back(stack.back());
            stack.pop_back();
          }
          face.push_back(a);
          std::reverse(face.begin(), face.end());
          face.push_back(v);
          fan(face);
        }
        stack.push_back(v);
      }
      if (k >= 3) fan(stack);

      std::sort(block_edges.begin(), block_edges.end(),
                [](const SkeletonEdge& x, const SkeletonEdge& y) { return std::tie(x.lo, x.hi) < std::tie(y.lo, y.hi); });
      sk.edges.insert(sk.edges.end(), block_edges.begin(), block_edges.end());
    }

  // undirected adjacency over member ranks
  conn_vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(sk.edges.size() * 2);
  for (const SkeletonEdge& e : sk.edges) {
    const Block b = block_at(d, e.block);
    const std::int32_t ra = rank_at(h, b, e.lo), rb = rank_at(h, b, e.hi);
    pairs.push_back({ra, rb});
    pairs.push_back({rb, ra});
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  sk.offsets.assign(std::size_t(sk.vertex_count) + 1, 0);
  for (const auto& pr : pairs) ++sk.offsets[std::size_t(pr.first) + 1];
  for (std::size_t v = 0; v < std::size_t(sk.vertex_count); ++v) sk.offsets[v + 1] += sk.offsets[v];
  sk.adj.resize(pairs.size());
  for (std::size_t x = 0; x < pairs.size(); ++x) sk.adj[x] = pairs[x].second;
  return sk;
}

namespace {

// Working state of the recursive separator, sized to the whole graph.
struct SepState {
  const conn_vector<std::int32_t>& off;
  const conn_vector<std::int32_t>& adj;
  conn_vector<std::uint8_t> removed;  // in S
  conn_vector<std::int32_t> stamp;    // visit marks
  conn_vector<std::int32_t> level, parent;
  std::int32_t clock = 0;

  SepState(const conn_vector<std::int32_t>& o, const conn_vector<std::int32_t>& a, std::size_t n)
      : off(o), adj(a), removed(n, 0), stamp(n, 0), level(n, 0), parent(n, -1) {}

  // Components of `vs` (minus removed vertices), restricted to `vs`. Members
  // of `vs` carry stamp `inside`.
  template <class F>
  void split(const conn_vector<std::int32_t>& vs, F&& emit) {
    const std::int32_t inside = ++clock;
    for (std::int32_t v : vs)
      if (!removed[std::size_t(v)]) stamp[std::size_t(v)] = inside;
    const std::int32_t seen = ++clock;
    conn_vector<std::int32_t> comp;
    for (std::int32_t s : vs) {
      if (stamp[std::size_t(s)] != inside) continue;
      comp.clear();
      comp.push_back(s);
      stamp[std::size_t(s)] = seen;
      for (std::size_t head = 0; head < comp.size(); ++head) {
        const std::int32_t v = comp[head];
        for (std::int32_t e = off[std::size_t(v)]; e < off[std::size_t(v) + 1]; ++e) {
          const std::int32_t u = adj[std::size_t(e)];
          if (stamp[std::size_t(u)] == inside) {
            stamp[std::size_t(u)] = seen;
            comp.push_back(u);
          }
        }
      }
      emit(comp);
    }
  }

  std::int32_t max_component(const conn_vector<std::int32_t>& vs) {
    std::int32_t best = 0;
    split(vs, [&](const conn_vector<std::int32_t>& c) { best = std::max(best, std::int32_t(c.size())); });
    return best;
  }
};

// One separator for the connected vertex set `vs` (sorted).
conn_vector<std::int32_t> separate_once(SepState& st, const conn_vector<std::int32_t>& vs) {
  const std::int32_t n = std::int32_t(vs.size());
  const std::int32_t inside = ++st.clock;
  for (std::int32_t v : vs) st.stamp[std::size_t(v)] = inside;
  // BFS from the lowest vertex
  const std::int32_t done = ++st.clock;
  conn_vector<std::int32_t> order;
  order.reserve(vs.size());
  order.push_back(vs[0]);
  st.stamp[std::size_t(vs[0])] = done;
  st.level[std::size_t(vs[0])] = 0;
  st.parent[std::size_t(vs[0])] = -1;
  conn_vector<std::pair<std::int32_t, std::int32_t>> nontree;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::int32_t v = order[head];
    for (std::int32_t e = st.off[std::size_t(v)]; e < st.off[std::size_t(v) + 1]; ++e) {
      const std::int32_t u = st.adj[std::size_t(e)];
      if (st.stamp[std::size_t(u)] == inside) {
        st.stamp[std::size_t(u)] = done;
        st.level[std::size_t(u)] = st.level[std::size_t(v)] + 1;
        st.parent[std::size_t(u)] = v;
        order.push_back(u);
      } else if (st.stamp[std::size_t(u)] == done && v < u && st.parent[std::size_t(u)] != v &&
                 st.parent[std::size_t(v)] != u) {
        nontree.push_back({v, u});
      }
    }
  }
  const std::int32_t depth = st.level[std::size_t(order.back())];
  conn_vector<std::int32_t> lsize(std::size_t(depth) + 1, 0);
  for (std::int32_t v : order) ++lsize[std::size_t(st.level[std::size_t(v)])];
  conn_vector<std::int32_t> below(std::size_t(depth) + 2, 0);  // vertices on levels < i
  for (std::int32_t i = 0; i <= depth; ++i) below[std::size_t(i) + 1] = below[std::size_t(i)] + lsize[std::size_t(i)];

  const std::int32_t goal = std::max<std::int32_t>(1, (2 * n) / 3);
  struct Choice {
    std::int32_t kind = -1;  // 0 level, 1 two levels, 2 cycle
    std::int32_t a = 0, b = 0;
    std::int64_t size = 0;
    std::int64_t bound = 0;
  } best;
  auto consider = [&](Choice c) {
    const bool ok = c.bound <= goal, best_ok = best.bound <= goal && best.kind >= 0;
    if (best.kind < 0 || (ok && !best_ok) || (ok == best_ok && (ok ? c.size < best.size || (c.size == best.size && c.bound < best.bound)
                                                                    : c.bound < best.bound || (c.bound == best.bound && c.size < best.size))))
      best = c;
  };
  for (std::int32_t i = 0; i <= depth; ++i) {
    const std::int64_t left = below[std::size_t(i)], right = n - below[std::size_t(i) + 1];
    consider({0, i, i, lsize[std::size_t(i)], std::max(left, right)});
  }
  if (depth <= 512) {
    for (std::int32_t i = 0; i <= depth; ++i)
      for (std::int32_t k = i + 2; k <= depth; ++k) {
        const std::int64_t left = below[std::size_t(i)], mid = below[std::size_t(k)] - below[std::size_t(i) + 1];
        const std::int64_t right = n - below[std::size_t(k) + 1];
        consider({1, i, k, std::int64_t(lsize[std::size_t(i)]) + lsize[std::size_t(k)], std::max({left, mid, right})});
      }
  }

  auto cycle_of = [&](std::int32_t u, std::int32_t v, conn_vector<std::int32_t>& out) {
    out.clear();
    while (u != v) {
      if (st.level[std::size_t(u)] >= st.level[std::size_t(v)]) {
        out.push_back(u);
        u = st.parent[std::size_t(u)];
      } else {
        out.push_back(v);
        v = st.parent[std::size_t(v)];
      }
    }
    out.push_back(u);
    std::sort(out.begin(), out.end());
  };
  conn_vector<std::int32_t> cyc;
  const std::size_t samples = std::min<std::size_t>(nontree.size(), 24);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto& [u, v] = nontree[(s * nontree.size()) / samples + (nontree.size() / samples) / 2];
    cycle_of(u, v, cyc);
    for (std::int32_t x : cyc) st.removed[std::size_t(x)] = 1;
    const std::int32_t mc = st.max_component(vs);
    for (std::int32_t x : cyc) st.removed[std::size_t(x)] = 0;
    consider({2, u, v, std::int64_t(cyc.size()), mc});
  }

  conn_vector<std::int32_t> by_degree(vs.begin(), vs.end());
  auto degree = [&](std::int32_t v) { return st.off[std::size_t(v) + 1] - st.off[std::size_t(v)]; };
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](std::int32_t x, std::int32_t y) { return degree(x) > degree(y); });
  const std::int32_t kmax = std::max<std::int32_t>(1, std::int32_t(2 * std::sqrt(double(n))));
  for (std::int32_t k = 1; k <= kmax && k < n; k *= 2) {
    for (std::int32_t x = 0; x < k; ++x) st.removed[std::size_t(by_degree[std::size_t(x)])] = 1;
    const std::int32_t mc = st.max_component(vs);
    for (std::int32_t x = 0; x < k; ++x) st.removed[std::size_t(by_degree[std::size_t(x)])] = 0;
    consider({3, k, 0, k, mc});
  }

  conn_vector<std::int32_t> out;
  if (best.kind == 2) {
    cycle_of(best.a, best.b, out);
    return out;
  }
  if (best.kind == 3) {
    out.assign(by_degree.begin(), by_degree.begin() + best.a);
    std::sort(out.begin(), out.end());
    return out;
  }
  for (std::int32_t v : order) {
    const std::int32_t l = st.level[std::size_t(v)];
    if (l == best.a || (best.kind == 1 && l == best.b)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

conn_vector<std::int32_t> planar_separator(const conn_vector<std::int32_t>& offsets,
                                           const conn_vector<std::int32_t>& adj, std::int32_t target) {
  if (target < 1) throw std::invalid_argument("separator target must be at least 1");
  const std::size_t n = offsets.empty() ? 0 : offsets.size() - 1;
  SepState st(offsets, adj, n);
  conn_vector<std::int32_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::deque<conn_vector<std::int32_t>> work;
  st.split(all, [&](const conn_vector<std::int32_t>& c) {
    if (std::int32_t(c.size()) > target) {
      work.emplace_back(c);
      std::sort(work.back().begin(), work.back().end());
    }
  });
  while (!work.empty()) {
    conn_vector<std::int32_t> vs = std::move(work.front());
    work.pop_front();
    const conn_vector<std::int32_t> s = separate_once(st, vs);
    for (std::int32_t x : s) st.removed[std::size_t(x)] = 1;
    st.split(vs, [&](const conn_vector<std::int32_t>& c) {
      if (std::int32_t(c.size()) > target) {
        work.emplace_back(c);
        std::sort(work.back().begin(), work.back().end());
      }
    });
  }
  // Drop separator vertices whose return would not create an oversized
  // component.
  conn_vector<std::int32_t> parent(n), size(n, 1), roots;
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int32_t v) {
    while (parent[std::size_t(v)] != v) {
      parent[std::size_t(v)] = parent[std::size_t(parent[std::size_t(v)])];
      v = parent[std::size_t(v)];
    }
    return v;
  };
  auto unite = [&](std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[std::size_t(a)] < size[std::size_t(b)]) std::swap(a, b);
    parent[std::size_t(b)] = a;
    size[std::size_t(a)] += size[std::size_t(b)];
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (st.removed[v]) continue;
    for (std::int32_t e = offsets[v]; e < offsets[v + 1]; ++e) {
      const std::int32_t u = adj[std::size_t(e)];
      if (!st.removed[std::size_t(u)]) unite(std::int32_t(v), u);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!st.removed[v]) continue;
    roots.clear();
    for (std::int32_t e = offsets[v]; e < offsets[v + 1]; ++e) {
      const std::int32_t u = adj[std::size_t(e)];
      if (!st.removed[std::size_t(u)]) roots.push_back(find(u));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::int64_t total = 1;
    for (std::int32_t r : roots) total += size[std::size_t(r)];
    if (total > target) continue;
    st.removed[v] = 0;
    for (std::int32_t r : roots) unite(std::int32_t(v), r);
  }

  conn_vector<std::int32_t> out;
  for (std::size_t v = 0; v < n; ++v)
    if (st.removed[v]) out.push_back(std::int32_t(v));
  return out;
}

bool Pseudoseparator::has_vertex(std::int32_t id) const {
  return std::binary_search(vertices.begin(), vertices.end(), id);
}

void Pseudoseparator::add_vertex(std::int32_t id) {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), id);
  if (it == vertices.end() || *it != id) vertices.insert(it, id);
}

std::pair<std::size_t, std::size_t> Pseudoseparator::block_range(std::int32_t block) const {
  const auto lo = std::lower_bound(edges.begin(), edges.end(), block,
                                   [](const SepEdge& e, std::int32_t b) { return e.block < b; });
  const auto hi = std::upper_bound(lo, edges.end(), block,
                                   [](std::int32_t b, const SepEdge& e) { return b < e.block; });
  return {std::size_t(lo - edges.begin()), std::size_t(hi - edges.begin())};
}

std::int32_t component_bound(std::int32_t h, double beta) {
  const double b = std::floor(std::pow(double(std::max(h, 1)), 1.0 - beta) + 1e-9);
  return std::max<std::int32_t>(1, std::int32_t(b));
}

Pseudoseparator build_pseudoseparator(const AuxSubgraph& h, BlockBackend& backend, const PseudoseparatorOptions& opt) {
  const Decomposition& d = h.decomposition();
  const std::int32_t target = component_bound(h.size(), opt.beta);
  Pseudoseparator c;
  {
    const PlanarSkeleton sk = triangulate(h, backend);
    const conn_vector<std::int32_t> s = planar_separator(sk.offsets, sk.adj, target);
    conn_vector<std::uint8_t> in_s(std::size_t(h.size()), 0);
    for (std::int32_t r : s) {
      in_s[std::size_t(r)] = 1;
      c.source_sep.push_back(h.member(r));
    }
    c.vertices.assign(c.source_sep.begin(), c.source_sep.end());

    core_vector<std::uint64_t> fwd_v, rev_v, fwd_w, rev_w;
    for (const SkeletonEdge& e : sk.edges) {
      const Block b = block_at(d, e.block);
      const std::int32_t rv = rank_at(h, b, e.lo), rw = rank_at(h, b, e.hi);
      if (!in_s[std::size_t(rv)] || !in_s[std::size_t(rw)]) continue;
      std::uint8_t dirs = e.dirs;
      const VertexId v = perimeter_vertex(b, e.lo), w = perimeter_vertex(b, e.hi);
      if (e.tri) {
        backend.perimeter_reach(h.graph(), b, v, false, fwd_v);
        backend.perimeter_reach(h.graph(), b, v, true, rev_v);
        dirs = std::uint8_t((test_bit(fwd_v, e.hi) ? 1 : 0) | (test_bit(rev_v, e.hi) ? 2 : 0));
      }
      if (dirs & 1) c.edges.push_back({e.block, e.lo, e.hi, false});
      if (dirs & 2) c.edges.push_back({e.block, e.hi, e.lo, false});
      if (dirs != 0) continue;

      // Virtual edge: recruit the nearest H edges around each endpoint.
      backend.perimeter_reach(h.graph(), b, w, false, fwd_w);
      backend.perimeter_reach(h.graph(), b, w, true, rev_w);
      const std::int32_t per = b.perimeter();
      auto recruit = [&](std::int32_t from, const core_vector<std::uint64_t>& fwd, const core_vector<std::uint64_t>& rev,
                         std::int32_t to) {
        const std::int32_t p = ((to - from) % per + per) % per;
        auto adjacent = [&](std::int32_t x) {
          const std::int32_t pos = (from + x) % per;
          return (test_bit(fwd, pos) || test_bit(rev, pos)) && rank_at(h, b, pos) >= 0;
        };
        auto add = [&](std::int32_t x) {
          const std::int32_t pos = (from + x) % per;
          c.vertices.push_back(d.aux_id(perimeter_vertex(b, pos)));
          if (test_bit(fwd, pos)) c.edges.push_back({e.block, from, pos, true});
          else c.edges.push_back({e.block, pos, from, true});
        };
        for (std::int32_t x = p - 1; x >= 1; --x)
          if (adjacent(x)) {
            add(x);
            break;
          }
        for (std::int32_t x = p + 1; x < per; ++x)
          if (adjacent(x)) {
            add(x);
            break;
          }
      };
      recruit(e.lo, fwd_v, rev_v, e.hi);
      recruit(e.hi, fwd_w, rev_w, e.lo);
    }
  }
  std::sort(c.vertices.begin(), c.vertices.end());
  c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());
  std::sort(c.edges.begin(), c.edges.end(), [](const SepEdge& x, const SepEdge& y) {
    return std::tie(x.block, x.p, x.q, x.shadow) < std::tie(y.block, y.p, y.q, y.shadow);
  });
  // Identical edges collapse; a real copy wins over a shadow copy.
  c.edges.erase(std::unique(c.edges.begin(), c.edges.end(),
                            [](const SepEdge& x, const SepEdge& y) {
                              return x.block == y.block && x.p == y.p && x.q == y.q;
                            }),
                c.edges.end());
  c.shadows = std::int32_t(std::count_if(c.edges.begin(), c.edges.end(), [](const SepEdge& e) { return e.shadow; }));

  if (opt.verify) {
    const StripView sv(h, c);
    const StripComponents comps = components(sv, backend);
    for (std::size_t k = 0; k < comps.comp_ids.size(); ++k)
      if (comps.size_of(k) > target)
        throw PseudoseparatorError("component of size " + std::to_string(comps.size_of(k)) + " exceeds bound " +
                                       std::to_string(target),
                                   comps.comp_ids[k]);
  }
  return c;
}

CrossIndex::CrossIndex(const Decomposition& d, const Pseudoseparator& c) {
  const std::int32_t nblocks = d.blocks_x() * d.blocks_y();
  start_.assign(std::size_t(nblocks) + 1, 0);
  for (const SepEdge& e : c.edges) ++start_[std::size_t(e.block) + 1];
  for (std::size_t b = 0; b < std::size_t(nblocks); ++b) start_[b + 1] += start_[b];
  lo_.resize(c.edges.size());
  hi_.resize(c.edges.size());
  // edges are sorted by block already
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    lo_[k] = std::min(c.edges[k].p, c.edges[k].q);
    hi_[k] = std::max(c.edges[k].p, c.edges[k].q);
  }
}

bool CrossIndex::crosses_any(std::int32_t block, std::int32_t p, std::int32_t q) const {
  const std::int32_t s = start_[std::size_t(block)], e = start_[std::size_t(block) + 1];
  if (s == e) return false;
  return kernels::find_crossing(lo_.data() + s, hi_.data() + s, e - s, std::min(p, q), std::max(p, q)) >= 0;
}

StripView::StripView(const AuxSubgraph& h, const Pseudoseparator& c)
    : h_(&h), c_(&c), cross_(h.decomposition(), c) {}

bool StripView::has_edge(const Block& b, std::int32_t p, std::int32_t q, BlockBackend& backend) const {
  const Decomposition& d = h_->decomposition();
  const std::int32_t iu = d.aux_id(perimeter_vertex(b, p)), iv = d.aux_id(perimeter_vertex(b, q));
  if (p == q || !has_vertex(iu) || !has_vertex(iv)) return false;
  if (!aux_edge_exists(h_->graph(), b, perimeter_vertex(b, p), perimeter_vertex(b, q), backend)) return false;
  return !cross_.crosses_any(block_index(d, b), p, q);
}

std::int32_t StripComponents::max_size() const {
  std::int32_t best = 0;
  for (std::size_t k = 0; k < comp_ids.size(); ++k) best = std::max(best, size_of(k));
  return best;
}

StripComponents components(const StripView& s, BlockBackend& backend) {
  const AuxSubgraph& h = s.graph();
  const Decomposition& d = h.decomposition();
  const std::int32_t n = h.size();
  conn_vector<std::int32_t> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::int32_t x) {
    while (parent[std::size_t(x)] != x) {
      parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
      x = parent[std::size_t(x)];
    }
    return x;
  };
  conn_vector<std::uint8_t> in_c(std::size_t(n), 0);
  for (std::int32_t id : s.separator().vertices) {
    const std::int32_t r = h.rank(id);
    if (r >= 0) in_c[std::size_t(r)] = 1;
  }
  conn_vector<std::int32_t> members, ranks;
  core_vector<std::uint64_t> fwd;
  for (std::int32_t j = 0; j < d.blocks_y(); ++j)
    for (std::int32_t i = 0; i < d.blocks_x(); ++i) {
      const Block b = d.block(i, j);
      const std::int32_t bi = block_index(d, b);
      h.block_members(b, members);
      ranks.resize(members.size());
      for (std::size_t x = 0; x < members.size(); ++x) ranks[x] = rank_at(h, b, members[x]);
      for (std::size_t x = 0; x < members.size(); ++x) {
        if (in_c[std::size_t(ranks[x])]) continue;
        backend.perimeter_reach(h.graph(), b, perimeter_vertex(b, members[x]), false, fwd);
        for (std::size_t y = 0; y < members.size(); ++y) {
          if (y == x || in_c[std::size_t(ranks[y])] || !test_bit(fwd, members[y])) continue;
          if (s.crosses_separator(bi, members[x], members[y])) continue;
          const std::int32_t a = find(ranks[x]), c = find(ranks[y]);
          if (a != c) parent[std::size_t(std::max(a, c))] = std::min(a, c);
        }
      }
    }
  StripComponents out;
  out.label.assign(std::size_t(n), -1);
  conn_vector<std::int32_t> count(std::size_t(n), 0);
  for (std::int32_t r = 0; r < n; ++r) {
    if (in_c[std::size_t(r)]) continue;
    const std::int32_t root = find(r);
    out.label[std::size_t(r)] = h.member(root);
    ++count[std::size_t(root)];
  }
  conn_vector<std::int32_t> slot(std::size_t(n), -1);
  out.comp_offsets.push_back(0);
  for (std::int32_t r = 0; r < n; ++r)
    if (count[std::size_t(r)] > 0) {
      slot[std::size_t(r)] = std::int32_t(out.comp_ids.size());
      out.comp_ids.push_back(h.member(r));
      out.comp_offsets.push_back(out.comp_offsets.back() + count[std::size_t(r)]);
    }
  out.comp_members.resize(std::size_t(out.comp_offsets.back()));
  conn_vector<std::int32_t> fill(out.comp_offsets.begin(), out.comp_offsets.end() - 1);
  for (std::int32_t r = 0; r < n; ++r) {
    if (in_c[std::size_t(r)]) continue;
    const std::int32_t k = slot[std::size_t(find(r))];
    out.comp_members[std::size_t(fill[std::size_t(k)]++)] = r;
  }
  return out;
}

VerifyReport verify_pseudoseparator(const AuxSubgraph& h, const Pseudoseparator& c, std::int32_t bound,
                                    const StripComponents& comps, BlockBackend& backend) {
  VerifyReport rep;
  rep.bound = bound;
  const Decomposition& d = h.decomposition();
  const std::int32_t n = h.size();
  std::vector<char> in_c(std::size_t(n), 0);
  for (std::int32_t id : c.vertices) {
    const std::int32_t r = h.rank(id);
    if (r >= 0) in_c[std::size_t(r)] = 1;
  }
  struct RawEdge {
    std::int32_t block, p, q, ru, rv;
  };
  std::vector<RawEdge> raw;
  core_vector<std::uint64_t> fwd;
  for (std::int32_t bi = 0; bi < d.blocks_x() * d.blocks_y(); ++bi) {
    const Block b = block_at(d, bi);
    const std::int32_t per = b.perimeter();
    for (std::int32_t p = 0; p < per; ++p) {
      const std::int32_t ru = rank_at(h, b, p);
      if (ru < 0) continue;
      backend.perimeter_reach(h.graph(), b, perimeter_vertex(b, p), false, fwd);
      for (std::int32_t q = 0; q < per; ++q) {
        if (q == p || !test_bit(fwd, q)) continue;
        const std::int32_t rv = rank_at(h, b, q);
        if (rv >= 0) raw.push_back({bi, p, q, ru, rv});
      }
    }
  }
  auto crosses_c = [&](const RawEdge& e) {
    for (const SepEdge& f : c.edges)
      if (f.block == e.block && crosses_pos(e.p, e.q, f.p, f.q)) return true;
    return false;
  };
  // components of sep(H, C) by BFS over an explicit adjacency list
  std::vector<std::vector<std::int32_t>> nbr(static_cast<std::size_t>(n));
  std::vector<char> cut(raw.size(), 0);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const RawEdge& e = raw[k];
    cut[k] = in_c[std::size_t(e.ru)] || in_c[std::size_t(e.rv)] || crosses_c(e);
    if (cut[k]) continue;
    nbr[std::size_t(e.ru)].push_back(e.rv);
    nbr[std::size_t(e.rv)].push_back(e.ru);
  }
  std::vector<std::int32_t> comp(std::size_t(n), -1);
  for (std::int32_t s = 0; s < n; ++s) {
    if (in_c[std::size_t(s)] || comp[std::size_t(s)] >= 0) continue;
    std::vector<std::int32_t> q{s};
    comp[std::size_t(s)] = s;
    for (std::size_t head = 0; head < q.size(); ++head)
      for (std::int32_t u : nbr[std::size_t(q[head])])
        if (comp[std::size_t(u)] < 0) {
          comp[std::size_t(u)] = s;
          q.push_back(u);
        }
    const std::int32_t sz = std::int32_t(q.size());
    rep.max_component = std::max(rep.max_component, sz);
    if (sz > bound && rep.pass) {
      rep.pass = false;
      rep.witness = h.member(s);
      rep.reason = "component of " + std::to_string(sz) + " vertices exceeds bound " + std::to_string(bound);
    }
  }
  for (std::int32_t r = 0; r < n && rep.pass; ++r) {
    const std::int32_t want = in_c[std::size_t(r)] ? -1 : h.member(comp[std::size_t(r)]);
    if (comps.label[std::size_t(r)] != want) {
      rep.pass = false;
      rep.witness = h.member(r);
      rep.reason = "component labels disagree with the brute-force partition";
    }
  }
  for (std::size_t k = 0; k < raw.size() && rep.pass; ++k) {
    const RawEdge& e = raw[k];
    const std::int32_t lu = comps.label[std::size_t(e.ru)], lv = comps.label[std::size_t(e.rv)];
    if (lu >= 0 && lv >= 0 && lu != lv && !cut[k]) {
      rep.pass = false;
      rep.witness = h.member(e.ru);
      rep.reason = "edge joins two components without touching or crossing C";
    }
  }
  return rep;
}

}  // namespace gridreach
