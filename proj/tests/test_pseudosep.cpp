#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "gridreach/pseudosep.hpp"

using namespace gridreach;

namespace {

struct Instance {
  GridGraph g;
  Decomposition d;
  conn_vector<std::int32_t> members;
  bool full = true;

  AuxSubgraph sub() const { return full ? AuxSubgraph(g, d) : AuxSubgraph(g, d, members); }
};

Instance random_instance(std::mt19937_64& rng, std::int32_t max_m) {
  const std::int32_t m = 4 + std::int32_t(rng() % std::uint64_t(max_m - 3));
  const double p = 0.35 + 0.15 * double(rng() % 4);
  const std::int32_t t = Decomposition::block_side(m, 0.5);
  const std::int32_t px = rng() % 3 == 0 ? std::int32_t(rng() % t) : 0, py = px == 0 ? 0 : std::int32_t(rng() % t);
  Instance in{generate_random(m, p, rng()), Decomposition(Window{0, 0, m, m}, t, px, py), {}, true};
  if (rng() % 2 == 0) {
    in.full = false;
    for (std::int32_t id = 0; id < in.d.aux_count(); ++id)
      if (rng() % 4 != 0) in.members.push_back(id);
  }
  return in;
}

// All H pairs {lo, hi} of a block, from raw row queries.
std::set<std::pair<int, int>> h_pairs(const AuxSubgraph& h, const Block& b, BlockBackend& backend) {
  std::set<std::pair<int, int>> out;
  core_vector<std::uint64_t> fwd;
  const std::int32_t per = b.perimeter();
  for (std::int32_t p = 0; p < per; ++p) {
    if (!h.contains(perimeter_vertex(b, p))) continue;
    backend.perimeter_reach(h.graph(), b, perimeter_vertex(b, p), false, fwd);
    for (std::int32_t q = 0; q < per; ++q)
      if (q != p && test_bit(fwd, q) && h.contains(perimeter_vertex(b, q))) out.insert({std::min(p, q), std::max(p, q)});
  }
  return out;
}

// Independent component sizes of an undirected CSR graph minus `removed`.
std::vector<int> component_sizes(const conn_vector<std::int32_t>& off, const conn_vector<std::int32_t>& adj,
                                 const std::vector<char>& removed) {
  const int n = int(off.size()) - 1;
  std::vector<int> seen(std::size_t(n), 0), sizes;
  for (int s = 0; s < n; ++s) {
    if (removed[std::size_t(s)] || seen[std::size_t(s)]) continue;
    std::vector<int> stack{s};
    seen[std::size_t(s)] = 1;
    int count = 0;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++count;
      for (int e = off[std::size_t(v)]; e < off[std::size_t(v) + 1]; ++e) {
        const int u = adj[std::size_t(e)];
        if (!removed[std::size_t(u)] && !seen[std::size_t(u)]) {
          seen[std::size_t(u)] = 1;
          stack.push_back(u);
        }
      }
    }
    sizes.push_back(count);
  }
  return sizes;
}

void to_csr(int n, const std::vector<std::pair<int, int>>& edges, conn_vector<std::int32_t>& off,
            conn_vector<std::int32_t>& adj) {
  std::vector<std::vector<int>> nb(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    nb[std::size_t(a)].push_back(b);
    nb[std::size_t(b)].push_back(a);
  }
  off.assign(1, 0);
  adj.clear();
  for (auto& l : nb) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    adj.insert(adj.end(), l.begin(), l.end());
    off.push_back(std::int32_t(adj.size()));
  }
}

}  // namespace

TEST_CASE("planar subset: maximal, non-crossing, contains the uncrossed pairs") {
  std::mt19937_64 rng(11);
  OracleBackend backend;
  int dropped = 0;
  for (int k = 0; k < 150; ++k) {
    const Instance in = random_instance(rng, 30);
    const AuxSubgraph h = in.sub();
    const Block b = in.d.block(std::int32_t(rng() % in.d.blocks_x()), std::int32_t(rng() % in.d.blocks_y()));
    const auto pairs = h_pairs(h, b, backend);
    std::vector<std::pair<int, int>> kept;
    for_each_mxplanar_edge(h, b, backend, [&](std::int32_t lo, std::int32_t hi, std::uint8_t dirs) {
      REQUIRE(dirs != 0);
      kept.push_back({lo, hi});
    });
    REQUIRE(std::is_sorted(kept.begin(), kept.end()));
    for (const auto& [lo, hi] : pairs) {
      bool blocked = false;
      for (const auto& [a, c] : pairs) blocked |= a < lo && lo < c && c < hi;
      const bool in_kept = std::binary_search(kept.begin(), kept.end(), std::pair{lo, hi});
      if (!blocked) REQUIRE(in_kept);
      REQUIRE(mxplanar_keeps(h, b, lo, hi, backend) == in_kept);
      if (!in_kept) {
        ++dropped;
        bool crossed = false;
        for (const auto& [a, c] : kept) crossed |= crosses_pos(a, c, lo, hi);
        REQUIRE(crossed);
      }
    }
    for (const auto& pr : kept) REQUIRE(pairs.count(pr) == 1);
    for (std::size_t x = 0; x < kept.size(); ++x)
      for (std::size_t y = x + 1; y < kept.size(); ++y)
        REQUIRE_FALSE(crosses_pos(kept[x].first, kept[x].second, kept[y].first, kept[y].second));
  }
  CHECK(dropped > 0);
}

TEST_CASE("triangulation fills each block polygon") {
  std::mt19937_64 rng(12);
  OracleBackend backend;
  for (int k = 0; k < 60; ++k) {
    const Instance in = random_instance(rng, 40);
    const AuxSubgraph h = in.sub();
    const PlanarSkeleton sk = triangulate(h, backend);
    REQUIRE(sk.vertex_count == h.size());
    REQUIRE(std::int64_t(sk.edges.size()) == sk.real_count() + sk.tri_count());
    std::vector<std::int32_t> members;
    for (std::int32_t bi = 0; bi < in.d.blocks_x() * in.d.blocks_y(); ++bi) {
      const Block b = block_at(in.d, bi);
      h.block_members(b, members);
      std::vector<SkeletonEdge> es;
      for (const SkeletonEdge& e : sk.edges)
        if (e.block == bi) es.push_back(e);
      const std::size_t kk = members.size();
      const std::size_t want = kk < 2 ? 0 : kk == 2 ? 1 : 2 * kk - 3;
      REQUIRE(es.size() == want);
      for (std::size_t x = 0; x < es.size(); ++x) {
        REQUIRE(es[x].lo < es[x].hi);
        for (std::size_t y = x + 1; y < es.size(); ++y)
          REQUIRE_FALSE(crosses_pos(es[x].lo, es[x].hi, es[y].lo, es[y].hi));
      }
    }
    // adjacency is symmetric
    for (std::int32_t v = 0; v < sk.vertex_count; ++v)
      for (std::int32_t e = sk.offsets[std::size_t(v)]; e < sk.offsets[std::size_t(v) + 1]; ++e) {
        const std::int32_t u = sk.adj[std::size_t(e)];
        REQUIRE(std::binary_search(sk.adj.begin() + sk.offsets[std::size_t(u)],
                                   sk.adj.begin() + sk.offsets[std::size_t(u) + 1], v));
      }
  }
}

TEST_CASE("planar separator: small cases") {
  conn_vector<std::int32_t> off, adj;
  to_csr(1, {}, off, adj);
  CHECK(planar_separator(off, adj, 1).empty());

  std::vector<std::pair<int, int>> path;
  for (int i = 0; i + 1 < 101; ++i) path.push_back({i, i + 1});
  to_csr(101, path, off, adj);
  const auto s = planar_separator(off, adj, 50);
  REQUIRE(s.size() == 1);
  std::vector<char> removed(101, 0);
  removed[std::size_t(s[0])] = 1;
  for (int c : component_sizes(off, adj, removed)) CHECK(c <= 50);
  CHECK_THROWS(planar_separator(off, adj, 0));
}

TEST_CASE("planar separator on grids and triangulated grids") {
  for (int k : {8, 20, 45, 90}) {
    for (bool diag : {false, true}) {
      std::vector<std::pair<int, int>> es;
      for (int y = 0; y < k; ++y)
        for (int x = 0; x < k; ++x) {
          if (x + 1 < k) es.push_back({y * k + x, y * k + x + 1});
          if (y + 1 < k) es.push_back({y * k + x, (y + 1) * k + x});
          if (diag && x + 1 < k && y + 1 < k) es.push_back({y * k + x, (y + 1) * k + x + 1});
        }
      conn_vector<std::int32_t> off, adj;
      to_csr(k * k, es, off, adj);
      const std::int32_t n = k * k;
      for (double beta : {0.2, 0.5}) {
        const std::int32_t target = component_bound(n, beta);
        const auto s = planar_separator(off, adj, target);
        std::vector<char> removed(std::size_t(n), 0);
        for (auto v : s) removed[std::size_t(v)] = 1;
        for (int c : component_sizes(off, adj, removed)) REQUIRE(c <= target);
        // O(n / sqrt(target)) vertices
        CHECK(double(s.size()) <= 8.0 * n / std::sqrt(double(target)));
      }
    }
  }
}

TEST_CASE("pseudoseparator passes the independent verifier on random H") {
  std::mt19937_64 rng(13);
  OracleBackend backend;
  double worst_ratio = 0;
  for (int k = 0; k < 1000; ++k) {
    const Instance in = random_instance(rng, 48);
    const AuxSubgraph h = in.sub();
    PseudoseparatorOptions opt;
    opt.beta = k % 3 == 0 ? 0.4 : 0.2;
    opt.verify = true;
    const Pseudoseparator c = build_pseudoseparator(h, backend, opt);
    REQUIRE(std::is_sorted(c.vertices.begin(), c.vertices.end()));
    for (const SepEdge& e : c.edges) {
      const Block b = block_at(in.d, e.block);
      REQUIRE(c.has_vertex(in.d.aux_id(perimeter_vertex(b, e.p))));
      REQUIRE(c.has_vertex(in.d.aux_id(perimeter_vertex(b, e.q))));
      REQUIRE(aux_edge_exists(in.g, b, perimeter_vertex(b, e.p), perimeter_vertex(b, e.q), backend));
    }
    for (std::int32_t id : c.source_sep) REQUIRE(c.has_vertex(id));
    const StripView sv(h, c);
    const StripComponents comps = components(sv, backend);
    const std::int32_t bound = component_bound(h.size(), opt.beta);
    const VerifyReport rep = verify_pseudoseparator(h, c, bound, comps, backend);
    INFO(rep.reason);
    REQUIRE(rep.pass);
    REQUIRE(comps.max_size() == rep.max_component);
    if (h.size() > 0) worst_ratio = std::max(worst_ratio, double(c.size()) / std::pow(double(h.size()), 1.0 - opt.beta / 2));
  }
  MESSAGE("max |C| / h^(1-beta/2) = " << worst_ratio);
  CHECK(worst_ratio <= 20.0);
}

TEST_CASE("strip edges match the brute-force definition") {
  std::mt19937_64 rng(14);
  OracleBackend backend;
  for (int k = 0; k < 80; ++k) {
    const Instance in = random_instance(rng, 30);
    const AuxSubgraph h = in.sub();
    const Pseudoseparator c = build_pseudoseparator(h, backend, PseudoseparatorOptions{});
    const StripView sv(h, c);
    const Block b = in.d.block(std::int32_t(rng() % in.d.blocks_x()), std::int32_t(rng() % in.d.blocks_y()));
    const std::int32_t bi = block_index(in.d, b), per = b.perimeter();
    for (std::int32_t p = 0; p < per; ++p)
      for (std::int32_t q = 0; q < per; ++q) {
        const VertexId u = perimeter_vertex(b, p), v = perimeter_vertex(b, q);
        bool want = p != q && h.contains(u) && h.contains(v) && !c.has_vertex(in.d.aux_id(u)) &&
                    !c.has_vertex(in.d.aux_id(v)) && aux_edge_exists(in.g, b, u, v, backend);
        for (const SepEdge& e : c.edges)
          if (e.block == bi && crosses_pos(p, q, e.p, e.q)) want = false;
        REQUIRE(sv.has_edge(b, p, q, backend) == want);
      }
  }
}

TEST_CASE("verifier rejects an empty separator and tampered labels") {
  std::mt19937_64 rng(15);
  OracleBackend backend;
  int rejected = 0;
  for (int k = 0; k < 200; ++k) {
    const Instance in = random_instance(rng, 40);
    const AuxSubgraph h = in.sub();
    Pseudoseparator c = build_pseudoseparator(h, backend, PseudoseparatorOptions{});
    if (c.vertices.empty()) continue;
    {
      StripComponents comps = components(StripView(h, c), backend);
      const std::int32_t bound = component_bound(h.size(), 0.2);
      const auto r = std::find_if(comps.label.begin(), comps.label.end(), [](std::int32_t l) { return l >= 0; });
      if (r != comps.label.end()) {
        *r += 1000000;
        CHECK_FALSE(verify_pseudoseparator(h, c, bound, comps, backend).pass);
      }
    }
    c.vertices.clear();
    c.edges.clear();
    const std::int32_t bound = component_bound(h.size(), 0.2);
    const StripView sv(h, c);
    const VerifyReport rep = verify_pseudoseparator(h, c, bound, components(sv, backend), backend);
    if (!rep.pass) {
      ++rejected;
      CHECK(rep.witness >= 0);
    }
  }
  CHECK(rejected > 0);
}
