#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <vector>

#include "gridreach/engine.hpp"
#include "gridreach/oracle.hpp"
#include "support.hpp"

using namespace gridreach;

namespace {

// Aux(G)[members] built edge by edge from BFS inside each block window.
struct MaterializedAux {
  std::vector<std::vector<int>> out;

  MaterializedAux(const GridGraph& g, const Decomposition& d, const std::vector<char>& member) {
    out.resize(std::size_t(d.aux_count()));
    for (std::int32_t j = 0; j < d.blocks_y(); ++j)
      for (std::int32_t i = 0; i < d.blocks_x(); ++i) {
        const Window w = d.block(i, j).win;
        std::vector<VertexId> border;
        for (std::int32_t y = w.y0; y <= w.y1; ++y)
          for (std::int32_t x = w.x0; x <= w.x1; ++x)
            if (x == w.x0 || x == w.x1 || y == w.y0 || y == w.y1) border.push_back({x, y});
        for (VertexId u : border) {
          const int iu = d.aux_id(u);
          if (!member[std::size_t(iu)]) continue;
          const auto seen = testsupport::bfs_reach_all(g, w, u);
          for (VertexId v : border) {
            const int iv = d.aux_id(v);
            if (iv != iu && member[std::size_t(iv)] && seen[std::size_t((v.y - w.y0) * (w.x1 - w.x0 + 1) + (v.x - w.x0))])
              out[std::size_t(iu)].push_back(iv);
          }
        }
      }
  }

  std::vector<char> reach(int s) const {
    std::vector<char> seen(out.size(), 0);
    std::deque<int> q{s};
    seen[std::size_t(s)] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int u : out[std::size_t(v)])
        if (!seen[std::size_t(u)]) {
          seen[std::size_t(u)] = 1;
          q.push_back(u);
        }
    }
    return seen;
  }
};

VertexId random_vertex(std::mt19937_64& rng, std::int32_t m) {
  return {std::int32_t(rng() % std::uint64_t(m + 1)), std::int32_t(rng() % std::uint64_t(m + 1))};
}

}  // namespace

TEST_CASE("config validation and depth bound") {
  EngineConfig cfg;
  CHECK(cfg.depth_bound() == 10);
  cfg.beta = 0.5;
  CHECK(cfg.depth_bound() == 3);
  cfg = EngineConfig{};
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = EngineConfig{};
  cfg.beta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = EngineConfig{};
  cfg.max_depth = 3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.max_depth = 12;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("trivial queries") {
  GridGraph g(1);
  g.add_edge({0, 0}, Direction::east);
  EngineConfig cfg;
  CHECK(grid_reach(g, {0, 0}, {1, 0}, cfg));
  CHECK_FALSE(grid_reach(g, {1, 0}, {0, 0}, cfg));
  CHECK(grid_reach(g, {1, 1}, {1, 1}, cfg));
  CHECK_THROWS_AS(grid_reach(g, {0, 0}, {2, 0}, cfg), GridError);

  GridGraph empty(20);
  ReachEngine eng(empty, cfg);
  const Decomposition d(Window{0, 0, 20, 20}, 5);
  const AuxSubgraph h(empty, d);
  CHECK(eng.aux_reach(h, 3, 3));
  CHECK_FALSE(eng.aux_reach(h, 3, 40));
  CHECK_FALSE(eng.grid_reach({0, 0}, {20, 20}));
}

TEST_CASE("visited table and is_marked") {
  Pseudoseparator c;
  c.vertices = {2, 5, 9};
  c.edges.push_back(SepEdge{0, 1, 4, false});
  VisitedTable vt(c);
  vt.set_vertex(1, 0);  // x = 5
  CHECK(is_marked(vt, 5));
  CHECK_FALSE(is_marked(vt, 2));
  CHECK_FALSE(is_marked(vt, 7));
  CHECK_FALSE(vt.set_vertex(1, 3));
  CHECK(vt.vertex_epoch(1) == 0);

  CHECK(vt.offer(0, 7, 10, 1));
  CHECK(is_marked(vt, 7));
  CHECK_FALSE(vt.offer(0, 8, 10, 2));
  CHECK(vt.witness(0) == 7);
  CHECK(vt.offer(0, 8, 3, 2));
  CHECK(vt.witness(0) == 8);
  CHECK(vt.key(0) == 3);
  CHECK(vt.edge_epoch(0) == 2);
  CHECK_FALSE(is_marked(vt, 7));
}

TEST_CASE("component_of matches the strip labels") {
  std::mt19937_64 rng(21);
  OracleBackend backend;
  for (int it = 0; it < 60; ++it) {
    const std::int32_t m = 8 + std::int32_t(rng() % 33);
    const GridGraph g = generate_random(m, 0.3 + 0.2 * double(rng() % 4), rng());
    const Decomposition d(Window{0, 0, m, m}, Decomposition::block_side(m, 0.5));
    const AuxSubgraph h(g, d);
    const Pseudoseparator c = build_pseudoseparator(h, backend, {});
    const StripView sv(h, c);
    const StripComponents comps = components(sv, backend);
    for (std::int32_t id = 0; id < h.size(); ++id) {
      if (c.has_vertex(id)) {
        CHECK_THROWS_AS(component_of(sv, comps, id), GridError);
        continue;
      }
      const std::int32_t lab = component_of(sv, comps, id);
      CHECK(lab <= id);
      CHECK(lab == component_of(sv, comps, lab));
    }
  }

  // isolated vertex keeps its own id; an edge joins two ids
  GridGraph g(4);
  g.add_edge({0, 0}, Direction::east);
  const Decomposition d(Window{0, 0, 4, 4}, 4);
  const AuxSubgraph h(g, d);
  Pseudoseparator c;
  const StripView sv(h, c);
  const StripComponents comps = components(sv, backend);
  CHECK(component_of(sv, comps, d.aux_id({2, 4})) == d.aux_id({2, 4}));
  CHECK(component_of(sv, comps, d.aux_id({1, 0})) == d.aux_id({0, 0}));
}

TEST_CASE("aux_reach agrees with BFS on the materialized auxiliary graph") {
  std::mt19937_64 rng(22);
  int positives = 0, negatives = 0;
  for (int it = 0; it < 3000; ++it) {
    const std::int32_t m = 8 + std::int32_t(rng() % 41);
    const double p = 0.3 + 0.2 * double(rng() % 4);
    const GridGraph g = generate_random(m, p, rng());
    EngineConfig cfg;
    cfg.alpha = rng() % 2 ? 0.2 : 0.5;
    cfg.backend = rng() % 2 ? BackendKind::oracle : BackendKind::recursive;
    const Decomposition d(Window{0, 0, m, m}, Decomposition::block_side(m, cfg.alpha));
    std::vector<char> member(std::size_t(d.aux_count()), 1);
    conn_vector<std::int32_t> ids;
    const bool full = rng() % 2 == 0;
    for (std::int32_t id = 0; id < d.aux_count(); ++id) {
      if (!full && rng() % 5 == 0) member[std::size_t(id)] = 0;
      if (member[std::size_t(id)]) ids.push_back(id);
    }
    if (ids.size() < 2) continue;
    const AuxSubgraph h = full ? AuxSubgraph(g, d) : AuxSubgraph(g, d, ids);
    const MaterializedAux aux(g, d, member);
    const std::int32_t x = ids[rng() % ids.size()];
    const auto seen = aux.reach(x);
    std::vector<std::int32_t> yes, no;
    for (std::int32_t id : ids) (seen[std::size_t(id)] ? yes : no).push_back(id);

    ReachEngine eng(g, cfg);
    const std::int32_t y1 = yes[rng() % yes.size()];
    CHECK(eng.aux_reach(h, x, y1));
    ++positives;
    if (!no.empty()) {
      const std::int32_t y0 = no[rng() % no.size()];
      CHECK_FALSE(eng.aux_reach(h, x, y0));
      ++negatives;
    }
    CHECK(eng.metrics().recursion_depth <= cfg.depth_bound());
  }
  CHECK(positives > 1500);
  CHECK(negatives > 900);
}

TEST_CASE("every mark is reachable from the source") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 300; ++it) {
    const std::int32_t m = 16 + std::int32_t(rng() % 33);
    const GridGraph g = generate_random(m, 0.5 + 0.2 * double(rng() % 2), rng());
    EngineConfig cfg;
    cfg.backend = BackendKind::oracle;
    cfg.aux_floor = 16;
    const Decomposition d(Window{0, 0, m, m}, Decomposition::block_side(m, cfg.alpha));
    const AuxSubgraph h(g, d);
    const MaterializedAux aux(g, d, std::vector<char>(std::size_t(d.aux_count()), 1));
    const std::int32_t x = std::int32_t(rng() % std::uint64_t(d.aux_count()));
    const std::int32_t y = std::int32_t(rng() % std::uint64_t(d.aux_count()));
    const auto seen = aux.reach(x);
    ReachEngine eng(g, cfg);
    std::int64_t marks = 0, bad = 0;
    eng.on_mark = [&](std::int32_t, std::int32_t id) {
      ++marks;
      bad += !seen[std::size_t(id)];
    };
    CHECK(eng.aux_reach(h, x, y) == bool(seen[std::size_t(y)]));
    CHECK(marks > 0);
    CHECK(bad == 0);
  }
}

TEST_CASE("grid_reach agrees with the oracle across backends and early exit") {
  std::mt19937_64 rng(24);
  for (int it = 0; it < 1500; ++it) {
    const std::int32_t m = 1 + std::int32_t(rng() % 48);
    const GridGraph g = generate_random(m, 0.3 + 0.2 * double(rng() % 4), rng());
    VertexId s = random_vertex(rng, m), t = random_vertex(rng, m);
    if (rng() % 8 == 0) s = {0, std::int32_t(rng() % std::uint64_t(m + 1))};
    if (rng() % 8 == 0) t = {m, std::int32_t(rng() % std::uint64_t(m + 1))};
    const bool want = testsupport::bfs_reach(g, s, t);
    for (int variant = 0; variant < 3; ++variant) {
      EngineConfig cfg;
      cfg.backend = variant == 1 ? BackendKind::oracle : BackendKind::recursive;
      cfg.early_exit = variant != 2;
      Metrics mt;
      CHECK(grid_reach(g, s, t, cfg, &mt) == want);
      CHECK(mt.recursion_depth <= cfg.depth_bound());
    }
  }
}

TEST_CASE("nested GridReach with lowered floors") {
  std::mt19937_64 rng(25);
  std::int32_t deepest = 0;
  for (int it = 0; it < 16; ++it) {
    const std::int32_t m = 10 + std::int32_t(rng() % 4);
    const GridGraph g = generate_random(m, 0.5 + 0.2 * double(rng() % 3), rng());
    const VertexId s = random_vertex(rng, m), t = random_vertex(rng, m);
    EngineConfig cfg;
    cfg.grid_floor = 5;
    cfg.aux_floor = 16;
    Metrics mt;
    CHECK(grid_reach(g, s, t, cfg, &mt) == oracle_reach(g, s, t));
    deepest = std::max(deepest, mt.grid_depth);
  }
  CHECK(deepest >= 2);
}

TEST_CASE("multi-target queries in a reversed area") {
  std::mt19937_64 rng(26);
  for (int it = 0; it < 200; ++it) {
    const std::int32_t m = 20 + std::int32_t(rng() % 20);
    const GridGraph g = generate_random(m, 0.6, rng());
    ReachEngine eng(g, EngineConfig{});
    const Window area{2, 3, m - 1, m};
    const VertexId s{area.x0 + std::int32_t(rng() % std::uint64_t(area.width() + 1)),
                     area.y0 + std::int32_t(rng() % std::uint64_t(area.height() + 1))};
    core_vector<VertexId> targets;
    for (std::int32_t x = area.x0; x <= area.x1; ++x) targets.push_back({x, area.y1});
    for (std::int32_t y = area.y0; y <= area.y1; ++y) targets.push_back({area.x0, y});
    core_vector<std::uint8_t> hit;
    const bool rev = rng() % 2 == 0;
    eng.grid_reach_multi(area, rev, s, targets, hit);
    const auto seen = testsupport::bfs_reach_all(g, area, s, rev);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const VertexId v = targets[k];
      CHECK(bool(hit[k]) == bool(seen[std::size_t((v.y - area.y0) * (area.width() + 1) + (v.x - area.x0))]));
    }
  }
}

TEST_CASE("example grid fixture") {
  const GridGraph g = load_grid_file("fixtures/fig1.grid");
  REQUIRE(g.side() == 12);
  // BFS first, so the expected values below are the grid's own
  CHECK(testsupport::bfs_reach(g, {0, 1}, {12, 11}));
  CHECK_FALSE(testsupport::bfs_reach(g, {0, 1}, {0, 12}));
  CHECK(testsupport::bfs_reach(g, {0, 1}, {4, 3}));

  EngineConfig cfg;
  cfg.alpha = 0.44;
  REQUIRE(Decomposition::block_side(12, cfg.alpha) == 4);
  for (BackendKind bk : {BackendKind::oracle, BackendKind::recursive}) {
    cfg.backend = bk;
    CHECK(grid_reach(g, {0, 1}, {12, 11}, cfg));
    CHECK_FALSE(grid_reach(g, {0, 1}, {0, 12}, cfg));
    CHECK(grid_reach(g, {0, 1}, {4, 3}, cfg));
  }

  const Decomposition d(Window{0, 0, 12, 12}, 4);
  const AuxSubgraph h(g, d);
  cfg.aux_floor = 16;
  ReachEngine eng(g, cfg);
  const std::int32_t x = d.aux_id({0, 1});
  for (VertexId v : {VertexId{4, 3}, VertexId{8, 1}, VertexId{11, 4}, VertexId{10, 8}, VertexId{12, 11}}) {
    REQUIRE(d.aux_id(v) >= 0);
    CHECK(eng.aux_reach(h, x, d.aux_id(v)));
  }
  CHECK_FALSE(eng.aux_reach(h, x, d.aux_id({0, 12})));
}

TEST_CASE("workspace channels are populated") {
  const GridGraph g = generate_random(60, 0.7, 5);
  EngineConfig cfg;
  cfg.backend = BackendKind::oracle;
  Metrics mt;
  grid_reach(g, {0, 0}, {60, 60}, cfg, &mt);
  CHECK(mt.peak_core > 0);
  CHECK(mt.peak_conn > 0);
  CHECK(mt.oracle_queries > 0);
  CHECK(mt.recursion_depth >= 1);
  CHECK(mt.wall_ms >= 0);
}
