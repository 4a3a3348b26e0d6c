#include <doctest.h>

#include <random>

#include "gridreach/oracle.hpp"
#include "support.hpp"

using namespace gridreach;

TEST_CASE("oracle_reach basics") {
  GridGraph g(2);
  CHECK(oracle_reach(g, {1, 1}, {1, 1}));
  CHECK_FALSE(oracle_reach(g, {0, 0}, {1, 0}));
  g.add_edge({0, 0}, Direction::east);
  CHECK(oracle_reach(g, {0, 0}, {1, 0}));
  CHECK_FALSE(oracle_reach(g, {1, 0}, {0, 0}));
  CHECK_THROWS_AS(oracle_reach(g, {0, 0}, {3, 0}), GridError);
}

TEST_CASE("oracle_reach agrees with BFS on 10000 random instances") {
  std::mt19937_64 rng(2024);
  const double ps[] = {0.3, 0.5, 0.7, 0.9};
  int positives = 0;
  for (int k = 0; k < 10000; ++k) {
    const std::int32_t m = 1 + std::int32_t(rng() % 40);
    const GridGraph g = generate_random(m, ps[k % 4], rng());
    const VertexId s{std::int32_t(rng() % (m + 1)), std::int32_t(rng() % (m + 1))};
    const VertexId t{std::int32_t(rng() % (m + 1)), std::int32_t(rng() % (m + 1))};
    const bool want = testsupport::bfs_reach(g, s, t);
    positives += want;
    REQUIRE(oracle_reach(g, s, t) == want);
  }
  CHECK(positives > 1000);
  CHECK(positives < 9000);
}

TEST_CASE("oracle_reach is transitive") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 2000; ++k) {
    const std::int32_t m = 2 + std::int32_t(rng() % 12);
    const GridGraph g = generate_random(m, 0.6, rng());
    auto pick = [&] { return VertexId{std::int32_t(rng() % (m + 1)), std::int32_t(rng() % (m + 1))}; };
    const VertexId a = pick(), b = pick(), c = pick();
    if (oracle_reach(g, a, b) && oracle_reach(g, b, c)) REQUIRE(oracle_reach(g, a, c));
  }
}

TEST_CASE("flood fill equals BFS reach sets, forward and reversed, on windows") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 1500; ++k) {
    const std::int32_t m = 1 + std::int32_t(rng() % 300);
    const GridGraph g = generate_random(m, 0.3 + 0.2 * double(k % 4), rng());
    auto coord = [&](std::int32_t lo, std::int32_t hi) { return lo + std::int32_t(rng() % (hi - lo + 1)); };
    const std::int32_t x0 = coord(0, m), x1 = coord(x0, m), y0 = coord(0, m), y1 = coord(y0, m);
    const Window w{x0, y0, x1, y1};
    const bool rev = k % 2 == 1;
    const VertexId s{coord(x0, x1), coord(y0, y1)};
    FloodFill ff(GridView(g, w, rev));
    ff.seed(s);
    ff.run();
    const auto want = testsupport::bfs_reach_all(g, w, s, rev);
    std::int64_t cnt = 0;
    for (std::int32_t y = y0; y <= y1; ++y)
      for (std::int32_t x = x0; x <= x1; ++x) {
        const bool r = want[std::size_t((y - y0) * (x1 - x0 + 1) + (x - x0))] != 0;
        cnt += r;
        REQUIRE(ff.reached({x, y}) == r);
      }
    REQUIRE(ff.count() == cnt);
  }
}

TEST_CASE("oracle charges its working set to the core channel") {
  Workspace ws;
  {
    WorkspaceScope scope(&ws);
    const GridGraph g = generate_random(63, 1.0, 1);
    CHECK(oracle_reach(g, {0, 0}, {63, 63}));
  }
  CHECK(ws.live(Channel::core) == 0);
  CHECK(ws.peak(Channel::core) >= 64);  // visited bits for 4096 vertices
  CHECK(ws.peak(Channel::connectivity) == 0);
}
