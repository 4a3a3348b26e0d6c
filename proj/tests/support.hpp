#pragma once

#include <deque>
#include <vector>

#include "gridreach/grid.hpp"

namespace testsupport {

using gridreach::GridGraph;
using gridreach::VertexId;
using gridreach::Window;

// Plain BFS over a window, written against has_edge(from, to) only.
inline std::vector<char> bfs_reach_all(const GridGraph& g, Window w, VertexId s, bool reverse = false) {
  const int width = w.x1 - w.x0 + 1;
  std::vector<char> seen(std::size_t(width) * std::size_t(w.y1 - w.y0 + 1), 0);
  auto at = [&](VertexId v) -> char& { return seen[std::size_t((v.y - w.y0) * width + (v.x - w.x0))]; };
  std::deque<VertexId> q{s};
  at(s) = 1;
  const int dx[4] = {1, 0, -1, 0}, dy[4] = {0, 1, 0, -1};
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (int k = 0; k < 4; ++k) {
      VertexId u{v.x + dx[k], v.y + dy[k]};
      if (!w.contains(u) || at(u)) continue;
      const bool edge = reverse ? g.has_edge(u, v) : g.has_edge(v, u);
      if (!edge) continue;
      at(u) = 1;
      q.push_back(u);
    }
  }
  return seen;
}

inline bool bfs_reach(const GridGraph& g, Window w, VertexId s, VertexId t) {
  const auto seen = bfs_reach_all(g, w, s);
  return seen[std::size_t((t.y - w.y0) * (w.x1 - w.x0 + 1) + (t.x - w.x0))] != 0;
}

inline bool bfs_reach(const GridGraph& g, VertexId s, VertexId t) {
  return bfs_reach(g, Window{0, 0, g.side(), g.side()}, s, t);
}

}  // namespace testsupport
