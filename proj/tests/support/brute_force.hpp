#pragma once

#include <vector>

#include "vicinity/graph.hpp"
#include "vicinity/shortest_paths.hpp"

namespace vicinity::testing {

// Floyd-Warshall over the edge list; independent of the Dijkstra code paths.
inline DistanceMatrix floyd_warshall(const Graph& g) {
  const std::size_t n = g.node_count();
  DistanceMatrix d(n);
  for (NodeId v = 0; v < n; ++v) d.at(v, v) = 0.0;
  for (const Edge& e : g.edges()) {
    d.at(e.u, e.v) = std::min(d.at(e.u, e.v), e.w);
    d.at(e.v, e.u) = std::min(d.at(e.v, e.u), e.w);
  }
  for (NodeId k = 0; k < n; ++k)
    for (NodeId i = 0; i < n; ++i) {
      if (d.at(i, k) == kInfinity) continue;
      for (NodeId j = 0; j < n; ++j) {
        const Weight via = d.at(i, k) + d.at(k, j);
        if (via < d.at(i, j)) d.at(i, j) = via;
      }
    }
  return d;
}

// Shortest simple-path length by exhaustive enumeration; tiny graphs only.
inline Weight enumerate_shortest(const Graph& g, NodeId s, NodeId t) {
  std::vector<unsigned char> on_path(g.node_count(), 0);
  Weight best = kInfinity;
  auto dfs = [&](auto&& self, NodeId x, Weight len) -> void {
    if (x == t) {
      best = std::min(best, len);
      return;
    }
    on_path[x] = 1;
    for (const Arc& a : g.neighbors(x))
      if (!on_path[a.to]) self(self, a.to, len + a.w);
    on_path[x] = 0;
  };
  dfs(dfs, s, 0.0);
  return best;
}

// Heaviest edge on the lightest-bottleneck shortest path, by enumeration of
// simple paths; tiny graphs only.
inline Weight enumerate_bottleneck(const Graph& g, NodeId s, NodeId t, Weight d) {
  std::vector<unsigned char> on_path(g.node_count(), 0);
  Weight best = kInfinity;
  auto dfs = [&](auto&& self, NodeId x, Weight len, Weight heavy) -> void {
    if (x == t) {
      if (approx_eq(len, d)) best = std::min(best, heavy);
      return;
    }
    on_path[x] = 1;
    for (const Arc& a : g.neighbors(x))
      if (!on_path[a.to]) self(self, a.to, len + a.w, std::max(heavy, a.w));
    on_path[x] = 0;
  };
  dfs(dfs, s, 0.0, 0.0);
  return best;
}

inline Graph fix_p5() {
  const Edge e[] = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}};
  return Graph::from_edges(5, e);
}

// u=0, l1=1, m=2, v=3, l2=4
namespace w5 {
inline constexpr NodeId u = 0, l1 = 1, m = 2, v = 3, l2 = 4;
}

inline Graph fix_w5() {
  const Edge e[] = {{w5::u, w5::l1, 1}, {w5::u, w5::m, 1}, {w5::m, w5::v, 1}, {w5::v, w5::l2, 1}};
  return Graph::from_edges(5, e);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.push_back({0, i, 1.0});
  return Graph::from_edges(leaves + 1, e);
}

}  // namespace vicinity::testing
