#pragma once

#include <tuple>
#include <vector>

#include "vicinity/shortest_paths.hpp"

namespace vicinity {

// Per-source heaviest edge on a shortest path: among all shortest s-t paths,
// the smallest possible maximum edge weight. Labels (dist, bottleneck) are
// minimized lexicographically, so the result is the tightest w_st any
// shortest path admits. heaviest[s] = 0.
struct BottleneckRow {
  std::vector<Weight> dist;
  std::vector<Weight> heaviest;
};

inline BottleneckRow shortest_path_bottlenecks(const Graph& g, NodeId source) {
  const std::size_t n = g.node_count();
  BottleneckRow row{std::vector<Weight>(n, kInfinity), std::vector<Weight>(n, kInfinity)};
  using Item = std::tuple<Weight, Weight, NodeId>;
  std::vector<Item> heap{{0.0, 0.0, source}};
  std::vector<unsigned char> done(n, 0);
  row.dist[source] = 0.0;
  row.heaviest[source] = 0.0;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
    const auto [d, b, y] = heap.back();
    heap.pop_back();
    if (done[y] || d != row.dist[y] || b != row.heaviest[y]) continue;
    done[y] = 1;
    for (const Arc& a : g.neighbors(y)) {
      const Weight nd = d + a.w;
      const Weight nb = std::max(b, a.w);
      if (std::make_pair(nd, nb) < std::make_pair(row.dist[a.to], row.heaviest[a.to])) {
        row.dist[a.to] = nd;
        row.heaviest[a.to] = nb;
        heap.emplace_back(nd, nb, a.to);
        std::push_heap(heap.begin(), heap.end(), std::greater<>{});
      }
    }
  }
  return row;
}

// All-pairs heaviest-edge matrix, same verification cap as exact_oracle.
inline DistanceMatrix heaviest_edge_matrix(const Graph& g, std::size_t cap = kDefaultVerificationCap) {
  const std::size_t n = g.node_count();
  if (n > cap) throw ArgumentError("heaviest_edge_matrix: n exceeds the verification cap");
  DistanceMatrix m(n);
  for (NodeId s = 0; s < n; ++s) {
    const auto row = shortest_path_bottlenecks(g, s);
    for (NodeId t = 0; t < n; ++t) m.at(s, t) = row.heaviest[t];
  }
  return m;
}

// Sum of edge weights along a node sequence; nullopt if two consecutive
// nodes are not adjacent.
inline std::optional<Weight> walk_weight(const Graph& g, std::span<const NodeId> walk) {
  Weight total = 0.0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    const auto w = g.edge_weight(walk[i - 1], walk[i]);
    if (!w) return std::nullopt;
    total += *w;
  }
  return total;
}

}  // namespace vicinity
