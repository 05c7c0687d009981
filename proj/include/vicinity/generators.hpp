#pragma once

#include <cmath>
#include <numbers>
#include <unordered_set>
#include <vector>

#include "vicinity/graph.hpp"
#include "vicinity/rng.hpp"

namespace vicinity {

// G(n, m): m distinct uniform-random unit-weight edges.
inline Graph gen_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > pairs) {
    throw ArgumentError("gen_gnm: m=" + std::to_string(m) + " exceeds n(n-1)/2=" + std::to_string(pairs));
  }
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m);
  // pair index p enumerates (u, v), u < v, row-major over u
  auto decode = [n](std::uint64_t p) {
    std::uint64_t u = 0;
    std::uint64_t row = n - 1;
    while (p >= row) {
      p -= row;
      ++u;
      --row;
    }
    return Edge{static_cast<NodeId>(u), static_cast<NodeId>(u + 1 + p), 1.0};
  };
  if (m * 2 > pairs) {
    // dense: partial Fisher-Yates over all pair indices
    std::vector<std::uint64_t> idx(pairs);
    for (std::uint64_t i = 0; i < pairs; ++i) idx[i] = i;
    for (std::uint64_t i = 0; i < m; ++i) {
      const std::uint64_t j = i + rng.below(pairs - i);
      std::swap(idx[i], idx[j]);
      edges.push_back(decode(idx[i]));
    }
  } else {
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(m * 2);
    while (edges.size() < m) {
      const auto u = static_cast<NodeId>(rng.below(n));
      const auto v = static_cast<NodeId>(rng.below(n));
      if (u == v) continue;
      const std::uint64_t key = static_cast<std::uint64_t>(std::min(u, v)) * n + std::max(u, v);
      if (taken.insert(key).second) edges.push_back({std::min(u, v), std::max(u, v), 1.0});
    }
  }
  return Graph::from_edges(n, edges);
}

// Random geometric graph in the unit square. Pairs closer than
// r = sqrt(target / (pi (n - 1))) are joined by an edge weighted with their
// Euclidean distance. Connectivity is not enforced; check Graph::connected().
inline Graph gen_geometric(std::size_t n, double target_avg_degree, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("gen_geometric: need n >= 2");
  if (!(target_avg_degree > 0.0)) throw ArgumentError("gen_geometric: target degree must be positive");
  SplitMix64 rng(seed);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = rng.uniform01();
    ys[i] = rng.uniform01();
  }
  const double r = std::sqrt(target_avg_degree / (std::numbers::pi * static_cast<double>(n - 1)));

  // bucket grid with cell side >= r, so candidates live in the 3x3 block
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::floor(1.0 / r)));
  auto cell_of = [cells](double c) {
    return std::min(cells - 1, static_cast<std::size_t>(c * static_cast<double>(cells)));
  };
  std::vector<std::vector<NodeId>> grid(cells * cells);
  for (std::size_t i = 0; i < n; ++i) grid[cell_of(xs[i]) * cells + cell_of(ys[i])].push_back(static_cast<NodeId>(i));

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cx = cell_of(xs[i]);
    const std::size_t cy = cell_of(ys[i]);
    for (std::size_t gx = cx == 0 ? 0 : cx - 1; gx <= std::min(cells - 1, cx + 1); ++gx) {
      for (std::size_t gy = cy == 0 ? 0 : cy - 1; gy <= std::min(cells - 1, cy + 1); ++gy) {
        for (NodeId j : grid[gx * cells + gy]) {
          if (j <= i) continue;
          const double dx = xs[i] - xs[j];
          const double dy = ys[i] - ys[j];
          const double dist = std::sqrt(dx * dx + dy * dy);
          if (dist <= r) edges.push_back({static_cast<NodeId>(i), j, dist});
        }
      }
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace vicinity
