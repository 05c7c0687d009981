#pragma once

#include <string>
#include <vector>

#include "vicinity/shortest_paths.hpp"

namespace vicinity {

// Max-degree-bounded emulation of a graph. Node v keeps id v for its first
// copy; further copies get fresh ids n, n+1, ... in order of v. Incident
// edges are taken in neighbor-id order and handed out delta at a time, so
// copy i owns edges [i*delta, (i+1)*delta). Consecutive copies are chained
// with weight-0 edges.
struct ReducedGraph {
  Graph gd;
  std::vector<std::vector<NodeId>> copies;
  std::vector<NodeId> origin;
  std::size_t delta = 0;
};

inline std::size_t copy_count(std::size_t degree, std::size_t delta) {
  return std::max<std::size_t>(1, (degree + delta - 1) / delta);
}

inline ReducedGraph reduce(const Graph& g, std::size_t delta) {
  if (delta < 1) throw ArgumentError("reduce: delta must be >= 1");
  const std::size_t n = g.node_count();
  ReducedGraph rg;
  rg.delta = delta;
  rg.copies.resize(n);
  rg.origin.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    rg.copies[v].push_back(v);
    rg.origin[v] = v;
  }
  for (NodeId v = 0; v < n; ++v) {
    for (std::size_t i = 1; i < copy_count(g.degree(v), delta); ++i) {
      rg.copies[v].push_back(static_cast<NodeId>(rg.origin.size()));
      rg.origin.push_back(v);
    }
  }

  // copy of u that owns the edge toward neighbor x
  auto owner = [&](NodeId u, NodeId x) {
    const auto adj = g.neighbors(u);
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(adj.begin(), adj.end(), x, [](const Arc& a, NodeId t) { return a.to < t; }) - adj.begin());
    return rg.copies[u][pos / delta];
  };

  std::vector<Edge> edges;
  edges.reserve(g.edge_count() + rg.origin.size());
  for (const Edge& e : g.edges()) edges.push_back({owner(e.u, e.v), owner(e.v, e.u), e.w});
  for (const auto& cs : rg.copies) {
    for (std::size_t i = 1; i < cs.size(); ++i) edges.push_back({cs[i - 1], cs[i], 0.0});
  }
  rg.gd = Graph::from_edges(rg.origin.size(), edges);
  return rg;
}

struct PreservationReport {
  Weight max_discrepancy = 0.0;
  std::size_t pairs_checked = 0;
};

// Compares d_G(u,v) with d_{G_delta}(copy0(u), copy0(v)) over all pairs.
// Unreachable pairs must be unreachable on both sides.
inline PreservationReport distance_preservation_check(const Graph& g, const ReducedGraph& rg,
                                                      std::size_t cap = kDefaultVerificationCap) {
  const auto dg = exact_oracle(g, cap);
  const auto dr = exact_oracle(rg.gd, std::max(cap, rg.gd.node_count()));
  PreservationReport rep;
  const std::size_t n = g.node_count();
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      const Weight a = dg.at(u, v);
      const Weight b = dr.at(rg.copies[u][0], rg.copies[v][0]);
      ++rep.pairs_checked;
      if (a == b) continue;
      rep.max_discrepancy = std::max(rep.max_discrepancy, (a == kInfinity || b == kInfinity) ? kInfinity : std::abs(a - b));
    }
  }
  return rep;
}

// min(1, ceil(deg(v)/delta) / alpha); a node of degree 0 still counts as one
// emulated node.
inline double degree_proportional_probability(NodeId v, const Graph& g, double alpha, double delta) {
  if (!(alpha >= 1.0)) throw ArgumentError("degree_proportional_probability: alpha must be >= 1");
  if (!(delta > 0.0)) throw ArgumentError("degree_proportional_probability: delta must be positive");
  const double copies = std::max(1.0, std::ceil(static_cast<double>(g.degree(v)) / delta));
  return std::min(1.0, copies / alpha);
}

// "orig copy0 copy1 ..." per line
inline std::string copies_sidecar(const ReducedGraph& rg) {
  std::string out;
  for (NodeId v = 0; v < rg.copies.size(); ++v) {
    out += std::to_string(v);
    for (NodeId c : rg.copies[v]) {
      out += ' ';
      out += std::to_string(c);
    }
    out += '\n';
  }
  return out;
}

}  // namespace vicinity
