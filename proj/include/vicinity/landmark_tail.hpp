#pragma once

#include <memory>
#include <vector>

#include "vicinity/binary_io.hpp"
#include "vicinity/landmarks.hpp"
#include "vicinity/tz_oracle.hpp"

namespace vicinity {

// x, parent(x), ..., owner through a vicinity map and its relays.
inline std::vector<NodeId> chain_to_owner(const VicinityInfo& vi, NodeId x) {
  std::vector<NodeId> out{x};
  while (out.back() != vi.node) {
    const Reach* r = vi.vicinity.find(out.back());
    if (r == nullptr) r = vi.relays.find(out.back());
    if (r == nullptr) throw std::logic_error("chain_to_owner: broken search tree");
    out.push_back(r->parent);
  }
  return out;
}

// a + b where a ends at the node b starts with
inline std::vector<NodeId> splice(std::vector<NodeId> a, const std::vector<NodeId>& b) {
  a.insert(a.end(), b.begin() + 1, b.end());
  return a;
}

inline std::vector<NodeId> reversed(std::vector<NodeId> a) {
  std::reverse(a.begin(), a.end());
  return a;
}

// Removes cycles from a walk by cutting back to the first visit of any
// repeated node. Never increases the weight.
inline std::vector<NodeId> simplify_walk(const std::vector<NodeId>& walk) {
  std::vector<NodeId> out;
  for (NodeId x : walk) {
    auto it = std::find(out.begin(), out.end(), x);
    if (it != out.end()) out.erase(it + 1, out.end());
    else out.push_back(x);
  }
  return out;
}

// One full shortest-path tree per landmark.
class FullLandmarkTables {
 public:
  FullLandmarkTables() = default;
  FullLandmarkTables(const Graph& g, const LandmarkSet& L) {
    n_ = g.node_count();
    dist_.reserve(L.size() * n_);
    parent_.reserve(L.size() * n_);
    for (NodeId l : L.members()) {
      const auto t = dijkstra(g, l);
      dist_.insert(dist_.end(), t.dist.begin(), t.dist.end());
      parent_.insert(parent_.end(), t.parent.begin(), t.parent.end());
    }
  }

  // landmark index i = position in L.members()
  Weight dist(std::size_t i, NodeId v) const noexcept { return dist_[i * n_ + v]; }
  NodeId parent(std::size_t i, NodeId v) const noexcept { return parent_[i * n_ + v]; }
  std::span<const Weight> row(std::size_t i) const noexcept { return {dist_.data() + i * n_, n_}; }

  // v, ..., landmark i
  std::vector<NodeId> chain(std::size_t i, NodeId v) const {
    std::vector<NodeId> out{v};
    while (parent(i, out.back()) != out.back()) out.push_back(parent(i, out.back()));
    return out;
  }

  std::size_t entries() const noexcept { return dist_.size(); }

  void write(ByteWriter& w) const {
    w.u64(n_);
    w.weights(dist_);
    w.ids(parent_);
  }
  static FullLandmarkTables read(ByteReader& r) {
    FullLandmarkTables t;
    t.n_ = r.u64();
    t.dist_ = r.weights();
    t.parent_ = r.ids();
    return t;
  }
  friend bool operator==(const FullLandmarkTables&, const FullLandmarkTables&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Weight> dist_;
  std::vector<NodeId> parent_;
};

// Thorup-Zwick oracle on the complete landmark graph G′ (weights d_G between
// landmarks), plus the path support needed to expand its answers into walks
// of G: for every G′ node c, parent pointers on c's shortest-path tree along
// the paths from each landmark a with c ∈ bunch′(a) or c = p′_i(a).
class LandmarkSubOracle {
 public:
  LandmarkSubOracle() = default;

  LandmarkSubOracle(const Graph& g, const LandmarkSet& L, std::size_t k, std::uint64_t seed) {
    const std::size_t m = L.size();
    const auto& lm = L.members();
    members_ = lm;
    std::vector<DistanceTable> rows;
    rows.reserve(m);
    for (NodeId l : lm) rows.push_back(dijkstra(g, l));
    sub_ = TZOracle::build_metric(m, [&](NodeId a, NodeId b) { return rows[a].dist[lm[b]]; }, k, seed);

    std::vector<std::vector<NodeId>> related(m);
    for (NodeId a = 0; a < m; ++a) {
      for (const auto& e : sub_.bunch(a)) related[e.node].push_back(a);
      for (std::size_t i = 1; i < k; ++i) related[sub_.witness(a, i)].push_back(a);
    }
    leg_offsets_.assign(m + 1, 0);
    for (NodeId c = 0; c < m; ++c) {
      std::vector<Reach> legs;
      auto& rel = related[c];
      std::sort(rel.begin(), rel.end());
      rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
      for (NodeId a : rel) {
        for (NodeId x = lm[a]; x != lm[c]; x = rows[c].parent[x]) legs.push_back({x, rows[c].dist[x], rows[c].parent[x], kNoNode});
      }
      std::sort(legs.begin(), legs.end(), [](const Reach& p, const Reach& q) { return p.node < q.node; });
      legs.erase(std::unique(legs.begin(), legs.end(), [](const Reach& p, const Reach& q) { return p.node == q.node; }),
                 legs.end());
      for (const Reach& r : legs) legs_.push_back({r.node, r.parent});
      leg_offsets_[c + 1] = legs_.size();
    }
  }

  const TZOracle& sub() const noexcept { return sub_; }
  std::size_t landmark_count() const noexcept { return members_.size(); }

  // tz estimate between landmark indices
  TZOracle::QueryTrace query(std::size_t a, std::size_t b) const {
    return sub_.query(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }

  // Walk in G realizing query(a, b): L[a] → L[w] → L[b].
  std::vector<NodeId> expand(std::size_t a, std::size_t b) const {
    if (a == b) return {members_[a]};
    const auto t = query(a, b);
    const NodeId w = t.final_witness;
    return splice(leg(w, a), reversed(leg(w, b)));
  }

  // L[a], ..., L[c] along c's shortest-path tree
  std::vector<NodeId> leg(std::size_t c, std::size_t a) const {
    std::vector<NodeId> out{members_[a]};
    const NodeId target = members_[c];
    const auto begin = legs_.begin() + static_cast<std::ptrdiff_t>(leg_offsets_[c]);
    const auto end = legs_.begin() + static_cast<std::ptrdiff_t>(leg_offsets_[c + 1]);
    while (out.back() != target) {
      auto it = std::lower_bound(begin, end, out.back(), [](const LegEntry& e, NodeId x) { return e.node < x; });
      if (it == end || it->node != out.back()) throw std::logic_error("LandmarkSubOracle: missing leg entry");
      out.push_back(it->parent);
    }
    return out;
  }

  std::size_t distance_entries() const noexcept { return sub_.size_entries(); }
  std::size_t leg_entries() const noexcept { return legs_.size(); }

  void write(ByteWriter& w) const {
    w.ids(members_);
    sub_.write_body(w);
    w.seq(leg_offsets_, [&](std::size_t x) { w.u64(x); });
    w.seq(legs_, [&](const LegEntry& e) {
      w.u32(e.node);
      w.u32(e.parent);
    });
  }
  static LandmarkSubOracle read(ByteReader& r) {
    LandmarkSubOracle o;
    o.members_ = r.ids();
    o.sub_ = TZOracle::read_body(r);
    o.leg_offsets_ = r.seq<std::size_t>([&] { return static_cast<std::size_t>(r.u64()); });
    o.legs_ = r.seq<LegEntry>([&] {
      LegEntry e{};
      e.node = r.u32();
      e.parent = r.u32();
      return e;
    });
    return o;
  }
  friend bool operator==(const LandmarkSubOracle& a, const LandmarkSubOracle& b) {
    return a.members_ == b.members_ && a.sub_ == b.sub_ && a.leg_offsets_ == b.leg_offsets_ && a.legs_ == b.legs_;
  }

 private:
  struct LegEntry {
    NodeId node;
    NodeId parent;
    friend bool operator==(const LegEntry&, const LegEntry&) = default;
  };

  std::vector<NodeId> members_;
  TZOracle sub_;
  std::vector<std::size_t> leg_offsets_;
  std::vector<LegEntry> legs_;
};

}  // namespace vicinity

namespace vicinity::detail {

inline void write_map(ByteWriter& w, const DistanceMap& m) {
  w.seq(m.entries(), [&](const Reach& r) {
    w.u32(r.node);
    w.f64(r.dist);
    w.u32(r.parent);
    w.u32(r.first_hop);
  });
}

inline DistanceMap read_map(ByteReader& r) {
  return DistanceMap(r.seq<Reach>([&] {
    Reach x{};
    x.node = r.u32();
    x.dist = r.f64();
    x.parent = r.u32();
    x.first_hop = r.u32();
    return x;
  }));
}

inline void write_graph(ByteWriter& w, const Graph& g) {
  w.u64(g.node_count());
  w.seq(g.edges(), [&](const Edge& e) {
    w.u32(e.u);
    w.u32(e.v);
    w.f64(e.w);
  });
}

inline Graph read_graph(ByteReader& r) {
  const std::size_t n = r.u64();
  const auto edges = r.seq<Edge>([&] {
    Edge e{};
    e.u = r.u32();
    e.v = r.u32();
    e.w = r.f64();
    return e;
  });
  try {
    return Graph::from_edges(n, edges);
  } catch (const ArgumentError& e) {
    throw ParseError(0, std::string("corrupt graph in container: ") + e.what());
  }
}

inline void write_landmarks(ByteWriter& w, const LandmarkSet& L) {
  w.u8(static_cast<std::uint8_t>(L.mode()));
  w.u64(L.seed());
  w.ids(L.members());
}

inline LandmarkSet read_landmarks(ByteReader& r, std::size_t n) {
  const auto mode = static_cast<SamplingMode>(r.u8());
  const std::uint64_t seed = r.u64();
  auto members = r.ids();
  for (NodeId v : members)
    if (v >= n) throw ParseError(0, "landmark id out of range in container");
  return LandmarkSet(n, std::move(members), mode, seed);
}

inline void write_assignment(ByteWriter& w, const LandmarkAssignment& a) {
  w.ids(a.landmark);
  w.weights(a.radius);
  w.ids(a.parent);
}

inline LandmarkAssignment read_assignment(ByteReader& r) {
  LandmarkAssignment a;
  a.landmark = r.ids();
  a.radius = r.weights();
  a.parent = r.ids();
  return a;
}

inline void write_neighborhood(ByteWriter& w, const Neighborhood& nb) {
  w.u32(nb.ball.node);
  w.u32(nb.ball.landmark);
  w.f64(nb.ball.radius);
  write_map(w, nb.ball.ball);
  write_map(w, nb.vicinity.vicinity);
  write_map(w, nb.vicinity.relays);
}

inline Neighborhood read_neighborhood(ByteReader& r) {
  Neighborhood nb;
  nb.ball.node = r.u32();
  nb.ball.landmark = r.u32();
  nb.ball.radius = r.f64();
  nb.ball.ball = read_map(r);
  nb.vicinity.node = nb.ball.node;
  nb.vicinity.vicinity = read_map(r);
  nb.vicinity.relays = read_map(r);
  return nb;
}

}  // namespace vicinity::detail
