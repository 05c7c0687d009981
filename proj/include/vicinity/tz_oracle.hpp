#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "vicinity/binary_io.hpp"
#include "vicinity/rng.hpp"
#include "vicinity/shortest_paths.hpp"

namespace vicinity {

// Thorup-Zwick (2k-1)-stretch oracle. Level sets A_0 = V ⊇ A_1 ⊇ ... ⊇
// A_{k-1} ≠ ∅, A_k = ∅. For every node: witnesses p_i(v) (nearest A_i member,
// lowest id on ties) with their distances, and the bunch
//   bunch(v) = ∪_i { w ∈ A_i \ A_{i+1} : d(v,w) < d(v, A_{i+1}) }
// stored CSR-style, sorted by w.
//
// Built either on a graph (bunches from pruned cluster searches, with next
// hops for table-driven forwarding) or on a dense metric (brute force; used
// for the landmark graph G′).
class TZOracle {
 public:
  struct QueryTrace {
    Weight estimate = 0.0;
    NodeId final_witness = kNoNode;
    std::size_t level_used = 0;
    // true when the witness is p_level(u) and lies in bunch(v); false when the
    // roles were swapped an odd number of times
    bool witness_of_first = true;
    std::size_t probes = 0;
  };

  struct BunchEntry {
    NodeId node;
    Weight dist;
    NodeId next_hop;  // toward node along its cluster tree; kNoNode on metric builds
  };

  std::size_t node_count() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::uint64_t seed() const noexcept { return seed_; }

  // highest i with v ∈ A_i
  std::size_t level_of(NodeId v) const noexcept { return level_[v]; }
  bool in_level(NodeId v, std::size_t i) const noexcept { return level_[v] >= i; }

  NodeId witness(NodeId v, std::size_t i) const noexcept { return witness_[i * n_ + v]; }
  Weight witness_dist(NodeId v, std::size_t i) const noexcept { return witness_dist_[i * n_ + v]; }
  // next hop from v toward witness(v, i); graph builds only
  NodeId witness_next_hop(NodeId v, std::size_t i) const noexcept { return witness_parent_[i * n_ + v]; }

  std::span<const BunchEntry> bunch(NodeId v) const noexcept {
    return {bunch_.data() + bunch_offsets_[v], bunch_offsets_[v + 1] - bunch_offsets_[v]};
  }
  const BunchEntry* bunch_find(NodeId v, NodeId w) const noexcept {
    const auto b = bunch(v);
    auto it = std::lower_bound(b.begin(), b.end(), w, [](const BunchEntry& e, NodeId x) { return e.node < x; });
    return it != b.end() && it->node == w ? &*it : nullptr;
  }

  std::size_t bunch_entries() const noexcept { return bunch_.size(); }
  // bunch entries plus one witness per node for levels 1..k-1
  std::size_t size_entries() const noexcept { return bunch_.size() + n_ * (k_ - 1); }

  QueryTrace query(NodeId u, NodeId v) const {
    QueryTrace t;
    if (u == v) {
      t.final_witness = u;
      return t;
    }
    NodeId a = u, b = v;
    NodeId w = u;
    std::size_t i = 0;
    bool first = true;
    const BunchEntry* hit = nullptr;
    for (;;) {
      ++t.probes;
      hit = bunch_find(b, w);
      if (hit != nullptr) break;
      ++i;
      std::swap(a, b);
      first = !first;
      w = witness(a, i);
    }
    t.estimate = witness_dist(a, i) + hit->dist;
    t.final_witness = w;
    t.level_used = i;
    t.witness_of_first = first;
    return t;
  }

  static constexpr std::size_t kMaxLevelDraws = 64;

  // Graph build. `first_level`, when given, replaces the sampled A_1; higher
  // levels are then sampled with probability |A_1|^{-1/(k-1)}.
  static TZOracle build(const Graph& g, std::size_t k, std::uint64_t seed,
                        const std::vector<NodeId>* first_level = nullptr) {
    if (k < 1) throw ArgumentError("tz_build: k must be >= 1");
    if (!g.connected()) throw BuildError("tz_build: graph is disconnected");
    if (g.node_count() == 0) throw ArgumentError("tz_build: empty graph");
    TZOracle o;
    o.n_ = g.node_count();
    o.k_ = k;
    o.seed_ = seed;
    o.draw_levels(seed, first_level);

    // witnesses from one nearest-source sweep per level
    const std::size_t n = o.n_;
    o.witness_.assign(k * n, kNoNode);
    o.witness_dist_.assign(k * n, kInfinity);
    o.witness_parent_.assign(k * n, kNoNode);
    for (NodeId v = 0; v < n; ++v) {
      o.witness_[v] = v;
      o.witness_dist_[v] = 0.0;
      o.witness_parent_[v] = v;
    }
    std::vector<std::vector<Weight>> bound(k + 1);
    bound[0].assign(n, 0.0);
    bound[k].assign(n, kInfinity);
    for (std::size_t i = 1; i < k; ++i) {
      const auto members = o.level_members(i);
      const auto f = nearest_source_forest(g, members);
      std::copy(f.root.begin(), f.root.end(), o.witness_.begin() + static_cast<std::ptrdiff_t>(i * n));
      std::copy(f.dist.begin(), f.dist.end(), o.witness_dist_.begin() + static_cast<std::ptrdiff_t>(i * n));
      std::copy(f.parent.begin(), f.parent.end(), o.witness_parent_.begin() + static_cast<std::ptrdiff_t>(i * n));
      bound[i] = f.dist;
    }

    // clusters: C(w) = {v : d(w,v) < d(v, A_{i+1})} for w ∈ A_i \ A_{i+1}
    std::vector<std::vector<BunchEntry>> per_node(n);
    std::vector<Weight> dist(n, kInfinity);
    std::vector<NodeId> parent(n, kNoNode);
    std::vector<unsigned char> done(n, 0);
    std::vector<NodeId> touched;
    std::vector<std::pair<Weight, NodeId>> heap;
    for (NodeId w = 0; w < n; ++w) {
      const std::vector<Weight>& limit = bound[o.level_[w] + 1];
      if (!(0.0 < limit[w])) continue;
      dist[w] = 0.0;
      parent[w] = w;
      touched.push_back(w);
      heap.assign(1, {0.0, w});
      while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
        const auto [d, x] = heap.back();
        heap.pop_back();
        if (done[x] || d != dist[x]) continue;
        done[x] = 1;
        per_node[x].push_back({w, d, parent[x]});
        for (const Arc& a : g.neighbors(x)) {
          const Weight nd = d + a.w;
          if (nd < dist[a.to] && nd < limit[a.to]) {
            if (dist[a.to] == kInfinity) touched.push_back(a.to);
            dist[a.to] = nd;
            parent[a.to] = x;
            heap.emplace_back(nd, a.to);
            std::push_heap(heap.begin(), heap.end(), std::greater<>{});
          }
        }
      }
      for (NodeId x : touched) {
        dist[x] = kInfinity;
        parent[x] = kNoNode;
        done[x] = 0;
      }
      touched.clear();
    }
    o.pack_bunches(per_node);
    return o;
  }

  // Metric build over m points; dist(a, b) is the distance as seen from a.
  template <class DistFn>
  static TZOracle build_metric(std::size_t m, const DistFn& dist, std::size_t k, std::uint64_t seed) {
    if (k < 1) throw ArgumentError("tz_build_metric: k must be >= 1");
    if (m == 0) throw ArgumentError("tz_build_metric: empty point set");
    TZOracle o;
    o.n_ = m;
    o.k_ = k;
    o.seed_ = seed;
    o.draw_levels(seed, nullptr);
    o.witness_.assign(k * m, kNoNode);
    o.witness_dist_.assign(k * m, kInfinity);
    o.witness_parent_.assign(k * m, kNoNode);
    for (NodeId a = 0; a < m; ++a) {
      for (std::size_t i = 0; i < k; ++i) {
        NodeId best = kNoNode;
        Weight bd = kInfinity;
        for (NodeId b = 0; b < m; ++b) {
          if (!o.in_level(b, i)) continue;
          const Weight d = a == b ? 0.0 : dist(a, b);
          if (best == kNoNode || d < bd) {
            best = b;
            bd = d;
          }
        }
        o.witness_[i * m + a] = best;
        o.witness_dist_[i * m + a] = bd;
      }
    }
    std::vector<std::vector<BunchEntry>> per_node(m);
    for (NodeId a = 0; a < m; ++a) {
      for (NodeId b = 0; b < m; ++b) {
        const std::size_t j = o.level_[b];
        const Weight limit = j + 1 < k ? o.witness_dist_[(j + 1) * m + a] : kInfinity;
        const Weight d = a == b ? 0.0 : dist(a, b);
        if (d < limit) per_node[a].push_back({b, d, kNoNode});
      }
    }
    o.pack_bunches(per_node);
    return o;
  }

  friend bool operator==(const TZOracle& a, const TZOracle& b) {
    auto same_bunches = [&] {
      if (a.bunch_.size() != b.bunch_.size()) return false;
      for (std::size_t i = 0; i < a.bunch_.size(); ++i) {
        const auto& x = a.bunch_[i];
        const auto& y = b.bunch_[i];
        if (x.node != y.node || x.dist != y.dist || x.next_hop != y.next_hop) return false;
      }
      return true;
    };
    return a.n_ == b.n_ && a.k_ == b.k_ && a.seed_ == b.seed_ && a.level_ == b.level_ && a.witness_ == b.witness_ &&
           a.witness_dist_ == b.witness_dist_ && a.witness_parent_ == b.witness_parent_ &&
           a.bunch_offsets_ == b.bunch_offsets_ && same_bunches();
  }

  std::vector<NodeId> level_members(std::size_t i) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n_; ++v)
      if (level_[v] >= i) out.push_back(v);
    return out;
  }

  void write_body(ByteWriter& w) const {
    w.u64(n_);
    w.u64(k_);
    w.u64(seed_);
    w.seq(level_, [&](std::uint8_t x) { w.u8(x); });
    w.ids(witness_);
    w.weights(witness_dist_);
    w.ids(witness_parent_);
    w.seq(bunch_offsets_, [&](std::size_t x) { w.u64(x); });
    w.seq(bunch_, [&](const BunchEntry& e) {
      w.u32(e.node);
      w.f64(e.dist);
      w.u32(e.next_hop);
    });
  }

  static TZOracle read_body(ByteReader& r) {
    TZOracle o;
    o.n_ = r.u64();
    o.k_ = r.u64();
    o.seed_ = r.u64();
    o.level_ = r.seq<std::uint8_t>([&] { return r.u8(); });
    o.witness_ = r.ids();
    o.witness_dist_ = r.weights();
    o.witness_parent_ = r.ids();
    o.bunch_offsets_ = r.seq<std::size_t>([&] { return static_cast<std::size_t>(r.u64()); });
    o.bunch_ = r.seq<BunchEntry>([&] {
      BunchEntry e{};
      e.node = r.u32();
      e.dist = r.f64();
      e.next_hop = r.u32();
      return e;
    });
    if (o.level_.size() != o.n_ || o.witness_.size() != o.n_ * o.k_ || o.bunch_offsets_.size() != o.n_ + 1 ||
        o.bunch_offsets_.back() != o.bunch_.size()) {
      throw ParseError(0, "inconsistent TZ oracle body");
    }
    return o;
  }

  // raw access
  struct Raw {
    std::size_t n = 0, k = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> level;
    std::vector<NodeId> witness;
    std::vector<Weight> witness_dist;
    std::vector<NodeId> witness_parent;
    std::vector<std::size_t> bunch_offsets;
    std::vector<BunchEntry> bunch;
  };
  Raw raw() const { return {n_, k_, seed_, level_, witness_, witness_dist_, witness_parent_, bunch_offsets_, bunch_}; }
  static TZOracle from_raw(Raw r) {
    TZOracle o;
    o.n_ = r.n;
    o.k_ = r.k;
    o.seed_ = r.seed;
    o.level_ = std::move(r.level);
    o.witness_ = std::move(r.witness);
    o.witness_dist_ = std::move(r.witness_dist);
    o.witness_parent_ = std::move(r.witness_parent);
    o.bunch_offsets_ = std::move(r.bunch_offsets);
    o.bunch_ = std::move(r.bunch);
    return o;
  }

 private:
  void draw_levels(std::uint64_t seed, const std::vector<NodeId>* first_level) {
    const std::size_t n = n_;
    for (std::size_t attempt = 0; attempt < kMaxLevelDraws; ++attempt) {
      SplitMix64 rng(derive_seed(attempt == 0 ? seed : derive_seed(seed, attempt), name_tag("tz-levels")));
      level_.assign(n, 0);
      std::size_t start = 1;
      double p = std::pow(static_cast<double>(n), -1.0 / static_cast<double>(k_));
      if (first_level != nullptr && k_ >= 2) {
        for (NodeId v : *first_level) level_.at(v) = 1;
        start = 2;
        const double a1 = static_cast<double>(first_level->size());
        p = k_ > 2 ? std::pow(a1, -1.0 / static_cast<double>(k_ - 1)) : 0.0;
      }
      std::size_t top = 0;
      for (std::size_t i = start; i < k_; ++i) {
        for (NodeId v = 0; v < n; ++v) {
          if (level_[v] == i - 1 && rng.bernoulli(p)) level_[v] = static_cast<std::uint8_t>(i);
        }
      }
      for (NodeId v = 0; v < n; ++v) top += level_[v] == k_ - 1 ? 1 : 0;
      if (top > 0) return;
      if (first_level != nullptr && start == 2 && k_ == 2) break;
    }
    throw BuildError("tz_build: top level A_{k-1} came up empty on every draw");
  }

  void pack_bunches(std::vector<std::vector<BunchEntry>>& per_node) {
    bunch_offsets_.assign(n_ + 1, 0);
    for (NodeId v = 0; v < n_; ++v) bunch_offsets_[v + 1] = bunch_offsets_[v] + per_node[v].size();
    bunch_.clear();
    bunch_.reserve(bunch_offsets_[n_]);
    for (auto& list : per_node) {
      std::sort(list.begin(), list.end(), [](const BunchEntry& x, const BunchEntry& y) { return x.node < y.node; });
      bunch_.insert(bunch_.end(), list.begin(), list.end());
      std::vector<BunchEntry>().swap(list);
    }
  }

  std::size_t n_ = 0;
  std::size_t k_ = 1;
  std::uint64_t seed_ = 0;
  std::vector<std::uint8_t> level_;
  std::vector<NodeId> witness_;
  std::vector<Weight> witness_dist_;
  std::vector<NodeId> witness_parent_;
  std::vector<std::size_t> bunch_offsets_;
  std::vector<BunchEntry> bunch_;
};

inline std::string serialize(const TZOracle& o) {
  ByteWriter w;
  w.header({ContainerKind::tz, 0, o.node_count(), static_cast<std::uint32_t>(o.k()), o.seed()});
  o.write_body(w);
  return w.take();
}

inline TZOracle deserialize_tz(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.header().kind != ContainerKind::tz) throw ParseError(0, "container does not hold a TZ oracle");
  auto o = TZOracle::read_body(r);
  if (!r.at_end()) throw ParseError(0, "trailing bytes after TZ oracle");
  return o;
}

inline TZOracle tz_build(const Graph& g, std::size_t k, std::uint64_t seed) { return TZOracle::build(g, k, seed); }

inline TZOracle::QueryTrace tz_query(const TZOracle& o, NodeId u, NodeId v) { return o.query(u, v); }

// Per-node forwarding state derived from a graph-built oracle.
struct TZRoutingTable {
  struct Entry {
    NodeId target;
    NodeId next_hop;
  };
  std::vector<Entry> bunch_hops;    // toward each bunch member, sorted by target
  std::vector<Entry> witness_hops;  // toward p_i(v), i = 1..k-1
  std::size_t entry_count() const noexcept { return bunch_hops.size() + witness_hops.size(); }
};

inline std::vector<TZRoutingTable> tz_routing_tables(const TZOracle& o, const Graph& g) {
  if (o.node_count() != g.node_count()) throw ArgumentError("tz_routing_tables: oracle built on another graph");
  std::vector<TZRoutingTable> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (const auto& e : o.bunch(v))
      if (e.node != v) out[v].bunch_hops.push_back({e.node, e.next_hop});
    for (std::size_t i = 1; i < o.k(); ++i) out[v].witness_hops.push_back({o.witness(v, i), o.witness_next_hop(v, i)});
  }
  return out;
}

// Hop-by-hop walk of the route tz_query(src, dst) selects, driven only by the
// per-node tables. One leg climbs a witness tree, the other a cluster tree;
// the leg toward dst is the reverse of dst's climb. Returns nullopt if a
// table is missing an entry or a loop is detected.
inline std::optional<std::vector<NodeId>> tz_forward(const TZOracle& o, const std::vector<TZRoutingTable>& tables,
                                                     NodeId src, NodeId dst) {
  if (src == dst) return std::vector<NodeId>{src};
  const auto t = o.query(src, dst);
  const NodeId w = t.final_witness;
  const std::size_t level = t.level_used;
  const std::size_t limit = o.node_count() + 1;

  auto climb_witness = [&](NodeId from) -> std::optional<std::vector<NodeId>> {
    std::vector<NodeId> walk{from};
    while (walk.back() != w) {
      if (walk.size() > limit || level == 0) return std::nullopt;
      const auto& hops = tables[walk.back()].witness_hops;
      if (hops.size() < level || hops[level - 1].target != w) return std::nullopt;
      walk.push_back(hops[level - 1].next_hop);
    }
    return walk;
  };
  auto climb_cluster = [&](NodeId from) -> std::optional<std::vector<NodeId>> {
    std::vector<NodeId> walk{from};
    while (walk.back() != w) {
      if (walk.size() > limit) return std::nullopt;
      const auto& hops = tables[walk.back()].bunch_hops;
      auto it = std::lower_bound(hops.begin(), hops.end(), w,
                                 [](const TZRoutingTable::Entry& e, NodeId x) { return e.target < x; });
      if (it == hops.end() || it->target != w) return std::nullopt;
      walk.push_back(it->next_hop);
    }
    return walk;
  };

  // witness_of_first: w = p_level(src) ∈ bunch(dst)
  auto up = t.witness_of_first ? climb_witness(src) : climb_cluster(src);
  auto down = t.witness_of_first ? climb_cluster(dst) : climb_witness(dst);
  if (!up || !down) return std::nullopt;
  std::vector<NodeId> walk = std::move(*up);
  walk.insert(walk.end(), down->rbegin() + 1, down->rend());
  return walk;
}

}  // namespace vicinity
