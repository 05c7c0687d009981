#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "vicinity/distance_map.hpp"
#include "vicinity/graph.hpp"

namespace vicinity {

// Single-source shortest-path tree. parent[source] == source; unreachable
// nodes have dist = inf and parent = kNoNode.
struct DistanceTable {
  NodeId source = kNoNode;
  std::vector<Weight> dist;
  std::vector<NodeId> parent;

  // v, parent(v), ..., source
  std::vector<NodeId> chain_to_source(NodeId v) const {
    std::vector<NodeId> out;
    if (parent[v] == kNoNode) return out;
    for (NodeId x = v;; x = parent[x]) {
      out.push_back(x);
      if (x == source) break;
    }
    return out;
  }

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;
};

// Scratch arrays for repeated searches on one graph. Only the entries a
// search touched are reset afterwards, so a truncated search costs time
// proportional to what it explored rather than to n.
class SearchWorkspace {
 public:
  SearchWorkspace() = default;
  explicit SearchWorkspace(std::size_t n) { resize(n); }

  void resize(std::size_t n) {
    if (dist_.size() >= n) return;
    dist_.assign(n, kInfinity);
    parent_.assign(n, kNoNode);
    first_hop_.assign(n, kNoNode);
    settled_.assign(n, 0);
  }

 private:
  friend class IncrementalDijkstra;

  void reset() {
    for (NodeId v : touched_) {
      dist_[v] = kInfinity;
      parent_[v] = kNoNode;
      first_hop_[v] = kNoNode;
      settled_[v] = 0;
    }
    touched_.clear();
    heap_.clear();
  }

  std::vector<Weight> dist_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> first_hop_;
  std::vector<unsigned char> settled_;
  std::vector<NodeId> touched_;
  std::vector<std::pair<Weight, NodeId>> heap_;
};

// Dijkstra that settles one node per call, in nondecreasing (distance, id)
// order. Predecessors change only on strict improvement.
class IncrementalDijkstra {
 public:
  IncrementalDijkstra(const Graph& g, NodeId source, SearchWorkspace& ws) : g_(g), source_(source), ws_(ws) {
    ws_.resize(g.node_count());
    ws_.reset();
    touch(source);
    ws_.dist_[source] = 0.0;
    ws_.parent_[source] = source;
    ws_.first_hop_[source] = source;
    push(0.0, source);
  }

  IncrementalDijkstra(const IncrementalDijkstra&) = delete;
  IncrementalDijkstra& operator=(const IncrementalDijkstra&) = delete;
  ~IncrementalDijkstra() { ws_.reset(); }

  // Next (distance, node) that settle() would return.
  std::optional<std::pair<Weight, NodeId>> peek() {
    drop_stale();
    if (ws_.heap_.empty()) return std::nullopt;
    return ws_.heap_.front();
  }

  bool exhausted() { return !peek().has_value(); }

  Reach settle() {
    drop_stale();
    std::pop_heap(ws_.heap_.begin(), ws_.heap_.end(), std::greater<>{});
    const NodeId y = ws_.heap_.back().second;
    ws_.heap_.pop_back();
    ws_.settled_[y] = 1;
    ++settled_count_;
    const Weight dy = ws_.dist_[y];
    for (const Arc& a : g_.neighbors(y)) {
      const Weight nd = dy + a.w;
      if (nd < ws_.dist_[a.to]) {
        touch(a.to);
        ws_.dist_[a.to] = nd;
        ws_.parent_[a.to] = y;
        ws_.first_hop_[a.to] = y == source_ ? a.to : ws_.first_hop_[y];
        push(nd, a.to);
      }
    }
    return Reach{y, dy, ws_.parent_[y], ws_.first_hop_[y]};
  }

  bool is_settled(NodeId v) const noexcept { return ws_.settled_[v] != 0; }
  Weight tentative(NodeId v) const noexcept { return ws_.dist_[v]; }
  Reach reach(NodeId v) const noexcept { return Reach{v, ws_.dist_[v], ws_.parent_[v], ws_.first_hop_[v]}; }
  NodeId source() const noexcept { return source_; }
  std::size_t settled_count() const noexcept { return settled_count_; }

 private:
  void touch(NodeId v) {
    if (ws_.dist_[v] == kInfinity && ws_.parent_[v] == kNoNode) ws_.touched_.push_back(v);
  }
  void push(Weight d, NodeId v) {
    ws_.heap_.emplace_back(d, v);
    std::push_heap(ws_.heap_.begin(), ws_.heap_.end(), std::greater<>{});
  }
  void drop_stale() {
    while (!ws_.heap_.empty()) {
      const auto [d, v] = ws_.heap_.front();
      if (ws_.settled_[v] == 0 && d == ws_.dist_[v]) return;
      std::pop_heap(ws_.heap_.begin(), ws_.heap_.end(), std::greater<>{});
      ws_.heap_.pop_back();
    }
  }

  const Graph& g_;
  NodeId source_;
  SearchWorkspace& ws_;
  std::size_t settled_count_ = 0;
};

inline DistanceTable dijkstra(const Graph& g, NodeId source) {
  if (!g.valid(source)) throw ArgumentError("dijkstra: invalid source " + std::to_string(source));
  SearchWorkspace ws(g.node_count());
  IncrementalDijkstra search(g, source, ws);
  DistanceTable t;
  t.source = source;
  t.dist.assign(g.node_count(), kInfinity);
  t.parent.assign(g.node_count(), kNoNode);
  while (!search.exhausted()) {
    const Reach r = search.settle();
    t.dist[r.node] = r.dist;
    t.parent[r.node] = r.parent;
  }
  return t;
}

enum class StopReason { radius_reached, count_reached, exhausted };

struct SearchStop {
  enum class Kind { radius, count } kind;
  Weight radius = 0.0;
  std::size_t count = 0;

  static SearchStop at_radius(Weight r) { return {Kind::radius, r, 0}; }
  static SearchStop at_count(std::size_t c) { return {Kind::count, 0.0, c}; }
};

struct TruncatedSearchResult {
  NodeId source = kNoNode;
  std::vector<Reach> settled;  // settle order
  StopReason stop_reason = StopReason::exhausted;

  DistanceMap as_map() const { return DistanceMap(settled); }
};

// Radius mode settles exactly {w : d(source, w) < r}; count mode settles the
// c nearest nodes, ties broken by lower id.
inline TruncatedSearchResult truncated_dijkstra(const Graph& g, NodeId source, SearchStop stop,
                                                SearchWorkspace* workspace = nullptr) {
  if (!g.valid(source)) throw ArgumentError("truncated_dijkstra: invalid source");
  if (stop.kind == SearchStop::Kind::radius ? stop.radius < 0.0 : false) {
    throw ArgumentError("truncated_dijkstra: negative radius");
  }
  SearchWorkspace local;
  SearchWorkspace& ws = workspace ? *workspace : local;
  IncrementalDijkstra search(g, source, ws);
  TruncatedSearchResult out;
  out.source = source;
  for (;;) {
    const auto next = search.peek();
    if (!next) {
      out.stop_reason = StopReason::exhausted;
      break;
    }
    if (stop.kind == SearchStop::Kind::radius && !(next->first < stop.radius)) {
      out.stop_reason = StopReason::radius_reached;
      break;
    }
    if (stop.kind == SearchStop::Kind::count && out.settled.size() >= stop.count) {
      out.stop_reason = StopReason::count_reached;
      break;
    }
    out.settled.push_back(search.settle());
  }
  return out;
}

// Multi-source search labelling every node with its nearest source, ties
// broken by the lower source id: labels are minimized lexicographically on
// (distance, root). parent[] walks toward root[], and every node on that walk
// carries the same root.
struct NearestSourceForest {
  std::vector<Weight> dist;
  std::vector<NodeId> root;
  std::vector<NodeId> parent;

  std::vector<NodeId> chain_to_root(NodeId v) const {
    std::vector<NodeId> out;
    if (root[v] == kNoNode) return out;
    for (NodeId x = v;; x = parent[x]) {
      out.push_back(x);
      if (x == root[v]) break;
    }
    return out;
  }

  friend bool operator==(const NearestSourceForest&, const NearestSourceForest&) = default;
};

inline NearestSourceForest nearest_source_forest(const Graph& g, std::span<const NodeId> sources) {
  const std::size_t n = g.node_count();
  NearestSourceForest f;
  f.dist.assign(n, kInfinity);
  f.root.assign(n, kNoNode);
  f.parent.assign(n, kNoNode);
  using Item = std::tuple<Weight, NodeId, NodeId>;  // (dist, root, node)
  std::vector<Item> heap;
  std::vector<unsigned char> done(n, 0);
  for (NodeId s : sources) {
    if (std::make_pair(0.0, s) < std::make_pair(f.dist[s], f.root[s])) {
      f.dist[s] = 0.0;
      f.root[s] = s;
      f.parent[s] = s;
      heap.emplace_back(0.0, s, s);
    }
  }
  std::make_heap(heap.begin(), heap.end(), std::greater<>{});
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
    const auto [d, r, y] = heap.back();
    heap.pop_back();
    if (done[y] || d != f.dist[y] || r != f.root[y]) continue;
    done[y] = 1;
    for (const Arc& a : g.neighbors(y)) {
      const Weight nd = d + a.w;
      if (std::make_pair(nd, r) < std::make_pair(f.dist[a.to], f.root[a.to])) {
        f.dist[a.to] = nd;
        f.root[a.to] = r;
        f.parent[a.to] = y;
        heap.emplace_back(nd, r, a.to);
        std::push_heap(heap.begin(), heap.end(), std::greater<>{});
      }
    }
  }
  return f;
}

// Dense all-pairs distances; the verification ground truth.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kInfinity) {}

  std::size_t size() const noexcept { return n_; }
  Weight at(NodeId u, NodeId v) const noexcept { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  Weight& at(NodeId u, NodeId v) noexcept { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  std::span<const Weight> row(NodeId u) const noexcept { return {d_.data() + static_cast<std::size_t>(u) * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<Weight> d_;
};

inline constexpr std::size_t kDefaultVerificationCap = 4096;

// One Dijkstra per node. Refuses graphs above the verification cap so that
// exhaustive checking stays desk-scale.
inline DistanceMatrix exact_oracle(const Graph& g, std::size_t cap = kDefaultVerificationCap) {
  const std::size_t n = g.node_count();
  if (n > cap) {
    throw ArgumentError("exact_oracle: n=" + std::to_string(n) + " exceeds the verification cap " +
                        std::to_string(cap));
  }
  DistanceMatrix m(n);
  SearchWorkspace ws(n);
  for (NodeId s = 0; s < n; ++s) {
    IncrementalDijkstra search(g, s, ws);
    while (!search.exhausted()) {
      const Reach r = search.settle();
      m.at(s, r.node) = r.dist;
    }
  }
  return m;
}

}  // namespace vicinity
