#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vicinity/degree_reduction.hpp"
#include "vicinity/rng.hpp"
#include "vicinity/shortest_paths.hpp"

namespace vicinity {

enum class SamplingMode { uniform, degree_proportional, forced, custom };

inline const char* to_string(SamplingMode m) {
  switch (m) {
    case SamplingMode::uniform: return "uniform";
    case SamplingMode::degree_proportional: return "degree";
    case SamplingMode::forced: return "forced";
    case SamplingMode::custom: return "custom";
  }
  return "?";
}

struct SamplingSpec {
  SamplingMode mode = SamplingMode::degree_proportional;
  double alpha = 1.0;
  double delta = 0.0;            // degree mode; <= 0 means the average degree 2m/n
  std::vector<NodeId> forced;    // forced mode
  std::vector<double> probability;  // custom mode, one entry per node

  static SamplingSpec uniform(double alpha) { return {SamplingMode::uniform, alpha, 0.0, {}, {}}; }
  static SamplingSpec degree(double alpha, double delta = 0.0) {
    return {SamplingMode::degree_proportional, alpha, delta, {}, {}};
  }
  static SamplingSpec forced_set(std::vector<NodeId> ids) { return {SamplingMode::forced, 1.0, 0.0, std::move(ids), {}}; }
  static SamplingSpec custom(std::vector<double> p) { return {SamplingMode::custom, 1.0, 0.0, {}, std::move(p)}; }
};

class LandmarkSet {
 public:
  LandmarkSet() = default;
  LandmarkSet(std::size_t n, std::vector<NodeId> members, SamplingMode mode, std::uint64_t seed)
      : members_(std::move(members)), index_(n, kNoNode), mode_(mode), seed_(seed) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) index_[members_[i]] = static_cast<NodeId>(i);
  }

  const std::vector<NodeId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(NodeId v) const noexcept { return index_[v] != kNoNode; }
  // position of v in members(), or kNoNode
  NodeId index_of(NodeId v) const noexcept { return index_[v]; }
  SamplingMode mode() const noexcept { return mode_; }
  // seed of the draw that produced this set (after empty-draw retries)
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::vector<NodeId> members_;
  std::vector<NodeId> index_;
  SamplingMode mode_ = SamplingMode::uniform;
  std::uint64_t seed_ = 0;
};

inline std::vector<double> sampling_probabilities(const Graph& g, const SamplingSpec& spec) {
  const std::size_t n = g.node_count();
  std::vector<double> p(n, 0.0);
  switch (spec.mode) {
    case SamplingMode::uniform:
      std::fill(p.begin(), p.end(), std::min(1.0, 1.0 / spec.alpha));
      break;
    case SamplingMode::degree_proportional: {
      const double delta = spec.delta > 0.0 ? spec.delta : std::max(g.average_degree(), 1e-300);
      for (NodeId v = 0; v < n; ++v) p[v] = degree_proportional_probability(v, g, spec.alpha, delta);
      break;
    }
    case SamplingMode::custom:
      if (spec.probability.size() != n) throw ArgumentError("custom sampling: probability vector size != n");
      for (NodeId v = 0; v < n; ++v) p[v] = std::clamp(spec.probability[v], 0.0, 1.0);
      break;
    case SamplingMode::forced:
      for (NodeId v : spec.forced) p.at(v) = 1.0;
      break;
  }
  return p;
}

inline constexpr std::size_t kMaxEmptyDraws = 10000;

// One Bernoulli draw per node, in id order, from a single SplitMix64 stream.
// An empty draw is repeated with seed + 1.
inline LandmarkSet sample_landmarks(const Graph& g, const SamplingSpec& spec, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (n == 0) throw ArgumentError("sample_landmarks: empty graph");
  if (spec.mode == SamplingMode::uniform || spec.mode == SamplingMode::degree_proportional) {
    if (!(spec.alpha >= 1.0) || spec.alpha > static_cast<double>(n)) {
      throw ArgumentError("sample_landmarks: alpha must lie in [1, n]");
    }
  }
  if (spec.mode == SamplingMode::forced) {
    if (spec.forced.empty()) throw ArgumentError("sample_landmarks: forced landmark list is empty");
    for (NodeId v : spec.forced) {
      if (v >= n) throw ArgumentError("sample_landmarks: forced landmark " + std::to_string(v) + " out of range");
    }
    return LandmarkSet(n, spec.forced, SamplingMode::forced, seed);
  }
  const auto p = sampling_probabilities(g, spec);
  for (std::size_t attempt = 0; attempt < kMaxEmptyDraws; ++attempt) {
    const std::uint64_t s = seed + attempt;
    SplitMix64 rng(s);
    std::vector<NodeId> members;
    for (NodeId v = 0; v < n; ++v) {
      if (rng.bernoulli(p[v])) members.push_back(v);
    }
    if (!members.empty()) return LandmarkSet(n, std::move(members), spec.mode, s);
  }
  throw BuildError("sample_landmarks: every draw came up empty");
}

// One node id per line; '#' comments and blank lines ignored.
inline std::vector<NodeId> parse_landmark_list(std::string_view text) {
  std::vector<NodeId> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = detail::trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    NodeId v = 0;
    if (!detail::parse_number(line, v)) throw ParseError(line_no, "expected a node id");
    out.push_back(v);
  }
  return out;
}

// Nearest landmark, its distance, and the next hop toward it, for all nodes.
// Computed by one multi-source sweep; agrees with the first landmark a
// per-node truncated search settles.
struct LandmarkAssignment {
  std::vector<NodeId> landmark;
  std::vector<Weight> radius;
  std::vector<NodeId> parent;

  std::vector<NodeId> chain_to_landmark(NodeId v) const {
    std::vector<NodeId> out{v};
    while (out.back() != landmark[v]) out.push_back(parent[out.back()]);
    return out;
  }
};

inline LandmarkAssignment assign_landmarks(const Graph& g, const LandmarkSet& L) {
  auto f = nearest_source_forest(g, L.members());
  return {std::move(f.root), std::move(f.dist), std::move(f.parent)};
}

struct BallInfo {
  NodeId node = kNoNode;
  NodeId landmark = kNoNode;
  Weight radius = 0.0;
  DistanceMap ball;

  friend bool operator==(const BallInfo&, const BallInfo&) = default;
};

// Γ(v) = B(v) ∪ N(B(v)) with exact distances. `relays` holds the search-tree
// nodes outside Γ(v) that lie on tree paths to vicinity members (only
// possible with non-uniform weights); they are needed to walk those paths.
struct VicinityInfo {
  NodeId node = kNoNode;
  DistanceMap vicinity;
  DistanceMap relays;

  friend bool operator==(const VicinityInfo&, const VicinityInfo&) = default;
};

struct Neighborhood {
  BallInfo ball;
  VicinityInfo vicinity;
};

namespace detail {

inline BallInfo grow_ball(IncrementalDijkstra& search, NodeId v, const LandmarkSet& L) {
  BallInfo b;
  b.node = v;
  std::vector<Reach> inside;
  while (!search.exhausted()) {
    const Reach r = search.settle();
    if (L.contains(r.node)) {
      b.landmark = r.node;
      b.radius = r.dist;
      break;
    }
    inside.push_back(r);
  }
  if (b.landmark == kNoNode) throw BuildError("compute_ball: no landmark reachable from node " + std::to_string(v));
  // nodes settled at exactly r_v before the landmark (lower id) are not in B(v)
  while (!inside.empty() && !(inside.back().dist < b.radius)) inside.pop_back();
  b.ball = DistanceMap(std::move(inside));
  return b;
}

inline VicinityInfo grow_vicinity(IncrementalDijkstra& search, const Graph& g, const BallInfo& b) {
  VicinityInfo out;
  out.node = b.node;
  if (b.ball.empty()) return out;
  std::vector<NodeId> want;
  for (const Reach& r : b.ball) {
    want.push_back(r.node);
    for (const Arc& a : g.neighbors(r.node)) want.push_back(a.to);
  }
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  std::size_t missing = 0;
  for (NodeId x : want) missing += search.is_settled(x) ? 0 : 1;
  while (missing > 0) {
    const Reach r = search.settle();
    if (std::binary_search(want.begin(), want.end(), r.node)) --missing;
  }
  std::vector<Reach> members;
  members.reserve(want.size());
  for (NodeId x : want) members.push_back(search.reach(x));
  std::vector<Reach> relays;
  for (NodeId x : want) {
    for (NodeId y = search.reach(x).parent; y != b.node; y = search.reach(y).parent) {
      if (std::binary_search(want.begin(), want.end(), y)) break;
      if (std::find_if(relays.begin(), relays.end(), [y](const Reach& r) { return r.node == y; }) != relays.end()) break;
      relays.push_back(search.reach(y));
    }
  }
  out.vicinity = DistanceMap(std::move(members));
  out.relays = DistanceMap(std::move(relays));
  return out;
}

}  // namespace detail

// Truncated search from v until the first landmark settles; that landmark is
// ℓ(v) (lowest id among the nearest), its distance r_v, and B(v) is every
// node settled strictly closer. Landmarks get ℓ(v) = v, r_v = 0, B(v) = ∅.
inline BallInfo compute_ball(const Graph& g, NodeId v, const LandmarkSet& L, SearchWorkspace* ws = nullptr) {
  if (L.empty()) throw ArgumentError("compute_ball: empty landmark set");
  if (L.contains(v)) return BallInfo{v, v, 0.0, {}};
  SearchWorkspace local;
  IncrementalDijkstra search(g, v, ws ? *ws : local);
  return detail::grow_ball(search, v, L);
}

inline VicinityInfo compute_vicinity(const Graph& g, const BallInfo& b, SearchWorkspace* ws = nullptr) {
  if (b.ball.empty()) return VicinityInfo{b.node, {}, {}};
  SearchWorkspace local;
  IncrementalDijkstra search(g, b.node, ws ? *ws : local);
  return detail::grow_vicinity(search, g, b);
}

// Ball and vicinity from a single search.
inline Neighborhood compute_neighborhood(const Graph& g, NodeId v, const LandmarkSet& L,
                                         SearchWorkspace* ws = nullptr) {
  if (L.empty()) throw ArgumentError("compute_neighborhood: empty landmark set");
  if (L.contains(v)) return {BallInfo{v, v, 0.0, {}}, VicinityInfo{v, {}, {}}};
  SearchWorkspace local;
  IncrementalDijkstra search(g, v, ws ? *ws : local);
  Neighborhood out;
  out.ball = detail::grow_ball(search, v, L);
  out.vicinity = detail::grow_vicinity(search, g, out.ball);
  return out;
}

struct IntersectionHit {
  NodeId best = kNoNode;
  Weight dsum = kInfinity;
};

struct Intersection {
  std::optional<IntersectionHit> hit;
  std::size_t probes = 0;
};

// min over w in from ∩ target of from[w] + target[w]; ties go to the lower id.
// One probe per member of `from`, none when the target is empty.
inline Intersection intersect(const DistanceMap& from, const DistanceMap& target) {
  Intersection out;
  if (target.empty()) return out;
  for (const Reach& a : from) {
    ++out.probes;
    const Reach* b = target.find(a.node);
    if (b == nullptr) continue;
    const Weight s = a.dist + b->dist;
    if (!out.hit || s < out.hit->dsum) out.hit = IntersectionHit{a.node, s};
  }
  return out;
}

inline Intersection ball_vicinity_intersect(const BallInfo& bu, const VicinityInfo& gv) {
  return intersect(bu.ball, gv.vicinity);
}

inline Intersection ball_ball_intersect(const BallInfo& bu, const BallInfo& bv) {
  if (bu.node == bv.node) return Intersection{IntersectionHit{bu.node, 0.0}, 0};
  return intersect(bu.ball, bv.ball);
}

// Γ(u) against Γ(v); evaluation-only, carries no stretch guarantee.
inline Intersection vicinity_vicinity_intersect(const VicinityInfo& gu, const VicinityInfo& gv) {
  return intersect(gu.vicinity, gv.vicinity);
}

template <class Oracle>
struct LasVegasResult {
  Oracle oracle;
  std::size_t attempts = 0;
  std::vector<std::size_t> sizes;
};

// Rebuilds until size_entries() <= size_bound. Attempt 0 uses `seed` itself,
// attempt i > 0 uses derive_seed(seed, i).
template <class Builder>
auto las_vegas_build(Builder&& builder, double size_bound, std::size_t max_attempts, std::uint64_t seed)
    -> LasVegasResult<std::invoke_result_t<Builder&, std::uint64_t>> {
  using Oracle = std::invoke_result_t<Builder&, std::uint64_t>;
  if (max_attempts == 0) throw ArgumentError("las_vegas_build: max_attempts must be positive");
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < max_attempts; ++i) {
    Oracle o = builder(i == 0 ? seed : derive_seed(seed, i));
    sizes.push_back(o.size_entries());
    if (static_cast<double>(sizes.back()) <= size_bound) return {std::move(o), i + 1, std::move(sizes)};
  }
  std::string msg = "las_vegas_build: no attempt met the size bound " + std::to_string(size_bound) + "; sizes:";
  for (std::size_t s : sizes) msg += " " + std::to_string(s);
  throw BuildError(msg);
}

}  // namespace vicinity
