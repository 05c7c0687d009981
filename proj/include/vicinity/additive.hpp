#pragma once

#include "vicinity/stretch_mult.hpp"

namespace vicinity {

// two_plus answers within 2d + w_uv; fourk_plus within (4k-1)d + 2k·w_uv.
enum class AdditiveMode : std::uint8_t { two_plus = 1, fourk_plus = 2 };

inline const char* to_string(AdditiveMode m) { return m == AdditiveMode::two_plus ? "two_plus" : "fourk_plus"; }

// Stored balls only; no vicinities and no adjacency. Queries never search.
class AdditiveOracle {
 public:
  AdditiveOracle() = default;

  static AdditiveOracle build(const Graph& g, LandmarkSet L, AdditiveMode mode, std::size_t k, std::uint64_t seed) {
    if (!g.connected()) throw BuildError("build_additive: graph is disconnected");
    if (L.empty()) throw BuildError("build_additive: empty landmark set");
    AdditiveOracle o;
    o.n_ = g.node_count();
    o.mode_ = mode;
    o.k_ = mode == AdditiveMode::two_plus ? 0 : k;
    if (mode == AdditiveMode::fourk_plus && k < 1) throw ArgumentError("build_additive: k must be >= 1");
    o.assign_ = assign_landmarks(g, L);
    SearchWorkspace ws(g.node_count());
    o.balls_.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) o.balls_.push_back(compute_ball(g, v, L, &ws));
    if (mode == AdditiveMode::two_plus) {
      o.tables_ = FullLandmarkTables(g, L);
    } else {
      o.sub_ = LandmarkSubOracle(g, L, k, derive_seed(seed, detail::kSubOracleTag));
    }
    o.L_ = std::move(L);
    return o;
  }

  std::size_t node_count() const noexcept { return n_; }
  AdditiveMode mode() const noexcept { return mode_; }
  std::size_t k() const noexcept { return k_; }
  const LandmarkSet& landmarks() const noexcept { return L_; }
  const BallInfo& ball(NodeId v) const noexcept { return balls_[v]; }
  const LandmarkAssignment& assignment() const noexcept { return assign_; }
  NodeId landmark_of(NodeId v) const noexcept { return assign_.landmark[v]; }
  Weight radius(NodeId v) const noexcept { return assign_.radius[v]; }

  // (ℓ, r) + Σ|B(v)| + landmark tables or sub-oracle distances
  std::size_t size_entries() const noexcept {
    std::size_t total = n_;
    for (const auto& b : balls_) total += b.ball.size();
    return total + (mode_ == AdditiveMode::two_plus ? tables_.entries() : sub_.distance_entries());
  }

  QueryResult query(NodeId u, NodeId v) const {
    check(u, v);
    if (u == v) return QueryResult{0.0, Branch::direct_ball, u, 0, {}};
    const BallInfo& bu = balls_[u];
    const BallInfo& bv = balls_[v];
    std::size_t probes = 0;
    if (!bu.ball.empty()) {
      ++probes;
      if (const Reach* r = bu.ball.find(v)) return QueryResult{r->dist, Branch::direct_ball, v, probes, {}};
    }
    if (!bv.ball.empty()) {
      ++probes;
      if (const Reach* r = bv.ball.find(u)) return QueryResult{r->dist, Branch::direct_ball, u, probes, {}};
    }
    const auto x = ball_ball_intersect(bu, bv);
    probes += x.probes;
    if (x.hit) return QueryResult{x.hit->dsum, Branch::ball_ball, x.hit->best, probes, {}};
    if (mode_ == AdditiveMode::fourk_plus) {
      const Weight t = sub_.query(L_.index_of(landmark_of(u)), L_.index_of(landmark_of(v))).estimate;
      return QueryResult{(radius(u) + t) + radius(v), Branch::tz_fallback, landmark_of(u), probes, {}};
    }
    if (radius(u) <= radius(v)) {
      return QueryResult{radius(u) + tables_.dist(L_.index_of(landmark_of(u)), v), Branch::landmark_u,
                         landmark_of(u), probes, {}};
    }
    return QueryResult{radius(v) + tables_.dist(L_.index_of(landmark_of(v)), u), Branch::landmark_v, landmark_of(v),
                       probes, {}};
  }

  std::vector<NodeId> retrieve_path(const QueryResult& r, NodeId u, NodeId v) const {
    check(u, v);
    if (u == v) return {u};
    switch (r.branch) {
      case Branch::direct_ball:
        if (r.via == v) return reversed(ball_chain(u, v));
        return ball_chain(v, u);
      case Branch::ball_ball:
        return splice(reversed(ball_chain(u, r.via)), ball_chain(v, r.via));
      case Branch::landmark_u:
        return splice(assign_.chain_to_landmark(u), reversed(tables_.chain(L_.index_of(landmark_of(u)), v)));
      case Branch::landmark_v:
        return splice(tables_.chain(L_.index_of(landmark_of(v)), u), reversed(assign_.chain_to_landmark(v)));
      case Branch::tz_fallback: {
        auto mid = sub_.expand(L_.index_of(landmark_of(u)), L_.index_of(landmark_of(v)));
        return splice(splice(assign_.chain_to_landmark(u), mid), reversed(assign_.chain_to_landmark(v)));
      }
      default:
        throw ArgumentError("retrieve_path_additive: branch not produced by this oracle");
    }
  }

  void write_body(ByteWriter& w) const {
    w.u64(n_);
    detail::write_landmarks(w, L_);
    detail::write_assignment(w, assign_);
    w.seq(balls_, [&](const BallInfo& b) {
      w.u32(b.node);
      w.u32(b.landmark);
      w.f64(b.radius);
      detail::write_map(w, b.ball);
    });
    if (mode_ == AdditiveMode::two_plus) {
      tables_.write(w);
    } else {
      sub_.write(w);
    }
  }

  static AdditiveOracle read_body(ByteReader& r, AdditiveMode mode, std::size_t k) {
    AdditiveOracle o;
    o.mode_ = mode;
    o.k_ = k;
    o.n_ = r.u64();
    o.L_ = detail::read_landmarks(r, o.n_);
    o.assign_ = detail::read_assignment(r);
    o.balls_ = r.seq<BallInfo>([&] {
      BallInfo b;
      b.node = r.u32();
      b.landmark = r.u32();
      b.radius = r.f64();
      b.ball = detail::read_map(r);
      return b;
    });
    if (o.balls_.size() != o.n_) throw ParseError(0, "additive oracle: ball count does not match n");
    if (mode == AdditiveMode::two_plus) {
      o.tables_ = FullLandmarkTables::read(r);
    } else {
      o.sub_ = LandmarkSubOracle::read(r);
    }
    return o;
  }

 private:
  void check(NodeId u, NodeId v) const {
    if (u >= n_ || v >= n_) throw ArgumentError("query: node id out of range");
  }

  // x, ..., owner along the owner's ball tree
  std::vector<NodeId> ball_chain(NodeId owner, NodeId x) const {
    std::vector<NodeId> out{x};
    while (out.back() != owner) out.push_back(balls_[owner].ball.find(out.back())->parent);
    return out;
  }

  std::size_t n_ = 0;
  AdditiveMode mode_ = AdditiveMode::two_plus;
  std::size_t k_ = 0;
  LandmarkSet L_;
  LandmarkAssignment assign_;
  std::vector<BallInfo> balls_;
  FullLandmarkTables tables_;
  LandmarkSubOracle sub_;
};

// nα + n²/α (two_plus), nα + (n/α)^{1+1/k} (fourk_plus)
inline double additive_size_formula(const Graph& g, double alpha, AdditiveMode mode, std::size_t k) {
  const double n = static_cast<double>(g.node_count());
  const double tail = mode == AdditiveMode::two_plus ? n * n / alpha
                                                     : std::pow(n / alpha, 1.0 + 1.0 / static_cast<double>(k));
  return n * alpha + tail;
}

inline LasVegasResult<AdditiveOracle> build_additive(std::shared_ptr<const Graph> g, const LandmarkOptions& opt,
                                                     AdditiveMode mode, std::size_t k, std::uint64_t seed) {
  if (!g->connected()) throw BuildError("build_additive: graph is disconnected");
  const double bound = opt.size_constant * additive_size_formula(*g, opt.alpha, mode, k);
  const std::size_t attempts = opt.sampling.mode == SamplingMode::forced ? 1 : opt.max_attempts;
  return las_vegas_build(
      [&](std::uint64_t s) {
        auto L = sample_landmarks(*g, opt.sampling, derive_seed(s, detail::kLandmarkTag));
        return AdditiveOracle::build(*g, std::move(L), mode, k, s);
      },
      bound, attempts, seed);
}

inline QueryResult query_additive(const AdditiveOracle& o, NodeId u, NodeId v) { return o.query(u, v); }

inline std::string serialize(const AdditiveOracle& o) {
  ByteWriter w;
  w.header({ContainerKind::additive, static_cast<std::uint8_t>(o.mode()), o.node_count(),
            static_cast<std::uint32_t>(o.k()), o.landmarks().seed()});
  o.write_body(w);
  return w.take();
}

inline AdditiveOracle deserialize_additive(std::string_view bytes) {
  ByteReader r(bytes);
  const auto h = r.header();
  if (h.kind != ContainerKind::additive) throw ParseError(0, "container does not hold an additive oracle");
  if (h.mode != 1 && h.mode != 2) throw ParseError(0, "additive oracle: unknown mode byte");
  auto o = AdditiveOracle::read_body(r, static_cast<AdditiveMode>(h.mode), h.k);
  if (!r.at_end()) throw ParseError(0, "trailing bytes after additive oracle");
  return o;
}

}  // namespace vicinity
