#pragma once

#include "vicinity/stretch2.hpp"

namespace vicinity {

// Stretch-(4k-1) oracle: the stretch-2 front half (memberships and
// ball-vicinity intersections) with the landmark tables replaced by a
// Thorup-Zwick oracle on the landmark graph G′.
class StretchMultOracle {
 public:
  StretchMultOracle() = default;

  static StretchMultOracle build(std::shared_ptr<const Graph> g, LandmarkSet L, std::size_t k, Variant variant,
                                 std::uint64_t seed, bool strict_paper = false) {
    if (!g->connected()) throw BuildError("build_mult: graph is disconnected");
    if (L.empty()) throw BuildError("build_mult: empty landmark set");
    if (k < 1) throw ArgumentError("build_mult: k must be >= 1");
    StretchMultOracle o;
    o.assign_ = assign_landmarks(*g, L);
    o.sub_ = LandmarkSubOracle(*g, L, k, derive_seed(seed, detail::kSubOracleTag));
    if (variant == Variant::stored) o.stored_ = detail::all_neighborhoods(*g, L);
    o.g_ = std::move(g);
    o.L_ = std::move(L);
    o.k_ = k;
    o.variant_ = variant;
    o.strict_paper_ = strict_paper;
    return o;
  }

  const Graph& graph() const noexcept { return *g_; }
  const LandmarkSet& landmarks() const noexcept { return L_; }
  const LandmarkSubOracle& sub() const noexcept { return sub_; }
  const LandmarkAssignment& assignment() const noexcept { return assign_; }
  std::size_t k() const noexcept { return k_; }
  Variant variant() const noexcept { return variant_; }
  bool strict_paper() const noexcept { return strict_paper_; }
  void set_strict_paper(bool on) noexcept { strict_paper_ = on; }
  const std::vector<Neighborhood>& stored_neighborhoods() const noexcept { return stored_; }
  NodeId landmark_of(NodeId v) const noexcept { return assign_.landmark[v]; }
  Weight radius(NodeId v) const noexcept { return assign_.radius[v]; }

  const Neighborhood& neighborhood(NodeId v, Neighborhood& scratch, SearchWorkspace* ws = nullptr) const {
    return detail::neighborhood_of(*g_, L_, stored_, v, scratch, ws);
  }

  // adjacency + (ℓ, r) + sub-oracle distances (+ stored balls/vicinities)
  std::size_t size_entries() const noexcept {
    return 2 * g_->edge_count() + g_->node_count() + sub_.distance_entries() + detail::neighborhood_entries(stored_);
  }
  // forest parents + leg tables; only path retrieval reads these
  std::size_t path_support_entries() const noexcept { return g_->node_count() + sub_.leg_entries(); }

  // tz estimate between the landmarks of two nodes
  Weight landmark_estimate(NodeId a, NodeId b) const {
    return sub_.query(L_.index_of(landmark_of(a)), L_.index_of(landmark_of(b))).estimate;
  }

  QueryResult query(NodeId u, NodeId v, SearchWorkspace* ws = nullptr) const {
    check(u, v);
    if (u == v) return QueryResult{0.0, Branch::direct_vicinity, u, 0, {}};
    Neighborhood su, sv;
    return query_with(neighborhood(u, su, ws), neighborhood(v, sv, ws));
  }

  QueryResult query_with(const Neighborhood& nu, const Neighborhood& nv) const {
    const NodeId u = nu.ball.node;
    const NodeId v = nv.ball.node;
    if (u == v) return QueryResult{0.0, Branch::direct_vicinity, u, 0, {}};
    std::size_t probes = 0;
    if (auto r = detail::vicinity_stage(nu, nv, strict_paper_, probes)) return *r;
    return fallback(u, v, probes);
  }

  QueryResult query_vicinity_vicinity(const Neighborhood& nu, const Neighborhood& nv) const {
    const NodeId u = nu.ball.node;
    const NodeId v = nv.ball.node;
    if (u == v) return QueryResult{0.0, Branch::direct_vicinity, u, 0, {}};
    std::size_t probes = 0;
    if (auto r = detail::vicinity_vicinity_stage(nu, nv, probes)) return *r;
    return fallback(u, v, probes);
  }

  QueryResult fallback(NodeId u, NodeId v, std::size_t probes) const {
    return QueryResult{(radius(u) + landmark_estimate(u, v)) + radius(v), Branch::tz_fallback, landmark_of(u), probes,
                       {}};
  }

  // d(u,w) + r_w + tz(ℓ(w), ℓ(v)) + r_v
  Weight shortcut_length(Weight d_uw, NodeId w, NodeId v) const {
    return ((d_uw + radius(w)) + landmark_estimate(w, v)) + radius(v);
  }

  // query() improved by the best shortcut through any w ∈ B(u).
  QueryResult query_optimized(NodeId u, NodeId v, SearchWorkspace* ws = nullptr) const {
    check(u, v);
    if (u == v) return QueryResult{0.0, Branch::direct_vicinity, u, 0, {}};
    Neighborhood su, sv;
    const auto& nu = neighborhood(u, su, ws);
    return optimize(query_with(nu, neighborhood(v, sv, ws)), nu, v);
  }

  QueryResult optimize(QueryResult base, const Neighborhood& nu, NodeId v) const {
    for (const Reach& w : nu.ball.ball) {
      ++base.probes;
      const Weight s = shortcut_length(w.dist, w.node, v);
      if (s < base.estimate) {
        base.estimate = s;
        base.branch = Branch::optimized_shortcut;
        base.via = w.node;
      }
    }
    return base;
  }

  std::vector<NodeId> retrieve_path(const QueryResult& r, NodeId u, NodeId v, SearchWorkspace* ws = nullptr) const {
    check(u, v);
    if (u == v) return {u};
    switch (r.branch) {
      case Branch::direct_vicinity:
      case Branch::ball_vicinity:
      case Branch::vicinity_vicinity: {
        Neighborhood su, sv;
        return detail::vicinity_stage_path(neighborhood(u, su, ws), neighborhood(v, sv, ws), r);
      }
      case Branch::tz_fallback:
        return via_landmarks(assign_.chain_to_landmark(u), v);
      case Branch::optimized_shortcut: {
        Neighborhood su;
        const auto& nu = neighborhood(u, su, ws);
        return via_landmarks(splice(reversed(chain_to_owner(nu.vicinity, r.via)), assign_.chain_to_landmark(r.via)), v);
      }
      default:
        throw ArgumentError("retrieve_path_mult: branch not produced by this oracle");
    }
  }

  void write_body(ByteWriter& w) const {
    detail::write_graph(w, *g_);
    detail::write_landmarks(w, L_);
    detail::write_assignment(w, assign_);
    sub_.write(w);
    w.u64(k_);
    w.u8(static_cast<std::uint8_t>(variant_));
    w.u8(strict_paper_ ? 1 : 0);
    w.seq(stored_, [&](const Neighborhood& nb) { detail::write_neighborhood(w, nb); });
  }

  static StretchMultOracle read_body(ByteReader& r) {
    StretchMultOracle o;
    auto g = std::make_shared<const Graph>(detail::read_graph(r));
    o.L_ = detail::read_landmarks(r, g->node_count());
    o.assign_ = detail::read_assignment(r);
    o.sub_ = LandmarkSubOracle::read(r);
    o.k_ = r.u64();
    o.variant_ = static_cast<Variant>(r.u8());
    o.strict_paper_ = r.u8() != 0;
    o.stored_ = r.seq<Neighborhood>([&] { return detail::read_neighborhood(r); });
    o.g_ = std::move(g);
    return o;
  }

 private:
  void check(NodeId u, NodeId v) const {
    if (!g_->valid(u) || !g_->valid(v)) throw ArgumentError("query: node id out of range");
  }

  // head ends at some landmark ℓ; continue through G′ to ℓ(v), then down to v
  std::vector<NodeId> via_landmarks(std::vector<NodeId> head, NodeId v) const {
    const NodeId from = head.back();
    auto mid = sub_.expand(L_.index_of(from), L_.index_of(landmark_of(v)));
    return splice(splice(std::move(head), mid), reversed(assign_.chain_to_landmark(v)));
  }

  std::shared_ptr<const Graph> g_;
  LandmarkSet L_;
  LandmarkAssignment assign_;
  LandmarkSubOracle sub_;
  std::size_t k_ = 1;
  Variant variant_ = Variant::onfly;
  bool strict_paper_ = false;
  std::vector<Neighborhood> stored_;
};

// Claim 4 size formula: nΔ + (n/α)^{1+1/k}, with nΔα in place of nΔ when
// vicinities are stored.
inline double mult_size_formula(const Graph& g, double alpha, std::size_t k, Variant variant) {
  const double n = static_cast<double>(g.node_count());
  const double n_delta = 2.0 * static_cast<double>(g.edge_count());
  return (variant == Variant::stored ? n_delta * alpha : n_delta) +
         std::pow(n / alpha, 1.0 + 1.0 / static_cast<double>(k));
}

inline LasVegasResult<StretchMultOracle> build_mult(std::shared_ptr<const Graph> g, const LandmarkOptions& opt,
                                                    std::size_t k, Variant variant, std::uint64_t seed,
                                                    bool strict_paper = false) {
  if (!g->connected()) throw BuildError("build_mult: graph is disconnected");
  const double bound = opt.size_constant * mult_size_formula(*g, opt.alpha, k, variant);
  const std::size_t attempts = opt.sampling.mode == SamplingMode::forced ? 1 : opt.max_attempts;
  return las_vegas_build(
      [&](std::uint64_t s) {
        auto L = sample_landmarks(*g, opt.sampling, derive_seed(s, detail::kLandmarkTag));
        return StretchMultOracle::build(g, std::move(L), k, variant, s, strict_paper);
      },
      bound, attempts, seed);
}

inline QueryResult query_mult(const StretchMultOracle& o, NodeId u, NodeId v) { return o.query(u, v); }
inline QueryResult query_mult_optimized(const StretchMultOracle& o, NodeId u, NodeId v) {
  return o.query_optimized(u, v);
}
inline std::vector<NodeId> retrieve_path_mult(const StretchMultOracle& o, const QueryResult& r, NodeId u, NodeId v) {
  return o.retrieve_path(r, u, v);
}

inline std::string serialize(const StretchMultOracle& o) {
  ByteWriter w;
  w.header({ContainerKind::mult, static_cast<std::uint8_t>(o.variant()), o.graph().node_count(),
            static_cast<std::uint32_t>(o.k()), o.landmarks().seed()});
  o.write_body(w);
  return w.take();
}

inline StretchMultOracle deserialize_mult(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.header().kind != ContainerKind::mult) throw ParseError(0, "container does not hold a stretch-(4k-1) oracle");
  auto o = StretchMultOracle::read_body(r);
  if (!r.at_end()) throw ParseError(0, "trailing bytes after stretch-(4k-1) oracle");
  return o;
}

}  // namespace vicinity
