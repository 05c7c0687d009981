#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "vicinity/landmark_tail.hpp"
#include "vicinity/query_result.hpp"

namespace vicinity {

enum class Variant : std::uint8_t { onfly, stored };

inline const char* to_string(Variant v) { return v == Variant::onfly ? "onfly" : "stored"; }

// How an oracle builder draws its landmarks and checks its size.
struct LandmarkOptions {
  double alpha = 1.0;
  SamplingSpec sampling = SamplingSpec::degree(1.0);
  double size_constant = 4.0;  // Las Vegas bound = size_constant * formula
  std::size_t max_attempts = 16;
};

inline LandmarkOptions landmark_options(double alpha, SamplingSpec spec) {
  LandmarkOptions o;
  o.alpha = alpha;
  o.sampling = std::move(spec);
  return o;
}

namespace detail {

// Ball and vicinity of v: read from `stored` when present, else computed
// into `scratch`.
inline const Neighborhood& neighborhood_of(const Graph& g, const LandmarkSet& L,
                                           const std::vector<Neighborhood>& stored, NodeId v,
                                           Neighborhood& scratch, SearchWorkspace* ws) {
  if (!stored.empty()) return stored[v];
  scratch = compute_neighborhood(g, v, L, ws);
  return scratch;
}

inline std::vector<Neighborhood> all_neighborhoods(const Graph& g, const LandmarkSet& L) {
  std::vector<Neighborhood> out;
  out.reserve(g.node_count());
  SearchWorkspace ws(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) out.push_back(compute_neighborhood(g, v, L, &ws));
  return out;
}

inline std::size_t neighborhood_entries(const std::vector<Neighborhood>& nbs) {
  std::size_t total = 0;
  for (const auto& nb : nbs) total += nb.ball.ball.size() + nb.vicinity.vicinity.size() + nb.vicinity.relays.size();
  return total;
}

inline constexpr std::uint64_t kLandmarkTag = name_tag("landmarks");
inline constexpr std::uint64_t kSubOracleTag = name_tag("sub-oracle");

// Membership and intersection steps shared by the stretch-2 and
// stretch-(4k-1) queries. Probes count lookups into a non-empty vicinity.
inline std::optional<QueryResult> vicinity_stage(const Neighborhood& nu, const Neighborhood& nv, bool strict_paper,
                                                 std::size_t& probes) {
  const NodeId u = nu.ball.node;
  const NodeId v = nv.ball.node;
  if (!nu.vicinity.vicinity.empty()) {
    ++probes;
    if (const Reach* r = nu.vicinity.vicinity.find(v)) return QueryResult{r->dist, Branch::direct_vicinity, v, probes, {}};
  }
  if (!nv.vicinity.vicinity.empty()) {
    ++probes;
    if (const Reach* r = nv.vicinity.vicinity.find(u)) return QueryResult{r->dist, Branch::direct_vicinity, u, probes, {}};
  }
  const auto a = intersect(nu.ball.ball, nv.vicinity.vicinity);
  probes += a.probes;
  if (a.hit) return QueryResult{a.hit->dsum, Branch::ball_vicinity, a.hit->best, probes, {}};
  if (!strict_paper) {
    const auto b = intersect(nv.ball.ball, nu.vicinity.vicinity);
    probes += b.probes;
    if (b.hit) return QueryResult{b.hit->dsum, Branch::ball_vicinity, b.hit->best, probes, {}};
  }
  return std::nullopt;
}

// Evaluation variant: memberships, then Γ(u) ∩ Γ(v). No stretch guarantee.
inline std::optional<QueryResult> vicinity_vicinity_stage(const Neighborhood& nu, const Neighborhood& nv,
                                                          std::size_t& probes) {
  const NodeId u = nu.ball.node;
  const NodeId v = nv.ball.node;
  if (!nu.vicinity.vicinity.empty()) {
    ++probes;
    if (const Reach* r = nu.vicinity.vicinity.find(v)) return QueryResult{r->dist, Branch::direct_vicinity, v, probes, {}};
  }
  if (!nv.vicinity.vicinity.empty()) {
    ++probes;
    if (const Reach* r = nv.vicinity.vicinity.find(u)) return QueryResult{r->dist, Branch::direct_vicinity, u, probes, {}};
  }
  const auto x = vicinity_vicinity_intersect(nu.vicinity, nv.vicinity);
  probes += x.probes;
  if (x.hit) return QueryResult{x.hit->dsum, Branch::vicinity_vicinity, x.hit->best, probes, {}};
  return std::nullopt;
}

// Walk for a vicinity-stage answer: u → w inside Γ(u), w → v inside Γ(v).
inline std::vector<NodeId> vicinity_stage_path(const Neighborhood& nu, const Neighborhood& nv, const QueryResult& r) {
  const NodeId u = nu.ball.node;
  const NodeId v = nv.ball.node;
  if (r.branch == Branch::direct_vicinity) {
    if (u == v) return {u};
    if (r.via == v) return reversed(chain_to_owner(nu.vicinity, v));
    return chain_to_owner(nv.vicinity, u);
  }
  return splice(reversed(chain_to_owner(nu.vicinity, r.via)), chain_to_owner(nv.vicinity, r.via));
}

}  // namespace detail

// Stretch-2 oracle: adjacency, landmark set, one full shortest-path tree per
// landmark, and ℓ(v), r_v for every node. The stored variant also keeps every
// ball and vicinity; the on-the-fly variant recomputes them per query.
class Stretch2Oracle {
 public:
  Stretch2Oracle() = default;

  static Stretch2Oracle build(std::shared_ptr<const Graph> g, LandmarkSet L, Variant variant,
                              bool strict_paper = false) {
    if (!g->connected()) throw BuildError("build_stretch2: graph is disconnected");
    if (L.empty()) throw BuildError("build_stretch2: empty landmark set");
    Stretch2Oracle o;
    o.tables_ = FullLandmarkTables(*g, L);
    o.assign_ = assign_landmarks(*g, L);
    if (variant == Variant::stored) o.stored_ = detail::all_neighborhoods(*g, L);
    o.g_ = std::move(g);
    o.L_ = std::move(L);
    o.variant_ = variant;
    o.strict_paper_ = strict_paper;
    return o;
  }

  const Graph& graph() const noexcept { return *g_; }
  std::shared_ptr<const Graph> graph_ptr() const noexcept { return g_; }
  const LandmarkSet& landmarks() const noexcept { return L_; }
  const FullLandmarkTables& tables() const noexcept { return tables_; }
  const LandmarkAssignment& assignment() const noexcept { return assign_; }
  Variant variant() const noexcept { return variant_; }
  bool strict_paper() const noexcept { return strict_paper_; }
  void set_strict_paper(bool on) noexcept { strict_paper_ = on; }
  const std::vector<Neighborhood>& stored_neighborhoods() const noexcept { return stored_; }

  NodeId landmark_of(NodeId v) const noexcept { return assign_.landmark[v]; }
  Weight radius(NodeId v) const noexcept { return assign_.radius[v]; }
  // d(ℓ, x) from the table of landmark ℓ
  Weight landmark_dist(NodeId l, NodeId x) const noexcept { return tables_.dist(L_.index_of(l), x); }

  const Neighborhood& neighborhood(NodeId v, Neighborhood& scratch, SearchWorkspace* ws = nullptr) const {
    return detail::neighborhood_of(*g_, L_, stored_, v, scratch, ws);
  }

  std::size_t size_entries() const noexcept {
    return 2 * g_->edge_count() + tables_.entries() + g_->node_count() + detail::neighborhood_entries(stored_);
  }

  // Algorithm 1, plus the symmetric B(v) ∩ Γ(u) check unless strict_paper.
  QueryResult query(NodeId u, NodeId v, SearchWorkspace* ws = nullptr) const {
    check(u, v);
    if (u == v) return QueryResult{0.0, Branch::direct_vicinity, u, 0, {}};
    Neighborhood su, sv;
    const auto& nu = neighborhood(u, su, ws);
    const auto& nv = neighborhood(v, sv, ws);
    return query_with(nu, nv);
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
    if (radius(u) <= radius(v)) {
      return QueryResult{radius(u) + landmark_dist(landmark_of(u), v), Branch::landmark_u, landmark_of(u), probes, {}};
    }
    return QueryResult{radius(v) + landmark_dist(landmark_of(v), u), Branch::landmark_v, landmark_of(v), probes, {}};
  }

  // d(u,w) + r_w + d(ℓ(w), v): the detour through w's landmark.
  Weight shortcut_length(Weight d_uw, NodeId w, NodeId v) const noexcept {
    return (d_uw + radius(w)) + landmark_dist(landmark_of(w), v);
  }

  // query() improved by the best shortcut through any w ∈ Γ(u). Every
  // evaluated shortcut adds one probe.
  QueryResult query_optimized(NodeId u, NodeId v, SearchWorkspace* ws = nullptr) const {
    check(u, v);
    if (u == v) return QueryResult{0.0, Branch::direct_vicinity, u, 0, {}};
    Neighborhood su, sv;
    const auto& nu = neighborhood(u, su, ws);
    const auto& nv = neighborhood(v, sv, ws);
    return optimize(query_with(nu, nv), nu, v);
  }

  QueryResult optimize(QueryResult base, const Neighborhood& nu, NodeId v) const {
    for (const Reach& w : nu.vicinity.vicinity) {
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

  // Concatenates stored tree chains; the walk weight equals the estimate and
  // may revisit nodes.
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
      case Branch::landmark_u:
        return splice(assign_.chain_to_landmark(u), reversed(table_chain(landmark_of(u), v)));
      case Branch::landmark_v:
        return splice(table_chain(landmark_of(v), u), reversed(assign_.chain_to_landmark(v)));
      case Branch::optimized_shortcut: {
        Neighborhood su;
        const auto& nu = neighborhood(u, su, ws);
        const NodeId w = r.via;
        return splice(splice(reversed(chain_to_owner(nu.vicinity, w)), assign_.chain_to_landmark(w)),
                      reversed(table_chain(landmark_of(w), v)));
      }
      default:
        throw ArgumentError("retrieve_path2: branch not produced by this oracle");
    }
  }

  // x, ..., l along l's table tree
  std::vector<NodeId> table_chain(NodeId l, NodeId x) const { return tables_.chain(L_.index_of(l), x); }

  void write_body(ByteWriter& w) const {
    detail::write_graph(w, *g_);
    detail::write_landmarks(w, L_);
    tables_.write(w);
    detail::write_assignment(w, assign_);
    w.u8(static_cast<std::uint8_t>(variant_));
    w.u8(strict_paper_ ? 1 : 0);
    w.seq(stored_, [&](const Neighborhood& nb) { detail::write_neighborhood(w, nb); });
  }

  static Stretch2Oracle read_body(ByteReader& r) {
    Stretch2Oracle o;
    auto g = std::make_shared<const Graph>(detail::read_graph(r));
    o.L_ = detail::read_landmarks(r, g->node_count());
    o.tables_ = FullLandmarkTables::read(r);
    o.assign_ = detail::read_assignment(r);
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

  std::shared_ptr<const Graph> g_;
  LandmarkSet L_;
  FullLandmarkTables tables_;
  LandmarkAssignment assign_;
  Variant variant_ = Variant::onfly;
  bool strict_paper_ = false;
  std::vector<Neighborhood> stored_;
};

// Claim 2 size formula: nΔ + n²/α (on the fly), nΔα + n²/α (stored), Δ = 2m/n.
inline double stretch2_size_formula(const Graph& g, double alpha, Variant variant) {
  const double n = static_cast<double>(g.node_count());
  const double n_delta = 2.0 * static_cast<double>(g.edge_count());
  return (variant == Variant::stored ? n_delta * alpha : n_delta) + n * n / alpha;
}

inline LasVegasResult<Stretch2Oracle> build_stretch2(std::shared_ptr<const Graph> g, const LandmarkOptions& opt,
                                                     Variant variant, std::uint64_t seed, bool strict_paper = false) {
  if (!g->connected()) throw BuildError("build_stretch2: graph is disconnected");
  const double bound = opt.size_constant * stretch2_size_formula(*g, opt.alpha, variant);
  const std::size_t attempts = opt.sampling.mode == SamplingMode::forced ? 1 : opt.max_attempts;
  return las_vegas_build(
      [&](std::uint64_t s) {
        auto L = sample_landmarks(*g, opt.sampling, derive_seed(s, detail::kLandmarkTag));
        return Stretch2Oracle::build(g, std::move(L), variant, strict_paper);
      },
      bound, attempts, seed);
}

inline QueryResult query2(const Stretch2Oracle& o, NodeId u, NodeId v) { return o.query(u, v); }
inline QueryResult query2_optimized(const Stretch2Oracle& o, NodeId u, NodeId v) { return o.query_optimized(u, v); }
inline std::vector<NodeId> retrieve_path2(const Stretch2Oracle& o, const QueryResult& r, NodeId u, NodeId v) {
  return o.retrieve_path(r, u, v);
}

inline std::string serialize(const Stretch2Oracle& o) {
  ByteWriter w;
  w.header({ContainerKind::stretch2, static_cast<std::uint8_t>(o.variant()), o.graph().node_count(), 0,
            o.landmarks().seed()});
  o.write_body(w);
  return w.take();
}

inline Stretch2Oracle deserialize_stretch2(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.header().kind != ContainerKind::stretch2) throw ParseError(0, "container does not hold a stretch-2 oracle");
  auto o = Stretch2Oracle::read_body(r);
  if (!r.at_end()) throw ParseError(0, "trailing bytes after stretch-2 oracle");
  return o;
}

}  // namespace vicinity
