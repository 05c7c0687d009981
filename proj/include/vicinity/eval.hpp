#pragma once

#include <cmath>
#include <map>
#include <sstream>

#include "vicinity/additive.hpp"
#include "vicinity/config.hpp"
#include "vicinity/generators.hpp"
#include "vicinity/stretch_mult.hpp"
#include "vicinity/verify.hpp"

namespace vicinity {

struct Topology {
  enum class Kind { gnm, geometric, file } kind = Kind::gnm;
  std::size_t n = 0;
  double param = 0.0;  // m for gnm, average degree for geometric
  std::string path;

  // "gnm(n,m)", "geometric(n,deg)" or "file(path)"
  static Topology parse(const std::string& text) {
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') throw ArgumentError("bad topology '" + text + "'");
    const std::string name(detail::trim(text.substr(0, open)));
    const std::string body = text.substr(open + 1, text.size() - open - 2);
    Topology t;
    if (name == "file") {
      t.kind = Kind::file;
      t.path = std::string(detail::trim(body));
      if (t.path.empty()) throw ArgumentError("file(): empty path");
      return t;
    }
    const auto args = Config::split_list(body);
    if (args.size() != 2) throw ArgumentError("topology '" + text + "' needs two arguments");
    try {
      t.n = std::stoull(args[0]);
      t.param = std::stod(args[1]);
    } catch (const std::logic_error&) {
      throw ArgumentError("bad topology arguments in '" + text + "'");
    }
    if (name == "gnm") {
      t.kind = Kind::gnm;
    } else if (name == "geometric") {
      t.kind = Kind::geometric;
    } else {
      throw ArgumentError("unknown topology '" + name + "'");
    }
    return t;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::gnm: return "gnm(" + std::to_string(n) + "," + detail::format_weight(param) + ")";
      case Kind::geometric: return "geometric(" + std::to_string(n) + "," + detail::format_weight(param) + ")";
      case Kind::file: return "file(" + path + ")";
    }
    return {};
  }

  bool unit_weight() const { return kind != Kind::geometric; }
};

// Disconnected instances are reduced to their largest component.
inline Graph make_topology(const Topology& t, std::uint64_t seed) {
  Graph g;
  switch (t.kind) {
    case Topology::Kind::gnm: g = gen_gnm(t.n, static_cast<std::size_t>(t.param), seed); break;
    case Topology::Kind::geometric: g = gen_geometric(t.n, t.param, seed); break;
    case Topology::Kind::file: g = load_graph_file(t.path); break;
  }
  if (g.node_count() == 0) throw BuildError("topology " + t.describe() + " is empty");
  if (!g.connected()) g = largest_component(g).graph;
  return g;
}

enum class SchemeKind { tz, tz_degree_sampled, rear, rear_opt, res, res_opt, additive2, additive4k };

struct Scheme {
  SchemeKind kind = SchemeKind::rear;
  std::size_t k = 0;

  static Scheme parse(const std::string& text) {
    std::string name = text;
    std::size_t k = 0;
    bool has_k = false;
    if (const auto open = text.find('('); open != std::string::npos) {
      if (text.back() != ')') throw ArgumentError("bad scheme '" + text + "'");
      name = text.substr(0, open);
      try {
        k = std::stoull(text.substr(open + 1, text.size() - open - 2));
      } catch (const std::logic_error&) {
        throw ArgumentError("bad k in scheme '" + text + "'");
      }
      if (k < 1) throw ArgumentError("scheme '" + text + "': k must be >= 1");
      has_k = true;
    }
    static const std::map<std::string, std::pair<SchemeKind, std::size_t>> names = {
        {"tz", {SchemeKind::tz, 2}},       {"tz_degree_sampled", {SchemeKind::tz_degree_sampled, 2}},
        {"rear", {SchemeKind::rear, 0}},   {"rear_opt", {SchemeKind::rear_opt, 0}},
        {"res", {SchemeKind::res, 1}},     {"res_opt", {SchemeKind::res_opt, 1}},
        {"additive2", {SchemeKind::additive2, 0}}, {"additive4k", {SchemeKind::additive4k, 1}}};
    auto it = names.find(name);
    if (it == names.end()) throw ArgumentError("unknown scheme '" + name + "'");
    Scheme s{it->second.first, it->second.second};
    if (has_k) {
      if (s.k == 0) throw ArgumentError("scheme '" + name + "' takes no k");
      s.k = k;
    }
    return s;
  }

  std::string name() const {
    static const char* base[] = {"tz", "tz_degree_sampled", "rear", "rear_opt", "res", "res_opt", "additive2",
                                 "additive4k"};
    std::string out = base[static_cast<int>(kind)];
    if (k != 0) out += "(" + std::to_string(k) + ")";
    return out;
  }

  bool uses_landmarks() const { return kind != SchemeKind::tz; }
};

enum class Profile { paper_eval, uniform, degree };

inline Profile parse_profile(const std::string& s) {
  if (s == "paper-eval") return Profile::paper_eval;
  if (s == "uniform") return Profile::uniform;
  if (s == "degree") return Profile::degree;
  throw ArgumentError("unknown sampling profile '" + s + "'");
}

inline const char* to_string(Profile p) {
  return p == Profile::paper_eval ? "paper-eval" : p == Profile::uniform ? "uniform" : "degree";
}

// Landmark probabilities per profile. paper-eval: √(log n)/α · deg(v)/log² n.
inline SamplingSpec landmark_spec(Profile p, const Graph& g, double alpha) {
  switch (p) {
    case Profile::uniform: return SamplingSpec::uniform(alpha);
    case Profile::degree: return SamplingSpec::degree(alpha, g.average_degree());
    case Profile::paper_eval: break;
  }
  const double lg = std::log2(static_cast<double>(g.node_count()));
  std::vector<double> prob(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    prob[v] = std::min(1.0, std::sqrt(lg) / alpha * static_cast<double>(g.degree(v)) / (lg * lg));
  }
  return SamplingSpec::custom(std::move(prob));
}

// First TZ level for the plain tz scheme; paper-eval samples √(log n)/α.
inline std::optional<SamplingSpec> tz_first_level_spec(Profile p, const Graph& g, double alpha) {
  if (p != Profile::paper_eval) return std::nullopt;
  const double lg = std::log2(static_cast<double>(g.node_count()));
  return SamplingSpec::custom(std::vector<double>(g.node_count(), std::min(1.0, std::sqrt(lg) / alpha)));
}

struct PairSampling {
  double source_fraction = 1.0;  // 1 means all pairs

  static PairSampling parse(const std::string& s) {
    if (s == "all") return {1.0};
    if (s.rfind("sources(", 0) == 0 && s.back() == ')') {
      const std::string body = s.substr(8, s.size() - 9);
      double f = 0;
      const auto slash = body.find('/');
      try {
        f = slash == std::string::npos ? std::stod(body)
                                       : std::stod(body.substr(0, slash)) / std::stod(body.substr(slash + 1));
      } catch (const std::logic_error&) {
        throw ArgumentError("bad pair sampling '" + s + "'");
      }
      if (!(f > 0.0 && f <= 1.0)) throw ArgumentError("source fraction must be in (0, 1]");
      return {f};
    }
    throw ArgumentError("bad pair sampling '" + s + "'");
  }

  std::string describe() const {
    return source_fraction >= 1.0 ? "all" : "sources(" + detail::format_weight(source_fraction) + ")";
  }
};

// Sorted source ids: all nodes, or round(f·n) of them drawn without replacement.
inline std::vector<NodeId> sample_sources(std::size_t n, const PairSampling& p, std::uint64_t seed) {
  std::vector<NodeId> ids(n);
  for (NodeId i = 0; i < n; ++i) ids[i] = i;
  if (p.source_fraction >= 1.0) return ids;
  const std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(p.source_fraction * n)));
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) std::swap(ids[i], ids[i + rng.below(n - i)]);
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

struct Experiment {
  Topology topology;
  std::vector<Scheme> schemes;
  double alpha = 16.0;
  std::vector<std::uint64_t> seeds{1};
  PairSampling pairs;
  Profile profile = Profile::paper_eval;
  bool exact = true;
  bool vicinity_vicinity = false;
  bool strict_paper = false;
  std::size_t cap = kDefaultVerificationCap;

  static Experiment from_config(const Config& c) {
    Experiment e;
    e.topology = Topology::parse(c.get("topology", "gnm(256,768)"));
    for (const auto& s : c.get_list("schemes", {})) e.schemes.push_back(Scheme::parse(s));
    e.alpha = c.get_double("alpha", e.alpha);
    e.seeds = c.get_uint_list("seeds", e.seeds);
    e.pairs = PairSampling::parse(c.get("pairs", "all"));
    e.profile = parse_profile(c.get("sampling", "paper-eval"));
    e.exact = c.get_bool("exact", true);
    e.vicinity_vicinity = c.get_bool("vicinity_vicinity", false);
    e.strict_paper = c.get_bool("strict_paper", false);
    e.cap = c.get_uint("cap", e.cap);
    return e;
  }
};

struct PairRow {
  std::uint64_t seed = 0;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  Weight d_exact = 0.0;  // NaN without exact comparison
  Weight w_uv = 0.0;
  Weight estimate = 0.0;
  Branch branch = Branch::direct_vicinity;
  std::size_t probes = 0;

  double stretch() const { return d_exact == 0.0 ? 1.0 : estimate / d_exact; }
  bool exact() const { return approx_eq(estimate, d_exact); }
};

struct Summary {
  std::size_t pairs = 0;
  double fraction_exact = 0.0;
  double mean_stretch = 0.0;
  double max_stretch = 0.0;
  double fraction_vicinity_intersect = 0.0;
  double mean_probes = 0.0;
  std::size_t bound_violations = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

// Largest estimate a scheme may return; nullopt when it carries no guarantee.
inline std::optional<Weight> stretch_bound(const Scheme& s, bool vicinity_vicinity, Weight d, Weight w) {
  const double k = static_cast<double>(s.k);
  switch (s.kind) {
    case SchemeKind::tz:
    case SchemeKind::tz_degree_sampled: return (2 * k - 1) * d;
    case SchemeKind::rear:
    case SchemeKind::rear_opt:
      if (vicinity_vicinity) return std::nullopt;
      return 2 * d;
    case SchemeKind::res:
    case SchemeKind::res_opt:
      if (vicinity_vicinity) return std::nullopt;
      return (4 * k - 1) * d;
    case SchemeKind::additive2: return 2 * d + w;
    case SchemeKind::additive4k: return (4 * k - 1) * d + 2 * k * w;
  }
  return std::nullopt;
}

inline bool within_bound(const Scheme& s, bool vv, const PairRow& r) {
  if (std::isnan(r.d_exact)) return true;
  if (!approx_le(r.d_exact, r.estimate)) return false;
  const auto b = stretch_bound(s, vv, r.d_exact, r.w_uv);
  return !b || approx_le(r.estimate, *b);
}

inline Summary summarize(const Scheme& s, bool vv, const std::vector<PairRow>& rows) {
  Summary out;
  out.pairs = rows.size();
  if (rows.empty()) return out;
  std::size_t exact = 0, inter = 0, probes = 0;
  double sum = 0.0;
  for (const auto& r : rows) {
    const double st = r.stretch();
    exact += r.exact() ? 1 : 0;
    inter += is_intersection_branch(r.branch) ? 1 : 0;
    probes += r.probes;
    sum += st;
    out.max_stretch = std::max(out.max_stretch, st);
    out.bound_violations += within_bound(s, vv, r) ? 0 : 1;
    if (std::isnan(st)) out.max_stretch = st;
  }
  const double n = static_cast<double>(rows.size());
  out.fraction_exact = static_cast<double>(exact) / n;
  out.mean_stretch = sum / n;
  out.fraction_vicinity_intersect = static_cast<double>(inter) / n;
  out.mean_probes = static_cast<double>(probes) / n;
  return out;
}

// Thresholds 1.00, 1.05, ..., 3.00 → fraction of pairs with larger stretch.
inline std::vector<std::pair<double, double>> complementary_cdf(const std::vector<PairRow>& rows) {
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i <= 40; ++i) {
    const double t = 1.0 + 0.05 * i;
    std::size_t above = 0;
    for (const auto& r : rows) {
      const double st = r.stretch();
      above += (st > t && !approx_eq(st, t)) ? 1 : 0;
    }
    out.emplace_back(t, rows.empty() ? 0.0 : static_cast<double>(above) / static_cast<double>(rows.size()));
  }
  return out;
}

struct SchemeReport {
  Scheme scheme;
  std::vector<PairRow> rows;  // by seed, then (src, dst)
  std::vector<std::pair<std::uint64_t, Summary>> per_seed;
  Summary overall;
};

struct StretchReport {
  std::vector<SchemeReport> schemes;
  bool vicinity_vicinity = false;
};

inline void finalize(StretchReport& rep) {
  for (auto& sr : rep.schemes) {
    sr.per_seed.clear();
    std::size_t i = 0;
    while (i < sr.rows.size()) {
      std::size_t j = i;
      while (j < sr.rows.size() && sr.rows[j].seed == sr.rows[i].seed) ++j;
      std::vector<PairRow> part(sr.rows.begin() + static_cast<std::ptrdiff_t>(i),
                                sr.rows.begin() + static_cast<std::ptrdiff_t>(j));
      sr.per_seed.emplace_back(sr.rows[i].seed, summarize(sr.scheme, rep.vicinity_vicinity, part));
      i = j;
    }
    sr.overall = summarize(sr.scheme, rep.vicinity_vicinity, sr.rows);
  }
}

namespace detail {

inline constexpr std::uint64_t kEvalLandmarkTag = name_tag("eval-landmarks");
inline constexpr std::uint64_t kEvalTzTag = name_tag("eval-tz");
inline constexpr std::uint64_t kEvalSourceTag = name_tag("eval-sources");

// Everything one seed needs: the graph, its landmark set, and lazily built
// oracles shared by the plain and optimized forms of a scheme.
class SeedContext {
 public:
  SeedContext(const Experiment& e, std::uint64_t seed)
      : e_(e), seed_(seed), g_(std::make_shared<const Graph>(make_topology(e.topology, seed))) {
    if (e.exact && g_->node_count() > e.cap) {
      throw ArgumentError("graph has " + std::to_string(g_->node_count()) + " nodes, above the verification cap " +
                          std::to_string(e.cap) + "; pass --no-exact to skip exact comparison");
    }
    if (e.alpha < 1.0 || e.alpha > static_cast<double>(g_->node_count())) {
      throw ArgumentError("alpha must lie in [1, n]");
    }
    sources_ = sample_sources(g_->node_count(), e.pairs, derive_seed(seed, kEvalSourceTag));
  }

  const Graph& graph() const { return *g_; }
  std::shared_ptr<const Graph> graph_ptr() const { return g_; }
  const std::vector<NodeId>& sources() const { return sources_; }

  const LandmarkSet& landmarks() {
    if (!L_) L_ = sample_landmarks(*g_, landmark_spec(e_.profile, *g_, e_.alpha), derive_seed(seed_, kEvalLandmarkTag));
    return *L_;
  }

  const Stretch2Oracle& rear() {
    if (!rear_) rear_ = Stretch2Oracle::build(g_, landmarks(), Variant::stored, e_.strict_paper);
    return *rear_;
  }

  const StretchMultOracle& res(std::size_t k) {
    auto it = res_.find(k);
    if (it == res_.end()) {
      it = res_.emplace(k, StretchMultOracle::build(g_, landmarks(), k, Variant::stored, seed_, e_.strict_paper)).first;
    }
    return it->second;
  }

  const TZOracle& tz(std::size_t k, bool degree_sampled) {
    auto& cache = degree_sampled ? tz_degree_ : tz_;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    const std::uint64_t s = derive_seed(seed_, kEvalTzTag);
    TZOracle o;
    if (degree_sampled) {
      o = TZOracle::build(*g_, k, s, k >= 2 ? &landmarks().members() : nullptr);
    } else if (auto spec = tz_first_level_spec(e_.profile, *g_, e_.alpha); spec && k >= 2) {
      const auto first = sample_landmarks(*g_, *spec, derive_seed(s, kEvalLandmarkTag));
      o = TZOracle::build(*g_, k, s, &first.members());
    } else {
      o = TZOracle::build(*g_, k, s);
    }
    return cache.emplace(k, std::move(o)).first->second;
  }

  const AdditiveOracle& additive(AdditiveMode mode, std::size_t k) {
    const auto key = std::make_pair(static_cast<int>(mode), k);
    auto it = additive_.find(key);
    if (it == additive_.end()) it = additive_.emplace(key, AdditiveOracle::build(*g_, landmarks(), mode, k, seed_)).first;
    return it->second;
  }

 private:
  const Experiment& e_;
  std::uint64_t seed_;
  std::shared_ptr<const Graph> g_;
  std::vector<NodeId> sources_;
  std::optional<LandmarkSet> L_;
  std::optional<Stretch2Oracle> rear_;
  std::map<std::size_t, StretchMultOracle> res_;
  std::map<std::size_t, TZOracle> tz_, tz_degree_;
  std::map<std::pair<int, std::size_t>, AdditiveOracle> additive_;
};

// One scheme's answer for (u, v), with u's stored neighborhood at hand.
inline QueryResult answer(SeedContext& ctx, const Experiment& e, const Scheme& s, NodeId u, NodeId v) {
  switch (s.kind) {
    case SchemeKind::tz:
    case SchemeKind::tz_degree_sampled: {
      const auto t = ctx.tz(s.k, s.kind == SchemeKind::tz_degree_sampled).query(u, v);
      return QueryResult{t.estimate, Branch::tz, t.final_witness, t.probes, {}};
    }
    case SchemeKind::rear:
    case SchemeKind::rear_opt: {
      const auto& o = ctx.rear();
      const auto& nb = o.stored_neighborhoods();
      auto r = e.vicinity_vicinity ? o.query_vicinity_vicinity(nb[u], nb[v]) : o.query_with(nb[u], nb[v]);
      return s.kind == SchemeKind::rear_opt && u != v ? o.optimize(r, nb[u], v) : r;
    }
    case SchemeKind::res:
    case SchemeKind::res_opt: {
      const auto& o = ctx.res(s.k);
      const auto& nb = o.stored_neighborhoods();
      auto r = e.vicinity_vicinity ? o.query_vicinity_vicinity(nb[u], nb[v]) : o.query_with(nb[u], nb[v]);
      return s.kind == SchemeKind::res_opt && u != v ? o.optimize(r, nb[u], v) : r;
    }
    case SchemeKind::additive2: return ctx.additive(AdditiveMode::two_plus, 0).query(u, v);
    case SchemeKind::additive4k: return ctx.additive(AdditiveMode::fourk_plus, s.k).query(u, v);
  }
  throw std::logic_error("unhandled scheme");
}

}  // namespace detail

// Every scheme on every seed's topology, over the sampled (src, dst) pairs,
// src != dst, against exact distances and shortest-path bottlenecks.
inline StretchReport run_experiment(const Experiment& e) {
  StretchReport rep;
  rep.vicinity_vicinity = e.vicinity_vicinity;
  for (const auto& s : e.schemes) rep.schemes.push_back(SchemeReport{s, {}, {}, {}});
  if (e.schemes.empty()) return rep;
  for (std::uint64_t seed : e.seeds) {
    detail::SeedContext ctx(e, seed);
    const Graph& g = ctx.graph();
    for (NodeId u : ctx.sources()) {
      BottleneckRow truth;
      if (e.exact) truth = shortest_path_bottlenecks(g, u);
      for (std::size_t si = 0; si < e.schemes.size(); ++si) {
        auto& rows = rep.schemes[si].rows;
        for (NodeId v = 0; v < g.node_count(); ++v) {
          if (v == u) continue;
          const auto r = detail::answer(ctx, e, e.schemes[si], u, v);
          PairRow row;
          row.seed = seed;
          row.src = u;
          row.dst = v;
          row.d_exact = e.exact ? truth.dist[v] : std::nan("");
          row.w_uv = e.exact ? truth.heaviest[v] : std::nan("");
          row.estimate = r.estimate;
          row.branch = r.branch;
          row.probes = r.probes;
          rows.push_back(row);
        }
      }
    }
  }
  finalize(rep);
  return rep;
}

enum class ProbeOrderKind { farthest_first, closest_first };

struct ProbeCurve {
  std::string scheme;
  ProbeOrderKind order;
  std::vector<std::pair<std::size_t, double>> points;  // budget → mean stretch
};

// Mean stretch after the plain answer is improved with the first b shortcut
// candidates in the given order: Γ(u) for rear, B(u) for res.
inline std::vector<ProbeCurve> stretch_vs_probes(const Experiment& e, std::vector<std::size_t> budgets) {
  if (!e.exact) throw ArgumentError("stretch_vs_probes needs exact distances");
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  std::vector<std::string> families;
  for (const auto& s : e.schemes) {
    std::string f;
    if (s.kind == SchemeKind::rear || s.kind == SchemeKind::rear_opt) f = "rear";
    if (s.kind == SchemeKind::res || s.kind == SchemeKind::res_opt) f = "res(" + std::to_string(s.k) + ")";
    if (!f.empty() && std::find(families.begin(), families.end(), f) == families.end()) families.push_back(f);
  }
  std::vector<ProbeCurve> curves;
  for (const auto& f : families) {
    for (auto order : {ProbeOrderKind::farthest_first, ProbeOrderKind::closest_first}) {
      curves.push_back({f, order, {}});
      for (auto b : budgets) curves.back().points.emplace_back(b, 0.0);
    }
  }
  std::size_t pairs = 0;
  for (std::uint64_t seed : e.seeds) {
    detail::SeedContext ctx(e, seed);
    const Graph& g = ctx.graph();
    for (NodeId u : ctx.sources()) {
      const auto truth = shortest_path_bottlenecks(g, u);
      for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const bool rear = families[fi] == "rear";
        const std::size_t k = rear ? 0 : Scheme::parse(families[fi]).k;
        const Neighborhood& nu = rear ? ctx.rear().stored_neighborhoods()[u] : ctx.res(k).stored_neighborhoods()[u];
        std::vector<Reach> cands = rear ? nu.vicinity.vicinity.entries() : nu.ball.ball.entries();
        for (int oi = 0; oi < 2; ++oi) {
          auto& curve = curves[fi * 2 + static_cast<std::size_t>(oi)];
          std::stable_sort(cands.begin(), cands.end(), [&](const Reach& a, const Reach& b) {
            return oi == 0 ? a.dist > b.dist : a.dist < b.dist;
          });
          for (NodeId v = 0; v < g.node_count(); ++v) {
            if (v == u) continue;
            const auto& nb = rear ? ctx.rear().stored_neighborhoods() : ctx.res(k).stored_neighborhoods();
            Weight best = rear ? ctx.rear().query_with(nu, nb[v]).estimate : ctx.res(k).query_with(nu, nb[v]).estimate;
            std::size_t used = 0;
            for (auto& [budget, sum] : curve.points) {
              for (; used < std::min(budget, cands.size()); ++used) {
                const auto& w = cands[used];
                const Weight s = rear ? ctx.rear().shortcut_length(w.dist, w.node, v)
                                      : ctx.res(k).shortcut_length(w.dist, w.node, v);
                best = std::min(best, s);
              }
              sum += best / truth.dist[v];
            }
          }
        }
      }
      pairs += g.node_count() - 1;
    }
  }
  for (auto& c : curves)
    for (auto& p : c.points) p.second /= static_cast<double>(std::max<std::size_t>(pairs, 1));
  return curves;
}

inline constexpr const char* kReportCsvHeader = "scheme,seed,src,dst,d_exact,w_uv,estimate,stretch,branch,probes";

inline std::string report_csv(const StretchReport& rep) {
  std::ostringstream os;
  os << kReportCsvHeader << '\n';
  for (const auto& sr : rep.schemes) {
    const std::string name = sr.scheme.name();
    for (const auto& r : sr.rows) {
      os << '"' << name << "\"," << r.seed << ',' << r.src << ',' << r.dst << ',' << format_double(r.d_exact) << ','
         << format_double(r.w_uv) << ',' << format_double(r.estimate) << ',' << format_double(r.stretch()) << ','
         << to_string(r.branch) << ',' << r.probes << '\n';
    }
  }
  return os.str();
}

// Inverse of report_csv; schemes appear in first-seen order.
inline StretchReport load_report_csv(std::string_view text, bool vicinity_vicinity = false) {
  StretchReport rep;
  rep.vicinity_vicinity = vicinity_vicinity;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || detail::trim(line) != kReportCsvHeader) throw ParseError(1, "missing report header");
  ++line_no;
  std::map<std::string, std::size_t> index;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (line.empty() || line[0] != '"') throw ParseError(line_no, "expected quoted scheme name");
    const auto close = line.find('"', 1);
    if (close == std::string::npos || close + 1 >= line.size() || line[close + 1] != ',') {
      throw ParseError(line_no, "bad scheme field");
    }
    const std::string name = line.substr(1, close - 1);
    std::vector<std::string> f;
    std::stringstream rest(line.substr(close + 2));
    for (std::string item; std::getline(rest, item, ',');) f.push_back(item);
    if (f.size() != 9) throw ParseError(line_no, "expected 10 columns");
    auto it = index.find(name);
    if (it == index.end()) {
      it = index.emplace(name, rep.schemes.size()).first;
      rep.schemes.push_back(SchemeReport{Scheme::parse(name), {}, {}, {}});
    }
    PairRow r;
    try {
      r.seed = std::stoull(f[0]);
      r.src = static_cast<NodeId>(std::stoul(f[1]));
      r.dst = static_cast<NodeId>(std::stoul(f[2]));
      r.d_exact = std::stod(f[3]);
      r.w_uv = std::stod(f[4]);
      r.estimate = std::stod(f[5]);
      const auto b = parse_branch(f[7]);
      if (!b) throw ParseError(line_no, "unknown branch '" + f[7] + "'");
      r.branch = *b;
      r.probes = std::stoull(f[8]);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(line_no, std::string("bad field: ") + ex.what());
    }
    rep.schemes[it->second].rows.push_back(r);
  }
  finalize(rep);
  return rep;
}

inline std::string summary_text(const StretchReport& rep) {
  std::ostringstream os;
  auto line = [&](const Summary& s) {
    os << "pairs=" << s.pairs << " fraction_exact=" << format_double(s.fraction_exact)
       << " mean_stretch=" << format_double(s.mean_stretch) << " max_stretch=" << format_double(s.max_stretch)
       << " fraction_vicinity_intersect=" << format_double(s.fraction_vicinity_intersect)
       << " mean_probes=" << format_double(s.mean_probes) << " bound_violations=" << s.bound_violations << '\n';
  };
  for (const auto& sr : rep.schemes) {
    os << "scheme " << sr.scheme.name() << '\n' << "  overall ";
    line(sr.overall);
    for (const auto& [seed, s] : sr.per_seed) {
      os << "  seed " << seed << ' ';
      line(s);
    }
    os << "  ccdf";
    for (const auto& [t, frac] : complementary_cdf(sr.rows)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " %.2f:%.6f", t, frac);
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

inline std::string curves_csv(const std::vector<ProbeCurve>& curves) {
  std::ostringstream os;
  os << "scheme,order,budget,mean_stretch\n";
  for (const auto& c : curves) {
    for (const auto& [b, m] : c.points) {
      os << '"' << c.scheme << "\"," << (c.order == ProbeOrderKind::farthest_first ? "farthest_first" : "closest_first")
         << ',' << b << ',' << format_double(m) << '\n';
    }
  }
  return os.str();
}

inline std::size_t total_violations(const StretchReport& rep) {
  std::size_t v = 0;
  for (const auto& sr : rep.schemes) v += sr.overall.bound_violations;
  return v;
}

}  // namespace vicinity
