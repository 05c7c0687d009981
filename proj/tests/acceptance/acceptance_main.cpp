// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support/brute_force.hpp"
#include "support/corpus.hpp"
#include "vicinity/vicinity.hpp"

using namespace vicinity;
using namespace vicinity::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d %-34s %s  %s (%.1fs)\n", id, title, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- shared corpus ----

struct Instance {
  std::shared_ptr<const Graph> g;
  bool unit_weight = true;
  std::string name;
  DistanceMatrix d;  // Floyd-Warshall
  DistanceMatrix w;  // heaviest edge on the lightest-bottleneck shortest path
};

std::vector<Instance> build_corpus() {
  std::vector<Instance> out;
  auto add = [&](Graph g, bool unit, std::string name) {
    if (!g.connected()) g = largest_component(g).graph;
    Instance in;
    in.d = floyd_warshall(g);
    in.w = heaviest_edge_matrix(g);
    in.g = std::make_shared<const Graph>(std::move(g));
    in.unit_weight = unit;
    in.name = std::move(name);
    out.push_back(std::move(in));
  };
  for (std::uint64_t s = 0; s < 50; ++s) add(gen_gnm(256, 768, 1000 + s), true, "gnm-" + std::to_string(s));
  for (std::uint64_t s = 0; s < 20; ++s) add(gen_geometric(256, 6.0, 2000 + s), false, "geo-" + std::to_string(s));
  return out;
}

constexpr double kAlphas[] = {2.0, 16.0, 64.0};
constexpr std::uint64_t kSeeds = 5;

struct CorpusTally {
  std::size_t instances = 0, pairs = 0;
  // 1
  std::size_t s2_viol = 0;
  double s2_max = 1.0;
  // 2
  std::size_t claim_pairs = 0, claim_viol = 0;
  // 3
  std::size_t bv_empty = 0, bv_viol = 0, bb_empty = 0, bb_viol = 0;
  // 4
  std::size_t mult_viol[3] = {0, 0, 0};
  double mult_max[3] = {1.0, 1.0, 1.0};
  // 5
  std::size_t add2_viol = 0, add4_viol[3] = {0, 0, 0}, add_unit_pairs = 0, add_unit_viol = 0;
  // 6
  std::size_t tz_pairs = 0, tz_viol[4] = {0, 0, 0, 0}, tz1_inexact = 0, sub_pairs = 0, sub_viol = 0;
  // 12
  std::size_t s2_probe_viol = 0, add_probe_viol = 0, s2_probe_max = 0, add_probe_max = 0;
  std::string first_failure;

  void note(const std::string& what) {
    if (first_failure.empty()) first_failure = what;
  }
};

std::string pair_tag(const Instance& in, double alpha, std::uint64_t seed, NodeId u, NodeId v) {
  return fmt("%s a=%g s=%llu (%u,%u)", in.name.c_str(), alpha, static_cast<unsigned long long>(seed), u, v);
}

void run_instance(const Instance& in, double alpha, std::uint64_t seed, CorpusTally& t) {
  const Graph& g = *in.g;
  const std::size_t n = g.node_count();
  ++t.instances;

  const auto L = sample_landmarks(g, SamplingSpec::degree(alpha), derive_seed(seed, name_tag("acc-landmarks")));
  const auto s2 = Stretch2Oracle::build(in.g, L, Variant::onfly);
  std::vector<Neighborhood> nbs(n);
  SearchWorkspace ws(n);
  for (NodeId v = 0; v < n; ++v) {
    Neighborhood scratch;
    nbs[v] = s2.neighborhood(v, scratch, &ws);
  }
  StretchMultOracle mult[3];
  for (std::size_t k = 1; k <= 2; ++k) mult[k] = StretchMultOracle::build(in.g, L, k, Variant::onfly, seed);

  const auto Lu = sample_landmarks(g, SamplingSpec::uniform(alpha), derive_seed(seed, name_tag("acc-additive")));
  const auto add2 = AdditiveOracle::build(g, Lu, AdditiveMode::two_plus, 0, seed);
  AdditiveOracle add4[3];
  for (std::size_t k = 1; k <= 2; ++k) add4[k] = AdditiveOracle::build(g, Lu, AdditiveMode::fourk_plus, k, seed);
  std::vector<BallInfo> ubs(n);
  for (NodeId v = 0; v < n; ++v) ubs[v] = compute_ball(g, v, Lu, &ws);

  for (NodeId u = 0; u < n; ++u) {
    const auto& nu = nbs[u];
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      ++t.pairs;
      const auto& nv = nbs[v];
      const Weight d = in.d.at(u, v);
      const Weight w = in.w.at(u, v);
      const Weight ru = nu.ball.radius, rv = nv.ball.radius;

      const auto q = s2.query_with(nu, nv);
      if (!approx_le(d, q.estimate) || !approx_le(q.estimate, 2 * d)) {
        ++t.s2_viol;
        t.note("stretch-2 " + pair_tag(in, alpha, seed, u, v));
      }
      t.s2_max = std::max(t.s2_max, q.estimate / d);
      if (d < ru + rv && !approx_eq(d, ru + rv)) {
        ++t.claim_pairs;
        if (!approx_eq(q.estimate, d)) {
          ++t.claim_viol;
          t.note("exactness " + pair_tag(in, alpha, seed, u, v));
        }
      }
      const std::size_t probe_cap = nu.ball.ball.size() + nu.vicinity.vicinity.size() + nv.vicinity.vicinity.size();
      t.s2_probe_max = std::max(t.s2_probe_max, q.probes);
      if (q.probes > probe_cap) ++t.s2_probe_viol;

      if (!ball_vicinity_intersect(nu.ball, nv.vicinity).hit) {
        ++t.bv_empty;
        if (!approx_le(ru + rv, d)) ++t.bv_viol;
      }
      const std::pair<const BallInfo*, const BallInfo*> ball_pairs[] = {{&nu.ball, &nv.ball}, {&ubs[u], &ubs[v]}};
      for (const auto& [bu, bv] : ball_pairs) {
        if (!ball_ball_intersect(*bu, *bv).hit) {
          ++t.bb_empty;
          if (!approx_le(bu->radius + bv->radius - w, d)) ++t.bb_viol;
        }
      }

      for (std::size_t k = 1; k <= 2; ++k) {
        const auto r = mult[k].query_with(nu, nv);
        if (!approx_le(d, r.estimate) || !approx_le(r.estimate, (4.0 * k - 1) * d)) {
          ++t.mult_viol[k];
          t.note(fmt("mult k=%zu ", k) + pair_tag(in, alpha, seed, u, v));
        }
        t.mult_max[k] = std::max(t.mult_max[k], r.estimate / d);
      }

      const auto a2 = add2.query(u, v);
      if (!approx_le(d, a2.estimate) || !approx_le(a2.estimate, 2 * d + w)) {
        ++t.add2_viol;
        t.note("additive two_plus " + pair_tag(in, alpha, seed, u, v));
      }
      if (in.unit_weight) {
        ++t.add_unit_pairs;
        if (!approx_le(a2.estimate, 2 * d + 1)) ++t.add_unit_viol;
      }
      const std::size_t add_cap = ubs[u].ball.size() + 2;
      t.add_probe_max = std::max(t.add_probe_max, a2.probes);
      if (a2.probes > add_cap) ++t.add_probe_viol;
      for (std::size_t k = 1; k <= 2; ++k) {
        const auto a4 = add4[k].query(u, v);
        const double kk = static_cast<double>(k);
        if (!approx_le(d, a4.estimate) || !approx_le(a4.estimate, (4 * kk - 1) * d + 2 * kk * w)) {
          ++t.add4_viol[k];
          t.note(fmt("additive fourk k=%zu ", k) + pair_tag(in, alpha, seed, u, v));
        }
        if (a4.probes > add_cap) ++t.add_probe_viol;
      }
    }
  }

  // sub-oracle on the landmark graph
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto& sub = mult[k].sub();
    const auto& lm = L.members();
    for (std::size_t a = 0; a < lm.size(); ++a)
      for (std::size_t b = 0; b < lm.size(); ++b) {
        if (a == b) continue;
        ++t.sub_pairs;
        const Weight d = in.d.at(lm[a], lm[b]);
        const Weight e = sub.query(a, b).estimate;
        if (!approx_le(d, e) || !approx_le(e, (2.0 * k - 1) * d)) ++t.sub_viol;
      }
  }
}

void run_tz(const Instance& in, std::uint64_t seed, CorpusTally& t) {
  const std::size_t n = in.g->node_count();
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto o = TZOracle::build(*in.g, k, derive_seed(seed, name_tag("acc-tz")));
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        ++t.tz_pairs;
        const Weight d = in.d.at(u, v);
        const Weight e = o.query(u, v).estimate;
        if (!approx_le(d, e) || !approx_le(e, (2.0 * k - 1) * d)) ++t.tz_viol[k];
        if (k == 1 && !approx_eq(e, d)) ++t.tz1_inexact;
      }
  }
}

// ---- criterion 7 ----

Outcome reduction() {
  std::size_t graphs = 0, worst_nodes = 0, bad = 0;
  double worst_ratio = 0.0;
  for (double delta : {1.0, 2.0, 4.0}) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const std::size_t n = 128;
      const Graph g = gen_gnm(n, static_cast<std::size_t>(n * delta / 2), 7000 + s * 7 + static_cast<std::uint64_t>(delta));
      const auto rg = reduce(g, delta);
      ++graphs;
      const auto rep = distance_preservation_check(g, rg);
      const std::size_t nd = rg.gd.node_count();
      worst_nodes = std::max(worst_nodes, nd);
      worst_ratio = std::max(worst_ratio, static_cast<double>(nd) / static_cast<double>(n));
      if (rep.max_discrepancy != 0.0 || nd > 2 * n) ++bad;
    }
  }
  return {bad == 0, fmt("graphs=%zu failing=%zu max|V_D|/n=%.3f", graphs, bad, worst_ratio)};
}

// ---- criterion 8 ----

Outcome size_audits() {
  const double alpha = 32.0;
  const double limit = 4.0;
  double worst[5] = {0, 0, 0, 0, 0};  // onfly, stored, mult onfly, mult stored, additive
  double worst_sigma = 0.0, worst_ball = 0.0;
  std::size_t bad = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Graph raw = gen_gnm(1024, 3072, 9000 + s);
    if (!raw.connected()) raw = largest_component(raw).graph;
    const auto g = std::make_shared<const Graph>(std::move(raw));
    const double n = static_cast<double>(g->node_count());
    for (const auto& spec : {SamplingSpec::degree(alpha), SamplingSpec::uniform(alpha)}) {
      const auto L = sample_landmarks(*g, spec, derive_seed(s, name_tag("acc-size")));
      const auto p = sampling_probabilities(*g, spec);
      double mean = 0.0, var = 0.0;
      for (double x : p) {
        mean += x;
        var += x * (1 - x);
      }
      const double z = std::abs(static_cast<double>(L.size()) - mean) / std::sqrt(var);
      worst_sigma = std::max(worst_sigma, z);
      if (z > 4.0) ++bad;
      double ball_sum = 0.0;
      SearchWorkspace ws(g->node_count());
      for (NodeId v = 0; v < g->node_count(); ++v) ball_sum += static_cast<double>(compute_ball(*g, v, L, &ws).ball.size());
      worst_ball = std::max(worst_ball, ball_sum / n / alpha);
      if (ball_sum / n > 3 * alpha) ++bad;
      if (spec.mode == SamplingMode::uniform) {
        const auto a = AdditiveOracle::build(*g, L, AdditiveMode::two_plus, 0, s);
        const double r = static_cast<double>(a.size_entries()) / additive_size_formula(*g, alpha, AdditiveMode::two_plus, 0);
        worst[4] = std::max(worst[4], r);
        if (r > limit) ++bad;
        continue;
      }
      int i = 0;
      for (Variant var_ : {Variant::onfly, Variant::stored}) {
        const auto o = Stretch2Oracle::build(g, L, var_);
        const double r = static_cast<double>(o.size_entries()) / stretch2_size_formula(*g, alpha, var_);
        worst[i] = std::max(worst[i], r);
        if (r > limit) ++bad;
        const auto m = StretchMultOracle::build(g, L, 1, var_, s);
        const double rm = static_cast<double>(m.size_entries()) / mult_size_formula(*g, alpha, 1, var_);
        worst[2 + i] = std::max(worst[2 + i], rm);
        if (rm > limit) ++bad;
        ++i;
      }
    }
  }
  return {bad == 0, fmt("max size/formula: s2 onfly %.2f stored %.2f, mult onfly %.2f stored %.2f, additive %.2f; "
                        "max |L| deviation %.2f sigma; max mean|B|/alpha %.2f",
                        worst[0], worst[1], worst[2], worst[3], worst[4], worst_sigma, worst_ball)};
}

// ---- criterion 9 ----

Outcome fig1_ordering() {
  Experiment e;
  e.topology = Topology::parse("gnm(4096,12288)");
  e.schemes = {Scheme::parse("rear"), Scheme::parse("tz_degree_sampled(2)"), Scheme::parse("tz(2)")};
  e.alpha = 64;
  e.profile = Profile::paper_eval;
  e.pairs = PairSampling::parse("sources(1/4)");
  std::size_t ordered = 0, seeds = 0;
  std::ostringstream per;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    detail::SeedContext ctx(e, seed);
    const Graph& g = ctx.graph();
    std::size_t exact[3] = {0, 0, 0}, pairs = 0;
    for (NodeId u : ctx.sources()) {
      const auto truth = shortest_path_bottlenecks(g, u);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (v == u) continue;
        ++pairs;
        for (std::size_t i = 0; i < 3; ++i)
          exact[i] += approx_eq(detail::answer(ctx, e, e.schemes[i], u, v).estimate, truth.dist[v]) ? 1 : 0;
      }
    }
    double f[3];
    for (std::size_t i = 0; i < 3; ++i) f[i] = static_cast<double>(exact[i]) / static_cast<double>(pairs);
    ++seeds;
    if (f[0] > f[1] && f[1] > f[2]) ++ordered;
    per << fmt(" s%llu=%.3f/%.3f/%.3f", static_cast<unsigned long long>(seed), f[0], f[1], f[2]);
  }
  return {ordered >= 9, fmt("ordered seeds=%zu/%zu (rear/tz_d/tz):", ordered, seeds) + per.str()};
}

// ---- criterion 10 ----

Outcome routing(const std::vector<Instance>& corpus) {
  std::size_t flows = 0, stretch_bad = 0, packet_bad = 0, mono_bad = 0, full_bad = 0, ps_flows = 0;
  double worst = 1.0;
  const std::size_t budgets[] = {0, 1, 2, 4, 8};
  for (const auto& in : corpus) {
    const std::size_t n = in.g->node_count();
    for (double alpha : kAlphas) {
      for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        DeployOptions opt;
        opt.alpha = alpha;
        opt.sampling = SamplingSpec::degree(alpha);
        const auto net = deploy(in.g, opt, seed);
        for (NodeId src = static_cast<NodeId>(seed % 8); src < n; src += 8) {
          const auto& nb = net.oracle.stored_neighborhoods()[src];
          for (NodeId dst = 0; dst < n; ++dst) {
            if (dst == src) continue;
            const auto f = handshake(net, src, dst, in.d.at(src, dst));
            if (!f.completed) continue;
            ++flows;
            worst = std::max(worst, f.final_stretch);
            if (!approx_le(f.final_len, 2 * f.d_exact)) ++stretch_bad;
            if (4 * nb.ball.ball.size() <= 1500 && f.handshake_packets > 2) ++packet_bad;
            if (dst % 16 != src % 16) continue;
            ++ps_flows;
            for (ProbeOrder order : {ProbeOrder::farthest_first, ProbeOrder::closest_first}) {
              double prev = f.final_stretch;
              for (std::size_t b : budgets) {
                const auto p = probe_and_shortcut(net, f, order, b);
                if (p.final_stretch > prev && !approx_eq(p.final_stretch, prev)) ++mono_bad;
                prev = p.final_stretch;
              }
              const auto full = probe_and_shortcut(net, f, order, nb.vicinity.vicinity.size());
              if (full.final_stretch > prev && !approx_eq(full.final_stretch, prev)) ++mono_bad;
              if (full.result.estimate != net.oracle.query_optimized(src, dst).estimate) ++full_bad;
            }
          }
        }
      }
    }
  }
  const bool ok = stretch_bad == 0 && packet_bad == 0 && mono_bad == 0 && full_bad == 0;
  return {ok, fmt("flows=%zu stretch>2=%zu max=%.3f packets>2=%zu; P&S flows=%zu non-monotone=%zu full-budget mismatch=%zu",
                  flows, stretch_bad, worst, packet_bad, ps_flows, mono_bad, full_bad)};
}

// ---- criterion 11 ----

Outcome determinism() {
  std::vector<std::string> diffs;
  auto same = [&](const std::string& what, const std::string& a, const std::string& b) {
    if (a != b || a.empty()) diffs.push_back(what);
  };
  const auto g = std::make_shared<const Graph>(make_topology(Topology::parse("gnm(512,1536)"), 11));
  same("gen", to_edge_list(make_topology(Topology::parse("gnm(512,1536)"), 11)), to_edge_list(*g));
  const auto opt = landmark_options(std::sqrt(512.0), SamplingSpec::degree(std::sqrt(512.0)));
  const auto uopt = landmark_options(std::sqrt(512.0), SamplingSpec::uniform(std::sqrt(512.0)));
  auto queries = [&](auto&& q) {
    std::string out;
    for (NodeId u = 0; u < 512 && u < g->node_count(); u += 37)
      for (NodeId v = 0; v < g->node_count(); v += 53) out += query_csv_row(u, v, q(u, v)) + "\n";
    return out;
  };
  {
    const auto a = tz_build(*g, 3, 5), b = tz_build(*g, 3, 5);
    same("tz", serialize(a), serialize(b));
    const auto c = deserialize_tz(serialize(a));
    auto qa = [&](NodeId u, NodeId v) { const auto t = a.query(u, v); return QueryResult{t.estimate, Branch::tz, t.final_witness, t.probes, {}}; };
    auto qc = [&](NodeId u, NodeId v) { const auto t = c.query(u, v); return QueryResult{t.estimate, Branch::tz, t.final_witness, t.probes, {}}; };
    same("tz query", queries(qa), queries(qc));
  }
  for (Variant v : {Variant::onfly, Variant::stored}) {
    const auto a = build_stretch2(g, opt, v, 5).oracle, b = build_stretch2(g, opt, v, 5).oracle;
    same("stretch2", serialize(a), serialize(b));
    const auto c = deserialize_stretch2(serialize(a));
    same("stretch2 query", queries([&](NodeId x, NodeId y) { return query2(a, x, y); }),
         queries([&](NodeId x, NodeId y) { return query2(c, x, y); }));
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto m = build_mult(g, opt, k, v, 5).oracle, m2 = build_mult(g, opt, k, v, 5).oracle;
      same("mult", serialize(m), serialize(m2));
      const auto mc = deserialize_mult(serialize(m));
      same("mult query", queries([&](NodeId x, NodeId y) { return query_mult(m, x, y); }),
           queries([&](NodeId x, NodeId y) { return query_mult(mc, x, y); }));
    }
  }
  for (auto [mode, k] : {std::pair{AdditiveMode::two_plus, std::size_t{0}}, std::pair{AdditiveMode::fourk_plus, std::size_t{2}}}) {
    const auto a = build_additive(g, uopt, mode, k, 5).oracle, b = build_additive(g, uopt, mode, k, 5).oracle;
    same("additive", serialize(a), serialize(b));
    const auto c = deserialize_additive(serialize(a));
    same("additive query", queries([&](NodeId x, NodeId y) { return query_additive(a, x, y); }),
         queries([&](NodeId x, NodeId y) { return query_additive(c, x, y); }));
  }
  {
    Experiment e;
    e.topology = Topology::parse("gnm(256,768)");
    for (const char* s : {"tz(2)", "tz_degree_sampled(2)", "rear", "rear_opt", "res(1)", "res_opt(2)", "additive2", "additive4k(1)"})
      e.schemes.push_back(Scheme::parse(s));
    e.seeds = {1, 2};
    e.pairs = PairSampling::parse("sources(1/8)");
    e.profile = Profile::uniform;
    same("eval csv", report_csv(run_experiment(e)), report_csv(run_experiment(e)));
    same("eval summary", summary_text(run_experiment(e)), summary_text(run_experiment(e)));
  }
  {
    auto flows = [&] {
      DeployOptions d;
      d.alpha = 8;
      d.sampling = SamplingSpec::degree(8);
      const auto net = deploy(g, d, 3);
      std::string out = std::string(kFlowCsvHeader) + "\n";
      for (NodeId s = 0; s < g->node_count(); s += 41) {
        const auto dist = dijkstra(*g, s);
        for (NodeId t = 0; t < g->node_count(); t += 29)
          out += flow_csv_row(probe_and_shortcut(net, handshake(net, s, t, dist.dist[t]), ProbeOrder::farthest_first, 4)) + "\n";
      }
      return out;
    };
    same("routesim csv", flows(), flows());
  }
  std::string which;
  for (const auto& d : diffs) which += " " + d;
  return {diffs.empty(), diffs.empty() ? "graph, tz, stretch2, mult, additive, eval and flow outputs identical" : "differs:" + which};
}

}  // namespace

int main() {
  std::printf("building corpus...\n");
  std::fflush(stdout);
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = build_corpus();
  CorpusTally t;
  for (const auto& in : corpus) {
    for (double alpha : kAlphas)
      for (std::uint64_t seed = 0; seed < kSeeds; ++seed) run_instance(in, alpha, seed, t);
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) run_tz(in, seed, t);
  }
  const double corpus_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("corpus: %zu graphs, %zu oracle instances, %zu ordered pairs, %.1fs\n", corpus.size(), t.instances, t.pairs,
              corpus_secs);
  if (!t.first_failure.empty()) std::printf("first failing pair: %s\n", t.first_failure.c_str());

  report(1, "stretch-2 soundness", [&] {
    return Outcome{t.s2_viol == 0, fmt("pairs=%zu violations=%zu max stretch=%.4f", t.pairs, t.s2_viol, t.s2_max)};
  });
  report(2, "exactness below r_u + r_v", [&] {
    return Outcome{t.claim_viol == 0, fmt("qualifying pairs=%zu violations=%zu", t.claim_pairs, t.claim_viol)};
  });
  report(3, "empty-intersection lower bounds", [&] {
    return Outcome{t.bv_viol == 0 && t.bb_viol == 0, fmt("ball-vicinity empty=%zu violations=%zu; ball-ball empty=%zu violations=%zu",
                                                        t.bv_empty, t.bv_viol, t.bb_empty, t.bb_viol)};
  });
  report(4, "multiplicative 4k-1 stretch", [&] {
    const Graph w5 = fix_w5();
    const auto g5 = std::make_shared<const Graph>(w5);
    const auto L = forced(w5, {w5::l1, w5::l2});
    const double q2 = Stretch2Oracle::build(g5, L, Variant::onfly).query(w5::u, w5::v).estimate / 2.0;
    const double qm = StretchMultOracle::build(g5, L, 1, Variant::onfly, 1).query(w5::u, w5::v).estimate / 2.0;
    const bool ok = t.mult_viol[1] == 0 && t.mult_viol[2] == 0 && q2 == 2.0 && qm == 3.0;
    return Outcome{ok, fmt("k=1 violations=%zu max=%.3f; k=2 violations=%zu max=%.3f; W5 stretch query2=%.1f mult(k=1)=%.1f",
                           t.mult_viol[1], t.mult_max[1], t.mult_viol[2], t.mult_max[2], q2, qm)};
  });
  report(5, "additive bounds", [&] {
    const bool ok = t.add2_viol == 0 && t.add4_viol[1] == 0 && t.add4_viol[2] == 0 && t.add_unit_viol == 0;
    return Outcome{ok, fmt("two_plus violations=%zu; fourk k=1 %zu, k=2 %zu; unweighted pairs=%zu above 2d+1=%zu", t.add2_viol,
                           t.add4_viol[1], t.add4_viol[2], t.add_unit_pairs, t.add_unit_viol)};
  });
  report(6, "TZ sandwich", [&] {
    const bool ok = t.tz_viol[1] == 0 && t.tz_viol[2] == 0 && t.tz_viol[3] == 0 && t.tz1_inexact == 0 && t.sub_viol == 0;
    return Outcome{ok, fmt("pairs=%zu violations k=1/2/3 %zu/%zu/%zu; k=1 inexact=%zu; landmark-graph pairs=%zu violations=%zu",
                           t.tz_pairs, t.tz_viol[1], t.tz_viol[2], t.tz_viol[3], t.tz1_inexact, t.sub_pairs, t.sub_viol)};
  });
  report(7, "degree reduction", reduction);
  report(8, "size audits", size_audits);
  report(9, "exactness ordering at n=4096", fig1_ordering);
  report(10, "routing handshake and probing", [&] { return routing(corpus); });
  report(11, "determinism", determinism);
  report(12, "probe-count bounds", [&] {
    return Outcome{t.s2_probe_viol == 0 && t.add_probe_viol == 0,
                   fmt("stretch-2 violations=%zu (max probes %zu); additive violations=%zu (max probes %zu)", t.s2_probe_viol,
                       t.s2_probe_max, t.add_probe_viol, t.add_probe_max)};
  });
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
