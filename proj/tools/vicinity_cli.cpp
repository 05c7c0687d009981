#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <variant>

#include "vicinity/vicinity.hpp"

using namespace vicinity;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBound = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::optional<double> alpha;
  std::size_t k = 2;
  std::string variant = "onfly";
  std::optional<std::string> sampling;
  bool strict_paper = false;
  bool no_exact = false;
  std::string out;
};

void emit(const std::string& path, std::string_view text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    detail::write_file(path, text);
  }
}

Variant parse_variant(const std::string& s) {
  if (s == "onfly") return Variant::onfly;
  if (s == "stored") return Variant::stored;
  throw ArgumentError("--variant must be onfly or stored");
}

std::vector<NodeId> read_landmarks(const std::string& spec) {
  if (std::filesystem::exists(spec)) return parse_landmark_list(detail::read_file(spec));
  std::string text = spec;
  std::replace(text.begin(), text.end(), ',', '\n');
  return parse_landmark_list(text);
}

SamplingSpec sampling_for(const Graph& g, const std::string& name, double alpha) {
  return landmark_spec(parse_profile(name), g, alpha);
}

std::string ball_dump(const std::vector<BallInfo>& balls) {
  std::ostringstream os;
  for (const auto& b : balls) {
    os << b.node << ' ' << b.landmark << ' ' << format_double(b.radius);
    for (const Reach& r : b.ball) os << ' ' << r.node << ':' << format_double(r.dist);
    os << '\n';
  }
  return os.str();
}

std::vector<BallInfo> all_balls(const Graph& g, const LandmarkSet& L) {
  std::vector<BallInfo> out;
  SearchWorkspace ws(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) out.push_back(compute_ball(g, v, L, &ws));
  return out;
}

int cmd_gen(const Globals& gl, const std::string& topology, std::size_t reduce_delta) {
  const auto t = Topology::parse(topology);
  if (t.kind == Topology::Kind::file) throw ArgumentError("gen needs gnm(n,m) or geometric(n,deg)");
  Graph g = make_topology(t, gl.seed);
  if (reduce_delta > 0) {
    const auto rg = reduce(g, reduce_delta);
    emit(gl.out, to_edge_list(rg.gd));
    if (!gl.out.empty() && gl.out != "-") detail::write_file(gl.out + ".copies", copies_sidecar(rg));
    return kExitOk;
  }
  emit(gl.out, to_edge_list(g));
  return kExitOk;
}

int cmd_build(const Globals& gl, const std::string& graph_path, const std::string& scheme,
              const std::string& landmarks, const std::string& dump_balls) {
  auto g = std::make_shared<const Graph>(load_graph_file(graph_path));
  if (!g->connected()) throw BuildError("graph is disconnected");
  if (gl.out.empty()) throw ArgumentError("build needs --out");
  const double n = static_cast<double>(g->node_count());
  const double alpha = gl.alpha.value_or(std::sqrt(n));
  if (alpha < 1.0 || alpha > n) throw ArgumentError("--alpha must lie in [1, n]");
  const Variant variant = parse_variant(gl.variant);
  const bool additive = scheme == "additive2" || scheme == "additive4k";
  SamplingSpec spec = landmarks.empty()
                          ? sampling_for(*g, gl.sampling.value_or(additive ? "uniform" : "degree"), alpha)
                          : SamplingSpec::forced_set(read_landmarks(landmarks));
  const auto opt = landmark_options(alpha, spec);
  std::string bytes;
  std::optional<LandmarkSet> L;
  std::size_t attempts = 1, size = 0;
  if (scheme == "tz") {
    const auto o = tz_build(*g, gl.k, gl.seed);
    size = o.size_entries();
    bytes = serialize(o);
  } else if (scheme == "stretch2") {
    auto b = build_stretch2(g, opt, variant, gl.seed, gl.strict_paper);
    attempts = b.attempts;
    size = b.oracle.size_entries();
    L = b.oracle.landmarks();
    bytes = serialize(b.oracle);
  } else if (scheme == "mult") {
    auto b = build_mult(g, opt, gl.k, variant, gl.seed, gl.strict_paper);
    attempts = b.attempts;
    size = b.oracle.size_entries();
    L = b.oracle.landmarks();
    bytes = serialize(b.oracle);
  } else if (additive) {
    auto b = build_additive(g, opt, scheme == "additive2" ? AdditiveMode::two_plus : AdditiveMode::fourk_plus, gl.k,
                            gl.seed);
    attempts = b.attempts;
    size = b.oracle.size_entries();
    L = b.oracle.landmarks();
    bytes = serialize(b.oracle);
  } else {
    throw ArgumentError("unknown scheme '" + scheme + "' (tz, stretch2, mult, additive2, additive4k)");
  }
  detail::write_file(gl.out, bytes);
  std::cerr << "scheme=" << scheme << " n=" << g->node_count() << " m=" << g->edge_count()
            << " landmarks=" << (L ? L->size() : 0) << " size_entries=" << size << " attempts=" << attempts
            << " bytes=" << bytes.size() << '\n';
  if (!dump_balls.empty()) {
    if (!L) throw ArgumentError("--dump-balls needs a landmark scheme");
    detail::write_file(dump_balls, ball_dump(all_balls(*g, *L)));
  }
  return kExitOk;
}

struct LoadedOracle {
  ContainerKind kind;
  std::variant<TZOracle, Stretch2Oracle, StretchMultOracle, AdditiveOracle> o;
};

LoadedOracle load_oracle(const std::string& path) {
  const std::string bytes = detail::read_file(path);
  ByteReader r(bytes);
  const auto kind = r.header().kind;
  switch (kind) {
    case ContainerKind::tz: return {kind, deserialize_tz(bytes)};
    case ContainerKind::stretch2: return {kind, deserialize_stretch2(bytes)};
    case ContainerKind::mult: return {kind, deserialize_mult(bytes)};
    case ContainerKind::additive: return {kind, deserialize_additive(bytes)};
  }
  throw ParseError(0, "unknown container kind");
}

int cmd_query(const Globals& gl, const std::string& oracle_path, const std::vector<NodeId>& pair, bool optimized,
              bool with_path) {
  auto lo = load_oracle(oracle_path);
  const NodeId u = pair.at(0), v = pair.at(1);
  QueryResult r;
  std::vector<NodeId> path;
  std::visit(
      [&](auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, TZOracle>) {
          if (u >= o.node_count() || v >= o.node_count()) throw ArgumentError("node id out of range");
          const auto t = o.query(u, v);
          r = QueryResult{t.estimate, Branch::tz, t.final_witness, t.probes, {}};
          if (with_path) throw ArgumentError("--path needs a landmark oracle");
        } else if constexpr (std::is_same_v<T, AdditiveOracle>) {
          r = o.query(u, v);
          if (with_path) path = o.retrieve_path(r, u, v);
        } else {
          o.set_strict_paper(o.strict_paper() || gl.strict_paper);
          r = optimized ? o.query_optimized(u, v) : o.query(u, v);
          if (with_path) path = o.retrieve_path(r, u, v);
        }
      },
      lo.o);
  std::ostringstream os;
  os << kQueryCsvHeader << '\n' << query_csv_row(u, v, r) << '\n';
  if (with_path) {
    os << "path";
    for (NodeId x : path) os << ' ' << x;
    os << '\n';
  }
  emit(gl.out, os.str());
  return kExitOk;
}

int cmd_eval(const Globals& gl, const std::string& config_path, const std::string& summary_path,
             const std::string& curves_path, const std::vector<std::size_t>& budgets) {
  auto e = Experiment::from_config(Config::load(config_path));
  if (gl.alpha) e.alpha = *gl.alpha;
  if (gl.sampling) e.profile = parse_profile(*gl.sampling);
  if (gl.strict_paper) e.strict_paper = true;
  if (gl.no_exact) e.exact = false;
  const auto rep = run_experiment(e);
  emit(gl.out, report_csv(rep));
  const std::string summary = summary_text(rep);
  if (summary_path.empty()) {
    std::cerr << summary;
  } else {
    detail::write_file(summary_path, summary);
  }
  if (!curves_path.empty()) detail::write_file(curves_path, curves_csv(stretch_vs_probes(e, budgets)));
  const auto violations = total_violations(rep);
  if (violations > 0) {
    std::cerr << "bound violations: " << violations << '\n';
    return kExitBound;
  }
  return kExitOk;
}

int cmd_routesim(const Globals& gl, const std::string& config_path) {
  const auto c = Config::load(config_path);
  const auto seeds = c.get_uint_list("seeds", {gl.seed});
  const auto flows = c.get_uint("flows", 200);
  const auto budgets = c.get_uint_list("budgets", {0, 1, 2, 4});
  DeployOptions opt;
  opt.mtu = c.get_uint("mtu", 1500);
  opt.id_bytes = c.get_uint("id_bytes", 4);
  std::ostringstream csv, report;
  csv << kFlowCsvHeader << '\n';
  std::size_t violations = 0;
  for (std::uint64_t seed : seeds) {
    Graph g0 = c.has("graph") ? load_graph_file(c.get("graph", ""))
                              : make_topology(Topology::parse(c.get("topology", "gnm(256,768)")), seed);
    if (!g0.connected()) g0 = largest_component(g0).graph;
    auto g = std::make_shared<const Graph>(std::move(g0));
    const double n = static_cast<double>(g->node_count());
    opt.alpha = gl.alpha.value_or(c.get_double("alpha", std::sqrt(n / g->average_degree())));
    opt.sampling = sampling_for(*g, gl.sampling.value_or(c.get("sampling", "degree")), opt.alpha);
    const auto net = deploy(g, opt, seed);
    report << "seed " << seed << " n=" << g->node_count() << " landmarks=" << net.oracle.landmarks().size()
           << " max_entries=" << net.max_entries() << " mean_entries=" << format_double(net.mean_entries())
           << " sqrt_n_delta=" << format_double(std::sqrt(n * g->average_degree())) << '\n';
    SplitMix64 rng(derive_seed(seed, name_tag("routesim-flows")));
    std::vector<std::vector<double>> sums(2, std::vector<double>(budgets.size(), 0.0));
    for (std::uint64_t i = 0; i < flows; ++i) {
      const NodeId src = static_cast<NodeId>(rng.below(g->node_count()));
      NodeId dst = static_cast<NodeId>(rng.below(g->node_count() - 1));
      if (dst >= src) ++dst;
      const Weight d = dijkstra(*g, src).dist[dst];
      const auto f = handshake(net, src, dst, d);
      if (!approx_le(f.final_stretch, 2.0)) ++violations;
      csv << flow_csv_row(f) << '\n';
      for (int o = 0; o < 2; ++o) {
        for (std::size_t b = 0; b < budgets.size(); ++b) {
          sums[o][b] += probe_and_shortcut(net, f, o == 0 ? ProbeOrder::farthest_first : ProbeOrder::closest_first,
                                           budgets[b])
                            .final_stretch;
        }
      }
    }
    for (int o = 0; o < 2; ++o) {
      report << "  " << (o == 0 ? "farthest_first" : "closest_first");
      for (std::size_t b = 0; b < budgets.size(); ++b) {
        report << ' ' << budgets[b] << ':' << format_double(flows ? sums[o][b] / static_cast<double>(flows) : 0.0);
      }
      report << '\n';
    }
  }
  emit(gl.out, csv.str());
  std::cerr << report.str();
  if (violations > 0) {
    std::cerr << "flows above stretch 2: " << violations << '\n';
    return kExitBound;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate distance oracles and compact routing on sparse graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--seed", gl.seed, "Random seed");
  app.add_option("--alpha", gl.alpha, "Landmark sampling parameter alpha");
  app.add_option("--k", gl.k, "Thorup-Zwick levels")->check(CLI::PositiveNumber);
  app.add_option("--variant", gl.variant, "onfly or stored")->check(CLI::IsMember({"onfly", "stored"}));
  app.add_option("--sampling", gl.sampling, "paper-eval, uniform or degree")
      ->check(CLI::IsMember({"paper-eval", "uniform", "degree"}));
  app.add_flag("--strict-paper", gl.strict_paper, "Check only B(u) against Γ(v)");
  app.add_flag("--no-exact", gl.no_exact, "Skip exact distance comparison");
  app.add_option("--out", gl.out, "Output path (default stdout)");

  auto* gen = app.add_subcommand("gen", "Generate a graph as an edge list");
  std::string topology;
  std::size_t reduce_delta = 0;
  gen->add_option("topology", topology, "gnm(n,m) or geometric(n,deg)")->required();
  gen->add_option("--reduce", reduce_delta, "Split nodes into copies of degree at most DELTA");

  auto* build = app.add_subcommand("build", "Build an oracle into a binary container");
  std::string graph_path, scheme = "stretch2", landmarks, dump_balls;
  build->add_option("graph", graph_path, "Edge-list file")->required();
  build->add_option("--scheme", scheme, "tz, stretch2, mult, additive2 or additive4k");
  build->add_option("--landmarks", landmarks, "Forced landmark ids: comma list or file");
  build->add_option("--dump-balls", dump_balls, "Write every ball to this file");

  auto* query = app.add_subcommand("query", "Answer one distance query");
  std::string oracle_path;
  std::vector<NodeId> pair;
  bool optimized = false, with_path = false;
  query->add_option("oracle", oracle_path, "Oracle container")->required();
  query->add_option("pair", pair, "u v")->required()->expected(2);
  query->add_flag("--optimized", optimized, "Apply the shortcut optimization");
  query->add_flag("--path", with_path, "Also print the retrieved walk");

  auto* eval = app.add_subcommand("eval", "Run an experiment and emit per-pair CSV");
  std::string config_path, summary_path, curves_path;
  std::vector<std::size_t> budgets{0, 1, 2, 4, 8, 16};
  eval->add_option("config", config_path, "Experiment config")->required();
  eval->add_option("--summary", summary_path, "Summary text output (default stderr)");
  eval->add_option("--curves", curves_path, "Stretch-vs-probes CSV output");
  eval->add_option("--budgets", budgets, "Probe budgets for --curves");

  auto* routesim = app.add_subcommand("routesim", "Simulate handshakes and probing on a deployment");
  std::string scenario_path;
  routesim->add_option("scenario", scenario_path, "Scenario config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gl, topology, reduce_delta);
    if (*build) return cmd_build(gl, graph_path, scheme, landmarks, dump_balls);
    if (*query) return cmd_query(gl, oracle_path, pair, optimized, with_path);
    if (*eval) return cmd_eval(gl, config_path, summary_path, curves_path, budgets);
    if (*routesim) return cmd_routesim(gl, scenario_path);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
