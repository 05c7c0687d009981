#pragma once

#include <sstream>

#include "vicinity/stretch2.hpp"
#include "vicinity/verify.hpp"

namespace vicinity {

struct RouterState {
  NodeId node = kNoNode;
  std::size_t tz_entries = 0;
  std::size_t ball_entries = 0;
  std::size_t vicinity_entries = 0;
  std::size_t relay_entries = 0;
  std::size_t adjacency_entries = 0;
  std::size_t landmark_entries = 0;  // d(l, node) and next hop toward l, for every l ∈ L
  NodeId landmark = kNoNode;

  // + 1 for (ℓ(v), r_v, forest parent)
  std::size_t entry_count() const noexcept {
    return tz_entries + ball_entries + vicinity_entries + relay_entries + adjacency_entries + landmark_entries + 1;
  }
};

struct DeployOptions {
  double alpha = 1.0;
  SamplingSpec sampling = SamplingSpec::degree(1.0);
  std::size_t mtu = 1500;
  std::size_t id_bytes = 4;
};

// Static post-convergence deployment: the stored stretch-2 state plus
// Thorup-Zwick k=2 tables whose first level is the landmark set.
struct Network {
  std::shared_ptr<const Graph> g;
  Stretch2Oracle oracle;
  TZOracle tz;
  std::vector<TZRoutingTable> tz_tables;
  std::vector<RouterState> routers;
  std::size_t mtu = 1500;
  std::size_t id_bytes = 4;

  std::size_t max_entries() const {
    std::size_t m = 0;
    for (const auto& r : routers) m = std::max(m, r.entry_count());
    return m;
  }
  std::size_t total_entries() const {
    std::size_t t = 0;
    for (const auto& r : routers) t += r.entry_count();
    return t;
  }
  double mean_entries() const {
    return routers.empty() ? 0.0 : static_cast<double>(total_entries()) / static_cast<double>(routers.size());
  }
  std::size_t tz_table_entries() const {
    std::size_t t = 0;
    for (const auto& r : tz_tables) t += r.entry_count();
    return t;
  }
};

inline Network deploy(std::shared_ptr<const Graph> g, const DeployOptions& opt, std::uint64_t seed) {
  if (!g->connected()) throw BuildError("deploy: graph is disconnected");
  if (opt.mtu == 0 || opt.id_bytes == 0) throw ArgumentError("deploy: mtu and id size must be positive");
  Network net;
  auto L = sample_landmarks(*g, opt.sampling, derive_seed(seed, detail::kLandmarkTag));
  net.tz = TZOracle::build(*g, 2, derive_seed(seed, name_tag("routing-tz")), &L.members());
  net.tz_tables = tz_routing_tables(net.tz, *g);
  net.oracle = Stretch2Oracle::build(g, std::move(L), Variant::stored, true);
  net.mtu = opt.mtu;
  net.id_bytes = opt.id_bytes;
  const auto& nbs = net.oracle.stored_neighborhoods();
  net.routers.resize(g->node_count());
  for (NodeId v = 0; v < g->node_count(); ++v) {
    RouterState& r = net.routers[v];
    r.node = v;
    r.tz_entries = net.tz_tables[v].entry_count();
    r.ball_entries = nbs[v].ball.ball.size();
    r.vicinity_entries = nbs[v].vicinity.vicinity.size();
    r.relay_entries = nbs[v].vicinity.relays.size();
    r.adjacency_entries = g->degree(v);
    r.landmark_entries = net.oracle.landmarks().size();
    r.landmark = net.oracle.landmark_of(v);
  }
  net.g = std::move(g);
  return net;
}

enum class ProbeOrder { farthest_first, closest_first };

inline const char* to_string(ProbeOrder o) { return o == ProbeOrder::farthest_first ? "farthest_first" : "closest_first"; }

struct FlowTrace {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  Weight d_exact = 0.0;
  std::vector<NodeId> initial_path;
  Weight initial_len = 0.0;
  std::size_t handshake_packets = 0;
  std::size_t handshake_bytes = 0;
  QueryResult result;  // route the final path follows
  std::vector<NodeId> final_path;
  Weight final_len = 0.0;
  double final_stretch = 1.0;
  std::size_t probes_sent = 0;
  ProbeOrder probe_order = ProbeOrder::farthest_first;
  bool completed = false;
};

inline double stretch_of(Weight len, Weight d) { return d == 0.0 ? 1.0 : len / d; }

// 1. route over the TZ tables; 2. src ships its ball ids to dst;
// 3. dst intersects them with Γ(dst) and replies; 4. switch to that route.
// No exchange is needed when dst ∈ Γ(src).
inline FlowTrace handshake(const Network& net, NodeId src, NodeId dst, Weight d_exact) {
  const Graph& g = *net.g;
  if (!g.valid(src) || !g.valid(dst)) throw ArgumentError("handshake: node id out of range");
  FlowTrace f;
  f.src = src;
  f.dst = dst;
  f.d_exact = d_exact;
  auto initial = tz_forward(net.tz, net.tz_tables, src, dst);
  if (!initial) throw std::logic_error("handshake: TZ tables cannot route the flow");
  f.initial_path = std::move(*initial);
  f.initial_len = *walk_weight(g, f.initial_path);
  f.result = net.oracle.query(src, dst);
  const auto& nu = net.oracle.stored_neighborhoods()[src];
  const bool local = src == dst || nu.vicinity.vicinity.contains(dst);
  if (!local) {
    f.handshake_bytes = net.id_bytes * nu.ball.ball.size();
    f.handshake_packets = std::max<std::size_t>(1, (f.handshake_bytes + net.mtu - 1) / net.mtu) + 1;
  }
  f.final_path = net.oracle.retrieve_path(f.result, src, dst);
  f.final_len = *walk_weight(g, f.final_path);
  f.final_stretch = stretch_of(f.final_len, d_exact);
  f.completed = true;
  return f;
}

// Γ(src) ordered for probing; ties by id in both orders.
inline std::vector<Reach> probe_sequence(const Network& net, NodeId src, ProbeOrder order) {
  std::vector<Reach> seq = net.oracle.stored_neighborhoods()[src].vicinity.vicinity.entries();
  std::stable_sort(seq.begin(), seq.end(), [&](const Reach& a, const Reach& b) {
    return order == ProbeOrder::farthest_first ? a.dist > b.dist : a.dist < b.dist;
  });
  return seq;
}

// Src evaluates the landmark detour through each of its first `budget`
// vicinity members and keeps the shortest.
inline FlowTrace probe_and_shortcut(const Network& net, FlowTrace flow, ProbeOrder order, std::size_t budget) {
  if (!flow.completed) throw ArgumentError("probe_and_shortcut: flow has not completed its handshake");
  flow.probe_order = order;
  if (flow.src == flow.dst) return flow;
  const auto seq = probe_sequence(net, flow.src, order);
  budget = std::min(budget, seq.size());
  bool improved = false;
  for (std::size_t i = 0; i < budget; ++i) {
    ++flow.probes_sent;
    ++flow.result.probes;
    const Weight s = net.oracle.shortcut_length(seq[i].dist, seq[i].node, flow.dst);
    if (s < flow.result.estimate) {
      flow.result.estimate = s;
      flow.result.branch = Branch::optimized_shortcut;
      flow.result.via = seq[i].node;
      improved = true;
    }
  }
  if (improved) {
    flow.final_path = net.oracle.retrieve_path(flow.result, flow.src, flow.dst);
    flow.final_len = *walk_weight(*net.g, flow.final_path);
    flow.final_stretch = stretch_of(flow.final_len, flow.d_exact);
  }
  return flow;
}

inline constexpr const char* kFlowCsvHeader = "src,dst,d_exact,initial_len,final_len,final_stretch,packets,bytes,probes";

inline std::string flow_csv_row(const FlowTrace& f) {
  std::ostringstream os;
  os << f.src << ',' << f.dst << ',' << format_double(f.d_exact) << ',' << format_double(f.initial_len) << ','
     << format_double(f.final_len) << ',' << format_double(f.final_stretch) << ',' << f.handshake_packets << ','
     << f.handshake_bytes << ',' << f.probes_sent;
  return os.str();
}

}  // namespace vicinity
