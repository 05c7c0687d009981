#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vicinity/common.hpp"

namespace vicinity {

struct Edge {
  NodeId u;
  NodeId v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// One direction of an undirected edge as seen from its owner's adjacency.
struct Arc {
  NodeId to;
  Weight w;
};

// Immutable weighted undirected simple graph in CSR form. Adjacency lists
// are sorted by neighbor id; edges() lists each undirected edge once with
// u < v, sorted lexicographically.
class Graph {
 public:
  Graph() = default;

  // Validates and canonicalizes: rejects self-loops, negative or non-finite
  // weights and ids outside [0, n); collapses parallel edges to the minimum
  // weight.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references a node outside [0," + std::to_string(n) + ")");
      }
      if (e.u == e.v) throw ArgumentError("self-loop at node " + std::to_string(e.u));
      if (!(e.w >= 0.0) || !std::isfinite(e.w)) {
        throw ArgumentError("negative or non-finite weight on edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ")");
      }
      canon.push_back(e.u < e.v ? e : Edge{e.v, e.u, e.w});
    }
    std::sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
      if (a.u != b.u) return a.u < b.u;
      if (a.v != b.v) return a.v < b.v;
      return a.w < b.w;
    });
    // after sorting, the first of each run carries the minimum weight
    canon.erase(std::unique(canon.begin(), canon.end(),
                            [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                canon.end());

    Graph g;
    g.edges_ = std::move(canon);
    g.offsets_.assign(n + 1, 0);
    for (const Edge& e : g.edges_) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.arcs_.resize(2 * g.edges_.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // edges are sorted by (u, v), so each adjacency list comes out sorted for
    // the u side; the v side needs a sort pass.
    for (const Edge& e : g.edges_) {
      g.arcs_[fill[e.u]++] = Arc{e.v, e.w};
      g.arcs_[fill[e.v]++] = Arc{e.u, e.w};
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
                [](const Arc& a, const Arc& b) { return a.to < b.to; });
      g.max_degree_ = std::max(g.max_degree_, g.offsets_[v + 1] - g.offsets_[v]);
    }
    g.connected_ = g.compute_connected();
    return g;
  }

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Arc> neighbors(NodeId v) const noexcept {
    return {arcs_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept { return max_degree_; }
  // 2m/n
  double average_degree() const noexcept {
    return node_count() == 0 ? 0.0
                             : 2.0 * static_cast<double>(edge_count()) / static_cast<double>(node_count());
  }

  bool connected() const noexcept { return connected_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<Weight> edge_weight(NodeId u, NodeId v) const {
    const auto adj = neighbors(u);
    auto it = std::lower_bound(adj.begin(), adj.end(), v,
                               [](const Arc& a, NodeId x) { return a.to < x; });
    if (it == adj.end() || it->to != v) return std::nullopt;
    return it->w;
  }
  bool has_edge(NodeId u, NodeId v) const { return edge_weight(u, v).has_value(); }

  bool valid(NodeId v) const noexcept { return v < node_count(); }

  // Labels every node with its component index (components numbered in order
  // of their smallest node id).
  std::vector<NodeId> component_labels() const {
    const std::size_t n = node_count();
    std::vector<NodeId> label(n, kNoNode);
    std::vector<NodeId> stack;
    NodeId next = 0;
    for (NodeId s = 0; s < n; ++s) {
      if (label[s] != kNoNode) continue;
      label[s] = next;
      stack.push_back(s);
      while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        for (const Arc& a : neighbors(x)) {
          if (label[a.to] == kNoNode) {
            label[a.to] = next;
            stack.push_back(a.to);
          }
        }
      }
      ++next;
    }
    return label;
  }

 private:
  bool compute_connected() const {
    const std::size_t n = node_count();
    if (n <= 1) return true;
    const auto label = component_labels();
    return std::all_of(label.begin(), label.end(), [](NodeId l) { return l == 0; });
  }

  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<Edge> edges_;
  std::size_t max_degree_ = 0;
  bool connected_ = true;
};

// Largest connected component, re-indexed densely in original id order.
struct Component {
  Graph graph;
  std::vector<NodeId> original_ids;
};

inline Component largest_component(const Graph& g) {
  const auto label = g.component_labels();
  std::vector<std::size_t> sizes;
  for (NodeId l : label) {
    if (l >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  Component out;
  if (sizes.empty()) return out;
  const auto best =
      static_cast<NodeId>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> remap(g.node_count(), kNoNode);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (label[v] == best) {
      remap[v] = static_cast<NodeId>(out.original_ids.size());
      out.original_ids.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (label[e.u] == best) edges.push_back({remap[e.u], remap[e.v], e.w});
  }
  out.graph = Graph::from_edges(out.original_ids.size(), edges);
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline std::string format_weight(Weight w) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, ptr);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace detail

// Edge-list text: header "n m", then m lines "u v [w]" (w defaults to 1).
// Lines starting with '#' and blank lines are ignored.
inline Graph load_graph(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<Edge> edges;
  std::size_t last_line = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    last_line = line_no;
    const auto tok = detail::split_ws(line);
    if (!header) {
      std::size_t n = 0, m = 0;
      if (tok.size() != 2 || !detail::parse_number(tok[0], n) || !detail::parse_number(tok[1], m)) {
        throw ParseError(line_no, "expected header \"n m\"");
      }
      header = {n, m};
      edges.reserve(m);
      continue;
    }
    if (tok.size() < 2 || tok.size() > 3) throw ParseError(line_no, "expected \"u v [w]\"");
    std::uint64_t u = 0, v = 0;
    Weight w = 1.0;
    if (!detail::parse_number(tok[0], u) || !detail::parse_number(tok[1], v)) {
      throw ParseError(line_no, "malformed node id");
    }
    if (tok.size() == 3 && !detail::parse_number(tok[2], w)) throw ParseError(line_no, "malformed weight");
    if (u >= header->first || v >= header->first) {
      throw ParseError(line_no, "node id out of range [0," + std::to_string(header->first) + ")");
    }
    if (u == v) throw ParseError(line_no, "self-loop");
    if (!(w >= 0.0) || !std::isfinite(w)) throw ParseError(line_no, "negative weight");
    if (edges.size() == header->second) {
      throw ParseError(line_no, "more edge lines than the declared m=" + std::to_string(header->second));
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  if (!header) throw ParseError(1, "missing header \"n m\"");
  if (edges.size() != header->second) {
    throw ParseError(last_line, "declared m=" + std::to_string(header->second) + " but found " +
                                    std::to_string(edges.size()) + " edge lines");
  }
  return Graph::from_edges(header->first, edges);
}

inline Graph load_graph_file(const std::string& path) { return load_graph(detail::read_file(path)); }

inline std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.node_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += ' ';
    out += detail::format_weight(e.w);
    out += '\n';
  }
  return out;
}

}  // namespace vicinity
