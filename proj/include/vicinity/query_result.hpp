#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "vicinity/common.hpp"

namespace vicinity {

enum class Branch : std::uint8_t {
  direct_vicinity,     // v ∈ Γ(u) or u ∈ Γ(v) (also u = v)
  ball_vicinity,       // B(u) ∩ Γ(v), or the symmetric check
  landmark_u,          // via ℓ(u)
  landmark_v,          // via ℓ(v)
  optimized_shortcut,  // some w ∈ Γ(u) (or B(u)) routed via ℓ(w)
  tz_fallback,         // ℓ-legs plus the landmark-graph sub-oracle
  direct_ball,         // v ∈ B(u) or u ∈ B(v)
  ball_ball,           // B(u) ∩ B(v)
  vicinity_vicinity,   // Γ(u) ∩ Γ(v), evaluation-only
  tz,                  // plain Thorup-Zwick query
};

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::direct_vicinity: return "direct_vicinity";
    case Branch::ball_vicinity: return "ball_vicinity";
    case Branch::landmark_u: return "landmark_u";
    case Branch::landmark_v: return "landmark_v";
    case Branch::optimized_shortcut: return "optimized_shortcut";
    case Branch::tz_fallback: return "tz_fallback";
    case Branch::direct_ball: return "direct_ball";
    case Branch::ball_ball: return "ball_ball";
    case Branch::vicinity_vicinity: return "vicinity_vicinity";
    case Branch::tz: return "tz";
  }
  return "?";
}

inline std::optional<Branch> parse_branch(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(Branch::tz); ++i) {
    if (s == to_string(static_cast<Branch>(i))) return static_cast<Branch>(i);
  }
  return std::nullopt;
}

// Branches answered by an intersection or membership test rather than a
// landmark detour.
inline bool is_intersection_branch(Branch b) {
  return b == Branch::direct_vicinity || b == Branch::ball_vicinity || b == Branch::direct_ball ||
         b == Branch::ball_ball || b == Branch::vicinity_vicinity;
}

struct QueryResult {
  Weight estimate = 0.0;
  Branch branch = Branch::direct_vicinity;
  NodeId via = kNoNode;
  std::size_t probes = 0;
  std::optional<std::vector<NodeId>> path;
};

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* kQueryCsvHeader = "u,v,estimate,branch,via,probes";

inline std::string query_csv_row(NodeId u, NodeId v, const QueryResult& r) {
  return std::to_string(u) + "," + std::to_string(v) + "," + format_double(r.estimate) + "," + to_string(r.branch) +
         "," + (r.via == kNoNode ? std::string() : std::to_string(r.via)) + "," + std::to_string(r.probes);
}

}  // namespace vicinity
