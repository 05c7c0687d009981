#pragma once

#include <algorithm>
#include <vector>

#include "vicinity/common.hpp"

namespace vicinity {

// A node reached by a shortest-path search from some owner node: exact
// distance, predecessor on the search tree, and the owner's first hop toward
// it (the owner's own entry has parent == first_hop == owner).
struct Reach {
  NodeId node;
  Weight dist;
  NodeId parent;
  NodeId first_hop;

  friend bool operator==(const Reach&, const Reach&) = default;
};

// Flat map node -> Reach, sorted by node id. Lookups are binary searches over
// a dense key array; iteration is in node-id order, which is the tie-break
// order every intersection uses.
class DistanceMap {
 public:
  DistanceMap() = default;

  explicit DistanceMap(std::vector<Reach> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const Reach& a, const Reach& b) { return a.node < b.node; });
    keys_.reserve(entries_.size());
    for (const Reach& r : entries_) keys_.push_back(r.node);
  }

  const Reach* find(NodeId v) const noexcept {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), v);
    if (it == keys_.end() || *it != v) return nullptr;
    return &entries_[static_cast<std::size_t>(it - keys_.begin())];
  }
  bool contains(NodeId v) const noexcept { return std::binary_search(keys_.begin(), keys_.end(), v); }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  const std::vector<Reach>& entries() const noexcept { return entries_; }
  const std::vector<NodeId>& keys() const noexcept { return keys_; }

  friend bool operator==(const DistanceMap& a, const DistanceMap& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<NodeId> keys_;
  std::vector<Reach> entries_;
};

}  // namespace vicinity
