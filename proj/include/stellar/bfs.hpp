#pragma once

#include <cstdint>
#include <vector>

#include "stellar/faults.hpp"
#include "stellar/graph.hpp"

namespace stellar {

inline constexpr int kUnreachable = -1;

// Shortest server-hop distances from one source server. Only server entries
// are meaningful; switches are expanded once, on first reach.
class BfsTree {
 public:
  BfsTree() = default;

  NodeId source() const { return source_; }
  // Hop distance to server v, or kUnreachable.
  int distance(NodeId v) const { return dist_[v]; }
  bool reachable(NodeId v) const { return dist_[v] != kUnreachable; }
  const std::vector<int>& distances() const { return dist_; }

  // Node sequence source..target (switches included); empty if unreachable.
  std::vector<NodeId> path_to(NodeId target) const;
  void path_to(NodeId target, std::vector<NodeId>& out) const;

 private:
  friend class BfsRunner;
  NodeId source_ = kNoNode;
  std::vector<int> dist_;
  std::vector<NodeId> parent_;  // previous node on a shortest path
};

// Reusable BFS scratch space; one per worker thread.
class BfsRunner {
 public:
  explicit BfsRunner(const Topology& topo);

  // Throws ArgumentError if src is not a server of the topology.
  const BfsTree& run(NodeId src, const FaultSet* faults = nullptr);
  const BfsTree& tree() const { return tree_; }

 private:
  const Topology* topo_;
  BfsTree tree_;
  std::vector<NodeId> queue_;
  std::vector<std::uint8_t> switch_seen_;
};

BfsTree bfs_tree(const Topology& topo, NodeId src, const FaultSet& faults);
BfsTree bfs_tree(const Topology& topo, NodeId src);

// All-pairs statistics by BFS from every server; parallel over sources.
DistanceStats bfs_all_pairs_stats(const Topology& topo, const FaultSet& faults,
                                  unsigned workers = 1);

// Hop-diameter of the fault-free topology from the given sources only.
int bfs_eccentricity_max(const Topology& topo, const std::vector<NodeId>& sources,
                         unsigned workers = 1);

}  // namespace stellar
