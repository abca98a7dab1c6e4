#include "stellar/bfs.hpp"

#include <algorithm>

#include "parallel.hpp"

#include "stellar/errors.hpp"

namespace stellar {

void BfsTree::path_to(NodeId target, std::vector<NodeId>& out) const {
  out.clear();
  if (target >= dist_.size() || dist_[target] == kUnreachable) return;
  for (NodeId v = target; v != kNoNode; v = parent_[v]) out.push_back(v);
  std::reverse(out.begin(), out.end());
}

std::vector<NodeId> BfsTree::path_to(NodeId target) const {
  std::vector<NodeId> out;
  path_to(target, out);
  return out;
}

BfsRunner::BfsRunner(const Topology& topo) : topo_(&topo) {
  tree_.dist_.assign(topo.node_count(), kUnreachable);
  tree_.parent_.assign(topo.node_count(), kNoNode);
  switch_seen_.assign(topo.switch_count(), 0);
  queue_.reserve(topo.server_count());
}

const BfsTree& BfsRunner::run(NodeId src, const FaultSet* faults) {
  const Topology& topo = *topo_;
  topo.require_server(src);
  const bool check = faults != nullptr && !faults->empty();
  const NodeId servers = topo.server_count();

  std::fill(tree_.dist_.begin(), tree_.dist_.end(), kUnreachable);
  std::fill(tree_.parent_.begin(), tree_.parent_.end(), kNoNode);
  std::fill(switch_seen_.begin(), switch_seen_.end(), 0);
  tree_.source_ = src;

  queue_.clear();
  queue_.push_back(src);
  tree_.dist_[src] = 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId x = queue_[head];
    const int next = tree_.dist_[x] + 1;
    for (const Adjacent& a : topo.neighbors(x)) {
      if (check && faults->failed(a.link)) continue;
      if (a.node < servers) {
        if (tree_.dist_[a.node] == kUnreachable) {
          tree_.dist_[a.node] = next;
          tree_.parent_[a.node] = x;
          queue_.push_back(a.node);
        }
        continue;
      }
      // Switch: the first server to reach it is at minimum distance, so it is
      // expanded exactly once.
      auto& seen = switch_seen_[a.node - servers];
      if (seen) continue;
      seen = 1;
      tree_.parent_[a.node] = x;
      for (const Adjacent& b : topo.neighbors(a.node)) {
        if (tree_.dist_[b.node] != kUnreachable) continue;
        if (check && faults->failed(b.link)) continue;
        tree_.dist_[b.node] = next;
        tree_.parent_[b.node] = a.node;
        queue_.push_back(b.node);
      }
    }
  }
  return tree_;
}

BfsTree bfs_tree(const Topology& topo, NodeId src, const FaultSet& faults) {
  BfsRunner runner(topo);
  return runner.run(src, &faults);
}

BfsTree bfs_tree(const Topology& topo, NodeId src) {
  BfsRunner runner(topo);
  return runner.run(src, nullptr);
}

namespace {

struct PartialStats {
  std::uint64_t hop_sum = 0;
  std::uint64_t connected = 0;
  int max_hop = 0;
};

}  // namespace

DistanceStats bfs_all_pairs_stats(const Topology& topo, const FaultSet& faults, unsigned workers) {
  const std::uint32_t n = topo.server_count();
  std::vector<PartialStats> partial(std::max(1u, workers));
  detail::run_partitioned(n, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    BfsRunner runner(topo);
    PartialStats acc;
    for (auto s = static_cast<NodeId>(lo); s < hi; ++s) {
      const auto& tree = runner.run(s, &faults);
      for (NodeId t = 0; t < n; ++t) {
        const int d = tree.distance(t);
        if (d == kUnreachable) continue;
        ++acc.connected;
        acc.hop_sum += static_cast<std::uint64_t>(d);
        acc.max_hop = std::max(acc.max_hop, d);
      }
    }
    partial[w] = acc;
  });
  DistanceStats stats;
  for (const auto& p : partial) {
    stats.hop_sum += p.hop_sum;
    stats.connected_ordered_pairs += p.connected;
    stats.max_hop = std::max(stats.max_hop, p.max_hop);
  }
  stats.denominator = std::uint64_t{n} * n;
  const std::uint64_t non_self = stats.connected_ordered_pairs - n;
  stats.mean_hop = non_self == 0 ? 0.0 : static_cast<double>(stats.hop_sum) / static_cast<double>(non_self);
  return stats;
}

int bfs_eccentricity_max(const Topology& topo, const std::vector<NodeId>& sources, unsigned workers) {
  std::vector<int> best(std::max(1u, workers), 0);
  const FaultSet none(topo);
  detail::run_partitioned(sources.size(), workers,
                   [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
                     BfsRunner runner(topo);
                     int m = 0;
                     for (std::uint64_t i = lo; i < hi; ++i) {
                       const auto& tree = runner.run(sources[i], &none);
                       for (NodeId t = 0; t < topo.server_count(); ++t) m = std::max(m, tree.distance(t));
                     }
                     best[w] = m;
                   });
  return *std::max_element(best.begin(), best.end());
}

}  // namespace stellar
