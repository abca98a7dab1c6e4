#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stellar {

using NodeId = std::uint32_t;
using LinkId = std::uint32_t;
using ChannelId = std::uint32_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);
inline constexpr LinkId kNoLink = static_cast<LinkId>(-1);

enum class NodeKind : std::uint8_t { Server, Switch };

enum class Family : std::uint8_t { GQStar, FiConn, DPillar, GenericStellar };

std::string to_string(Family f);

struct FamilyInfo {
  Family family = Family::GenericStellar;
  int k = 0;
  int n = 0;

  // "GQ*_{3,10}", "FiConn_{2,24}", ... ; "stellar" for imported bases.
  std::string display_name() const;
};

// Unordered link, stored with a < b. `tag` is the FiConn level, GQ*
// dimension or DPillar switch column the link belongs to (-1 if none).
struct Link {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  int tag = -1;
};

struct Adjacent {
  NodeId node;
  LinkId link;
};

// Plain undirected simple graph used as the seed of the stellar transform.
// Nodes are 0..node_count-1; optional integer coordinates per node.
struct BaseGraph {
  std::uint32_t node_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // u < v
  std::vector<std::vector<int>> labels;                         // empty or one per node
  std::vector<int> edge_tags;                                   // empty or one per edge
  FamilyInfo family;

  std::vector<std::vector<std::uint32_t>> adjacency() const;
  bool connected() const;
  std::uint32_t degree(std::uint32_t v) const;
};

class TopologyBuilder;

// Server-centric network: servers occupy ids [0, N), switches [N, N + S).
// Immutable once built; safe to share across threads.
class Topology {
 public:
  Topology() = default;

  std::uint32_t server_count() const { return servers_; }
  std::uint32_t switch_count() const { return switches_; }
  std::uint32_t node_count() const { return servers_ + switches_; }
  std::uint32_t link_count() const { return static_cast<std::uint32_t>(links_.size()); }
  std::uint32_t channel_count() const { return 2 * link_count(); }

  bool contains(NodeId v) const { return v < node_count(); }
  bool is_server(NodeId v) const { return v < servers_; }
  NodeKind kind(NodeId v) const { return is_server(v) ? NodeKind::Server : NodeKind::Switch; }

  std::span<const Adjacent> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  const Link& link(LinkId id) const { return links_[id]; }
  std::span<const Link> links() const { return links_; }

  // Link joining u and v, if any. O(min degree); every link touches a server,
  // so this is O(1) for all valid queries.
  std::optional<LinkId> link_between(NodeId u, NodeId v) const;

  // Directional channel u -> v: 2*link + (u == link.a ? 0 : 1).
  // Throws ArgumentError when u and v are not adjacent.
  ChannelId channel(NodeId from, NodeId to) const;
  static LinkId channel_link(ChannelId c) { return c >> 1; }
  std::pair<NodeId, NodeId> channel_endpoints(ChannelId c) const;

  std::span<const int> label(NodeId v) const;
  bool has_labels() const { return !label_offsets_.empty(); }

  const FamilyInfo& family() const { return family_; }

  // Throws ArgumentError if v is not a node / not a server.
  void require_node(NodeId v) const;
  void require_server(NodeId v) const;

  // (#servers on the path) - 1. Switches are transparent to the metric.
  int hop_length(std::span<const NodeId> nodes) const;

 private:
  friend class TopologyBuilder;

  std::uint32_t servers_ = 0;
  std::uint32_t switches_ = 0;
  std::vector<Link> links_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Adjacent> adj_;
  std::vector<std::uint32_t> label_offsets_;
  std::vector<int> label_data_;
  FamilyInfo family_;
};

// Accumulates links and labels, then checks every server-centric invariant:
// no self-loops, no duplicate links, no switch-switch link, server degree 1..2.
class TopologyBuilder {
 public:
  TopologyBuilder(std::uint32_t servers, std::uint32_t switches, FamilyInfo family);

  NodeId server(std::uint32_t i) const { return i; }
  NodeId switch_node(std::uint32_t i) const { return servers_ + i; }

  void add_link(NodeId u, NodeId v, int tag = -1);
  void set_label(NodeId v, std::vector<int> label);

  // Throws DomainError naming the first violated invariant.
  Topology build() &&;

 private:
  std::uint32_t servers_;
  std::uint32_t switches_;
  FamilyInfo family_;
  std::vector<Link> links_;
  std::vector<std::vector<int>> labels_;
};

// Routed or BFS-produced server-to-server path.
struct Path {
  std::vector<NodeId> nodes;
  int hop_length = 0;

  static Path from_nodes(const Topology& topo, std::vector<NodeId> nodes);
  bool empty() const { return nodes.size() <= 1; }
};

// Aggregated hop statistics over ordered server pairs. The denominator is N^2
// and self-pairs count as connected.
struct DistanceStats {
  double mean_hop = 0.0;
  int max_hop = 0;
  std::uint64_t hop_sum = 0;                  // over connected non-self pairs
  std::uint64_t connected_ordered_pairs = 0;  // includes the N self-pairs
  std::uint64_t denominator = 0;              // N^2

  double connectivity_pct() const {
    return denominator == 0 ? 0.0 : 100.0 * static_cast<double>(connected_ordered_pairs) /
                                        static_cast<double>(denominator);
  }
};

}  // namespace stellar
