#include "stellar/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "stellar/errors.hpp"

namespace stellar {

std::string to_string(Family f) {
  switch (f) {
    case Family::GQStar: return "gqstar";
    case Family::FiConn: return "ficonn";
    case Family::DPillar: return "dpillar";
    case Family::GenericStellar: return "stellar";
  }
  return "unknown";
}

std::string FamilyInfo::display_name() const {
  const std::string params = "_{" + std::to_string(k) + "," + std::to_string(n) + "}";
  switch (family) {
    case Family::GQStar: return "GQ*" + params;
    case Family::FiConn: return "FiConn" + params;
    case Family::DPillar: return "DPillar" + params;
    case Family::GenericStellar: return "stellar";
  }
  return "unknown";
}

std::vector<std::vector<std::uint32_t>> BaseGraph::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(node_count);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool BaseGraph::connected() const {
  if (node_count == 0) return false;
  const auto adj = adjacency();
  std::vector<char> seen(node_count, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::uint32_t count = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == node_count;
}

std::uint32_t BaseGraph::degree(std::uint32_t v) const {
  return static_cast<std::uint32_t>(
      std::count_if(edges.begin(), edges.end(), [v](auto e) { return e.first == v || e.second == v; }));
}

std::optional<LinkId> Topology::link_between(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  const NodeId probe = degree(u) <= degree(v) ? u : v;
  const NodeId other = probe == u ? v : u;
  for (const auto& a : neighbors(probe)) {
    if (a.node == other) return a.link;
  }
  return std::nullopt;
}

ChannelId Topology::channel(NodeId from, NodeId to) const {
  // Every link has a server endpoint, whose adjacency holds at most two entries.
  const NodeId probe = is_server(from) ? from : to;
  const NodeId other = probe == from ? to : from;
  if (probe < servers_) {
    for (std::uint32_t i = offsets_[probe]; i < offsets_[probe + 1]; ++i) {
      if (adj_[i].node == other) {
        const LinkId l = adj_[i].link;
        return 2 * l + (links_[l].a == from ? 0 : 1);
      }
    }
  }
  throw ArgumentError("nodes " + std::to_string(from) + " and " + std::to_string(to) +
                      " are not adjacent");
}

std::pair<NodeId, NodeId> Topology::channel_endpoints(ChannelId c) const {
  const Link& l = links_[channel_link(c)];
  return (c & 1) == 0 ? std::pair{l.a, l.b} : std::pair{l.b, l.a};
}

std::span<const int> Topology::label(NodeId v) const {
  if (label_offsets_.empty()) return {};
  return {label_data_.data() + label_offsets_[v], label_data_.data() + label_offsets_[v + 1]};
}

void Topology::require_node(NodeId v) const {
  if (!contains(v)) throw ArgumentError("unknown node id " + std::to_string(v));
}

void Topology::require_server(NodeId v) const {
  require_node(v);
  if (!is_server(v)) throw ArgumentError("node " + std::to_string(v) + " is a switch, not a server");
}

int Topology::hop_length(std::span<const NodeId> nodes) const {
  const auto servers = std::count_if(nodes.begin(), nodes.end(), [this](NodeId v) { return is_server(v); });
  return servers == 0 ? 0 : static_cast<int>(servers) - 1;
}

TopologyBuilder::TopologyBuilder(std::uint32_t servers, std::uint32_t switches, FamilyInfo family)
    : servers_(servers), switches_(switches), family_(family) {}

void TopologyBuilder::add_link(NodeId u, NodeId v, int tag) {
  if (u > v) std::swap(u, v);
  links_.push_back({u, v, tag});
}

void TopologyBuilder::set_label(NodeId v, std::vector<int> label) {
  if (labels_.empty()) labels_.resize(static_cast<std::size_t>(servers_) + switches_);
  labels_.at(v) = std::move(label);
}

Topology TopologyBuilder::build() && {
  const std::uint32_t nodes = servers_ + switches_;
  Topology t;
  t.servers_ = servers_;
  t.switches_ = switches_;
  t.family_ = family_;

  std::vector<std::uint32_t> deg(nodes, 0);
  for (const auto& l : links_) {
    if (l.b >= nodes) throw DomainError("link endpoint " + std::to_string(l.b) + " out of range");
    if (l.a == l.b) throw DomainError("self-loop at node " + std::to_string(l.a));
    if (l.a >= servers_) {
      throw DomainError("switch-switch link " + std::to_string(l.a) + "-" + std::to_string(l.b));
    }
    ++deg[l.a];
    ++deg[l.b];
  }
  for (NodeId s = 0; s < servers_; ++s) {
    if (deg[s] < 1 || deg[s] > 2) {
      throw DomainError("server " + std::to_string(s) + " has degree " + std::to_string(deg[s]));
    }
  }

  t.offsets_.assign(nodes + 1, 0);
  for (NodeId v = 0; v < nodes; ++v) t.offsets_[v + 1] = t.offsets_[v] + deg[v];
  t.adj_.resize(t.offsets_[nodes]);
  std::vector<std::uint32_t> fill(t.offsets_.begin(), t.offsets_.end() - 1);
  for (LinkId id = 0; id < links_.size(); ++id) {
    const auto& l = links_[id];
    t.adj_[fill[l.a]++] = {l.b, id};
    t.adj_[fill[l.b]++] = {l.a, id};
  }
  // Duplicate check: servers have degree <= 2, so compare their two entries.
  for (NodeId s = 0; s < servers_; ++s) {
    if (deg[s] == 2 && t.adj_[t.offsets_[s]].node == t.adj_[t.offsets_[s] + 1].node) {
      throw DomainError("duplicate link at server " + std::to_string(s));
    }
  }
  t.links_ = std::move(links_);

  if (!labels_.empty()) {
    t.label_offsets_.assign(nodes + 1, 0);
    for (NodeId v = 0; v < nodes; ++v) {
      t.label_offsets_[v + 1] = t.label_offsets_[v] + static_cast<std::uint32_t>(labels_[v].size());
    }
    t.label_data_.reserve(t.label_offsets_[nodes]);
    for (auto& l : labels_) t.label_data_.insert(t.label_data_.end(), l.begin(), l.end());
  }
  return t;
}

Path Path::from_nodes(const Topology& topo, std::vector<NodeId> nodes) {
  Path p;
  p.hop_length = topo.hop_length(nodes);
  p.nodes = std::move(nodes);
  return p;
}

}  // namespace stellar
