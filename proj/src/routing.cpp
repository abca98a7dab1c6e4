#include "stellar/routing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "routing_internal.hpp"
#include "stellar/bfs.hpp"
#include "stellar/errors.hpp"

namespace stellar {

std::string to_string(RouteStatus s) {
  switch (s) {
    case RouteStatus::Routed: return "routed";
    case RouteStatus::NoRouteFound: return "no-route-found";
    case RouteStatus::AttachmentFault: return "attachment-fault";
    case RouteStatus::GaveUpAfterRetries: return "gave-up-after-retries";
  }
  return "unknown";
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RoutingOutcome Router::route(NodeId s, NodeId t, std::uint64_t flow_index) const {
  topology().require_server(s);
  topology().require_server(t);
  std::vector<NodeId> nodes;
  RoutingOutcome outcome;
  outcome.status = make_worker()->route(s, t, flow_index, nodes);
  if (outcome.routed()) outcome.path = Path::from_nodes(topology(), std::move(nodes));
  return outcome;
}

std::vector<std::string> router_names() {
  return {"gq-dimension-order", "gq-star-routing", "ficonn-tor", "dpillar-sp", "dpillar-mp", "bfs"};
}

bool router_fault_tolerant(std::string_view name) {
  return name == "gq-star-routing" || name == "dpillar-mp" || name == "bfs";
}

std::unique_ptr<Router> make_router(std::string_view name, const Topology& topo,
                                    const FaultSet& faults, const RetryPolicy& policy) {
  const auto names = router_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ArgumentError("unknown router '" + std::string(name) + "'");
  }
  if (policy.max_random_intermediates < 0) throw ArgumentError("max_random_intermediates must be >= 0");
  if (policy.crossing_budget < 0) throw ArgumentError("crossing_budget must be >= 0");
  if (!faults.empty() && !router_fault_tolerant(name)) {
    throw DomainError("router '" + std::string(name) + "' does not tolerate faults");
  }
  const Family family = topo.family().family;
  auto require = [&](Family f) {
    if (family != f) {
      throw DomainError("router '" + std::string(name) + "' does not apply to " + topo.family().display_name());
    }
  };
  if (name == "gq-dimension-order" || name == "gq-star-routing") {
    require(Family::GQStar);
    return detail::make_gq_router(topo, faults, policy, name == "gq-star-routing");
  }
  if (name == "ficonn-tor") {
    require(Family::FiConn);
    return detail::make_ficonn_tor(topo, faults);
  }
  if (name == "dpillar-sp" || name == "dpillar-mp") {
    require(Family::DPillar);
    return detail::make_dpillar_router(topo, faults, name == "dpillar-mp");
  }
  return detail::make_bfs_router(topo, faults);
}

RoutingOutcome gq_star_dimension_order(const Topology& topo, NodeId s, NodeId t) {
  const FaultSet none(topo);
  return make_router("gq-dimension-order", topo, none)->route(s, t);
}

RoutingOutcome gq_star_routing(const Topology& topo, const FaultSet& faults, NodeId s, NodeId t,
                               const RetryPolicy& policy, std::uint64_t flow_index) {
  return make_router("gq-star-routing", topo, faults, policy)->route(s, t, flow_index);
}

RoutingOutcome ficonn_tor(const Topology& topo, NodeId s, NodeId t) {
  const FaultSet none(topo);
  return make_router("ficonn-tor", topo, none)->route(s, t);
}

RoutingOutcome dpillar_sp(const Topology& topo, NodeId s, NodeId t) {
  const FaultSet none(topo);
  return make_router("dpillar-sp", topo, none)->route(s, t);
}

RoutingOutcome dpillar_mp(const Topology& topo, const FaultSet& faults, NodeId s, NodeId t,
                          const RetryPolicy& policy) {
  return make_router("dpillar-mp", topo, faults, policy)->route(s, t);
}

RoutingOutcome bfs_route(const Topology& topo, const FaultSet& faults, NodeId s, NodeId t) {
  return make_router("bfs", topo, faults)->route(s, t);
}

void strip_loops(std::vector<NodeId>& nodes) {
  std::vector<NodeId> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) {
    auto it = std::find(out.begin(), out.end(), v);
    if (it != out.end()) {
      out.erase(it + 1, out.end());
    } else {
      out.push_back(v);
    }
  }
  nodes.swap(out);
}

void check_route(const Topology& topo, const FaultSet& faults, NodeId s, NodeId t,
                 const std::vector<NodeId>& nodes) {
  auto fail = [&](const std::string& why) {
    throw std::logic_error("route " + std::to_string(s) + "->" + std::to_string(t) + ": " + why);
  };
  if (nodes.empty() || nodes.front() != s || nodes.back() != t) fail("wrong endpoints");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!topo.contains(nodes[i + 1])) fail("unknown node");
    const auto link = topo.link_between(nodes[i], nodes[i + 1]);
    if (!link) fail("nodes " + std::to_string(nodes[i]) + " and " + std::to_string(nodes[i + 1]) + " not adjacent");
    if (faults.failed(*link)) fail("crosses failed link " + std::to_string(*link));
  }
  std::vector<NodeId> sorted(nodes);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("repeats a node");
}

namespace {

struct PartialStats {
  std::uint64_t hop_sum = 0;
  std::uint64_t connected = 0;
  int max_hop = 0;
};

}  // namespace

DistanceStats routed_all_pairs_stats(const Router& router, unsigned workers) {
  const Topology& topo = router.topology();
  const std::uint32_t n = topo.server_count();
  std::vector<PartialStats> partial(std::max(1u, workers));
  detail::run_partitioned(n, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    auto worker = router.make_worker();
    std::vector<NodeId> path;
    PartialStats acc;
    for (auto s = static_cast<NodeId>(lo); s < hi; ++s) {
      for (NodeId t = 0; t < n; ++t) {
        if (worker->route(s, t, std::uint64_t{s} * n + t, path) != RouteStatus::Routed) continue;
        const int hop = topo.hop_length(path);
        ++acc.connected;
        acc.hop_sum += static_cast<std::uint64_t>(hop);
        acc.max_hop = std::max(acc.max_hop, hop);
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
  const std::uint64_t non_self = stats.connected_ordered_pairs - std::min<std::uint64_t>(n, stats.connected_ordered_pairs);
  stats.mean_hop = non_self == 0 ? 0.0 : static_cast<double>(stats.hop_sum) / static_cast<double>(non_self);
  return stats;
}

DistanceStats all_pairs_stats(const Topology& topo, const FaultSet& faults, std::string_view router,
                              unsigned workers, const RetryPolicy& policy) {
  if (router == "bfs") return bfs_all_pairs_stats(topo, faults, workers);
  return routed_all_pairs_stats(*make_router(router, topo, faults, policy), workers);
}

}  // namespace stellar
