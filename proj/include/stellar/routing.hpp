#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stellar/faults.hpp"
#include "stellar/graph.hpp"

namespace stellar {

enum class RouteStatus : std::uint8_t { Routed, NoRouteFound, AttachmentFault, GaveUpAfterRetries };

std::string to_string(RouteStatus s);

struct RoutingOutcome {
  RouteStatus status = RouteStatus::NoRouteFound;
  Path path;  // meaningful only when status == Routed

  bool routed() const { return status == RouteStatus::Routed; }
};

struct RetryPolicy {
  int max_random_intermediates = 4;
  int crossing_budget = 0;  // 0 selects 8 * k * n
  std::uint64_t seed = 1;
};

// splitmix64 finaliser over (seed, index); the only source of per-flow randomness.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// Per-thread routing state. Routes are written into `out` as a node sequence
// from s to t (a single node when s == t).
class RouteWorker {
 public:
  virtual ~RouteWorker() = default;
  virtual RouteStatus route(NodeId s, NodeId t, std::uint64_t flow_index,
                            std::vector<NodeId>& out) = 0;
};

// A routing strategy bound to one topology and fault set. Immutable; make one
// worker per thread.
class Router {
 public:
  virtual ~Router() = default;
  virtual std::string_view name() const = 0;
  virtual std::unique_ptr<RouteWorker> make_worker() const = 0;

  // Convenience single-pair entry point; validates endpoints.
  RoutingOutcome route(NodeId s, NodeId t, std::uint64_t flow_index = 0) const;

  const Topology& topology() const { return *topo_; }
  const FaultSet& faults() const { return *faults_; }

 protected:
  Router(const Topology& topo, const FaultSet& faults) : topo_(&topo), faults_(&faults) {}

 private:
  const Topology* topo_;
  const FaultSet* faults_;
};

// Registered names: gq-dimension-order, gq-star-routing, ficonn-tor,
// dpillar-sp, dpillar-mp, bfs.
std::vector<std::string> router_names();
bool router_fault_tolerant(std::string_view name);
// DomainError if the router does not apply to the topology family or is not
// fault tolerant and faults are present; ArgumentError for unknown names.
// The topology and fault set must outlive the router.
std::unique_ptr<Router> make_router(std::string_view name, const Topology& topo,
                                    const FaultSet& faults, const RetryPolicy& policy = {});

// Single-pair entry points.
RoutingOutcome gq_star_dimension_order(const Topology& topo, NodeId s, NodeId t);
RoutingOutcome gq_star_routing(const Topology& topo, const FaultSet& faults, NodeId s, NodeId t,
                               const RetryPolicy& policy = {}, std::uint64_t flow_index = 0);
RoutingOutcome ficonn_tor(const Topology& topo, NodeId s, NodeId t);
RoutingOutcome dpillar_sp(const Topology& topo, NodeId s, NodeId t);
RoutingOutcome dpillar_mp(const Topology& topo, const FaultSet& faults, NodeId s, NodeId t,
                          const RetryPolicy& policy = {});
RoutingOutcome bfs_route(const Topology& topo, const FaultSet& faults, NodeId s, NodeId t);

// Removes cycles in place: when a node repeats, everything after its first
// occurrence up to and including the repeat is dropped.
void strip_loops(std::vector<NodeId>& nodes);

// Throws std::logic_error unless `nodes` is a simple s..t walk over live links.
void check_route(const Topology& topo, const FaultSet& faults, NodeId s, NodeId t,
                 const std::vector<NodeId>& nodes);

// Routed statistics over all ordered server pairs; pairs the router fails on
// count as unconnected.
DistanceStats routed_all_pairs_stats(const Router& router, unsigned workers = 1);

// Distance statistics under a registered router, or shortest paths when
// `router` is "bfs".
DistanceStats all_pairs_stats(const Topology& topo, const FaultSet& faults, std::string_view router,
                              unsigned workers = 1, const RetryPolicy& policy = {});

}  // namespace stellar
