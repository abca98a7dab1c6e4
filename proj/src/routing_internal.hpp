#pragma once

#include <memory>

#include "stellar/routing.hpp"

namespace stellar::detail {

std::unique_ptr<Router> make_gq_router(const Topology& topo, const FaultSet& faults,
                                       const RetryPolicy& policy, bool fault_tolerant);
std::unique_ptr<Router> make_ficonn_tor(const Topology& topo, const FaultSet& faults);
std::unique_ptr<Router> make_dpillar_router(const Topology& topo, const FaultSet& faults,
                                            bool multi_path);
std::unique_ptr<Router> make_bfs_router(const Topology& topo, const FaultSet& faults);

// Lets the per-family files derive from Router without widening its public
// constructor.
class RouterBase : public Router {
 protected:
  using Router::Router;
};

}  // namespace stellar::detail
