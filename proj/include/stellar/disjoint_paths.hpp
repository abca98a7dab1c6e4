#pragma once

#include <cstdint>

#include "stellar/graph.hpp"

namespace stellar {

// Maximum number of s-t paths that are internally node-disjoint except at the
// attachment switches of s and t. Exact unit-capacity max-flow with node
// splitting; meant for small instances.
// DomainError when s and t share a switch or are partners.
int parallel_paths(const Topology& topo, NodeId s, NodeId t);

// Maximum number of s-t paths with pairwise disjoint internal servers
// (switches may be shared). DomainError when s and t share a switch.
int server_parallel_paths(const Topology& topo, NodeId s, NodeId t);

}  // namespace stellar
