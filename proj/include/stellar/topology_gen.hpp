#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stellar/graph.hpp"

namespace stellar {

// Upper bound on nodes any generator will allocate.
inline constexpr std::uint64_t kDefaultMaxNodes = 50'000'000;

struct GQParams {
  int k = 1;  // dimensions
  int n = 2;  // radix
};

// Generalized hypercube GQ_{k,n}: n^k nodes labelled by k-tuples (coordinate
// i of node x is (x / n^i) % n), adjacent iff labels differ in one coordinate.
// Edge tags carry the differing dimension.
BaseGraph build_gq(GQParams params, std::uint64_t max_nodes = kDefaultMaxNodes);

// Per-server view of a stellar network. Base edge e = (u, v), u < v, carries
// servers 2e (attached to switch(u)) and 2e + 1 (attached to switch(v)).
struct StellarMap {
  std::vector<std::pair<NodeId, NodeId>> edge_servers;  // per base edge
  std::vector<NodeId> server_switch;                    // per server
  std::vector<NodeId> partner;                          // per server
  std::uint32_t server_count = 0;

  NodeId switch_of_base(std::uint32_t base_node) const { return server_count + base_node; }
  std::uint32_t base_of_switch(NodeId sw) const { return sw - server_count; }
};

struct StellarNetwork {
  Topology topology;
  StellarMap map;
};

// Puts two servers on every base edge; base nodes become switches.
// DomainError for trivial (edgeless) or disconnected bases.
StellarNetwork stellar_transform(const BaseGraph& base, std::uint64_t max_nodes = kDefaultMaxNodes);

// Recovers the map from a topology in which every server has exactly one
// server neighbour and one switch neighbour. DomainError otherwise.
StellarMap stellar_map(const Topology& topo);

// Inverse transform: switches become base nodes, server pairs become edges.
BaseGraph inverse_stellar(const Topology& topo);

StellarNetwork build_gq_star(GQParams params, std::uint64_t max_nodes = kDefaultMaxNodes);

// Whitespace separated "u v" lines; '#' starts a comment. Duplicate edges,
// self-loops and malformed lines raise InputError with the line number; an
// empty edge list raises DomainError.
BaseGraph load_base_graph(std::istream& in);
BaseGraph load_base_graph(std::string_view text);

struct FiConnParams {
  int k = 0;  // level
  int n = 2;  // switch radix, even
};

// Recursive structure shared by the builder and TOR. Servers of the level-l
// sub-network containing server s are [ (s / size[l]) * size[l], ... ).
struct FiConnLayout {
  int k = 0;
  int n = 0;
  std::vector<std::uint64_t> size;                  // N_l, l = 0..k
  std::vector<std::vector<std::uint32_t>> available;  // degree-1 servers of FiConn_l, local ids

  std::uint64_t copies(int level) const { return size[level] / size[level - 1]; }
  // Local ordinal used by copy i for its level-l link towards copy j.
  static std::uint32_t link_ordinal(std::uint64_t i, std::uint64_t j) {
    return static_cast<std::uint32_t>(2 * (j < i ? j : j - 1));
  }
  // Endpoint (local id within the level-l block) of the link joining copies i and j,
  // on copy i's side.
  std::uint64_t link_endpoint(int level, std::uint64_t i, std::uint64_t j) const {
    return i * size[level - 1] + available[level - 1][link_ordinal(i, j)];
  }
  std::uint64_t degree_one_count() const { return available[k].size(); }
};

FiConnLayout ficonn_layout(FiConnParams params, std::uint64_t max_nodes = kDefaultMaxNodes);

// FiConn_{k,n}. Server s sits on switch s / n. Labels: servers carry
// (copy index per level from k down to 1, index in FiConn_0); switches carry
// their index. Level-l links are tagged l, server-switch links 0.
Topology build_ficonn(FiConnParams params, std::uint64_t max_nodes = kDefaultMaxNodes);

struct DPillarParams {
  int k = 2;  // columns
  int n = 2;  // switch radix, even
};

// DPillar_{k,n}: server (c, u) has id c * h^k + index(u), h = n/2, index(u) =
// sum u_i h^i. Switch (c, g) has id N + c * h^(k-1) + g, where g is u with
// coordinate c dropped. Labels: (column, u_0 .. u_{k-1}) for servers,
// (column, g_0 .. g_{k-2}) for switches. Links are tagged with the switch column.
Topology build_dpillar(DPillarParams params, std::uint64_t max_nodes = kDefaultMaxNodes);

// Documented 48-port GQ* presets (all switch ports used).
inline constexpr GQParams kGQStar48PortPresets[] = {{2, 25}, {3, 17}, {4, 13}};

// Parses "gqstar:K:N", "ficonn:K:N", "dpillar:K:N" or "stellar:<edge-list path>".
Topology build_from_spec(const std::string& spec, std::uint64_t max_nodes = kDefaultMaxNodes);

// Node table: node_id,kind,label_tuple
void write_nodes_csv(const Topology& topo, std::ostream& out);
// Link table: link_src,link_dst,level_or_dimension
void write_links_csv(const Topology& topo, std::ostream& out);

}  // namespace stellar
