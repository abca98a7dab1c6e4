#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "stellar/graph.hpp"

namespace stellar {

// Flow counters per directional channel, plus routed/failed flow totals.
class LinkLoadTable {
 public:
  LinkLoadTable() = default;
  explicit LinkLoadTable(const Topology& topo);

  // Increments every channel the path crosses: one per server-server hop,
  // two per server-switch-server hop.
  void record_flow(const Topology& topo, std::span<const NodeId> path);
  void record_failure() { ++failed_flows_; }

  // Element-wise addition; both tables must cover the same topology.
  void merge(const LinkLoadTable& other);

  std::uint64_t load(ChannelId c) const { return loads_[c]; }
  std::span<const std::uint64_t> loads() const { return loads_; }
  std::uint64_t routed_flows() const { return routed_flows_; }
  std::uint64_t failed_flows() const { return failed_flows_; }
  std::uint64_t total_load() const { return total_; }
  std::size_t channel_count() const { return loads_.size(); }

  bool operator==(const LinkLoadTable&) const = default;

 private:
  std::vector<std::uint64_t> loads_;
  std::uint64_t routed_flows_ = 0;
  std::uint64_t failed_flows_ = 0;
  std::uint64_t total_ = 0;
};

// Flows on the most loaded channel (0 for an empty table).
std::uint64_t bottleneck(const LinkLoadTable& table);

// N(N-1) b / F. DomainError when F == 0.
double abt(std::uint64_t servers, std::uint64_t bottleneck_flows, double bandwidth = 1.0);

inline constexpr std::uint64_t kDefaultHistogramBin = 20'000;

struct LoadHistogram {
  std::uint64_t bin_width = kDefaultHistogramBin;
  std::map<std::uint64_t, std::uint64_t> bins;  // bin index -> channels (load / bin_width)
  std::uint64_t unused_channels = 0;            // channels carrying no flow
  std::uint64_t channels = 0;
  double mean_load_all = 0.0;                   // over every channel
  double mean_load_used = 0.0;                  // over channels carrying >= 1 flow
  std::uint64_t min_load = 0;
  std::uint64_t max_load = 0;
  std::uint64_t min_used_load = 0;
};

// DomainError when bin_width == 0.
LoadHistogram histogram(const LinkLoadTable& table, std::uint64_t bin_width = kDefaultHistogramBin);

// Server NIC ports left without a cable when every server has
// `ports_per_server` ports. FiConn's degree-1 servers each leave one.
std::uint64_t unconnected_server_ports(const Topology& topo, std::uint32_t ports_per_server = 2);

// Mean load over loaded channels plus `idle_ports` empty server ports, each
// counted as one zero-load channel. Wired channels that carry nothing are left
// out of the denominator.
double mean_load_ports(const LoadHistogram& h, std::uint64_t idle_ports);

struct CostParams {
  double rho = 0.05;    // switch-port cost / server cost
  double gamma = 0.157;  // cable cost / server cost
};

// Component cost per server, with the server cost normalised to 1.
//   GQ* / generic stellar: rho + gamma + 1 + gamma/2
//   FiConn_k:              rho + gamma + 1 + gamma/2 - gamma/2^(k+1)
//   DPillar:               2(rho + gamma) + 1
double cost_per_server(Family family, int k, const CostParams& params);
// The same, divided by the GQ* value.
double normalized_cost(Family family, int k, const CostParams& params);

// Geometric rho ladder used for cost tables.
inline constexpr double kRhoLadder[] = {0.01, 0.02, 0.04, 0.08, 0.16};

}  // namespace stellar
