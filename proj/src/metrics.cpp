#include "stellar/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "stellar/errors.hpp"

namespace stellar {

LinkLoadTable::LinkLoadTable(const Topology& topo) : loads_(topo.channel_count(), 0) {}

void LinkLoadTable::record_flow(const Topology& topo, std::span<const NodeId> path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) ++loads_[topo.channel(path[i], path[i + 1])];
  if (!path.empty()) total_ += path.size() - 1;
  ++routed_flows_;
}

void LinkLoadTable::merge(const LinkLoadTable& other) {
  if (loads_.empty()) loads_.assign(other.loads_.size(), 0);
  if (other.loads_.size() != loads_.size()) throw ArgumentError("cannot merge tables of different topologies");
  for (std::size_t c = 0; c < loads_.size(); ++c) loads_[c] += other.loads_[c];
  routed_flows_ += other.routed_flows_;
  failed_flows_ += other.failed_flows_;
  total_ += other.total_;
}

std::uint64_t bottleneck(const LinkLoadTable& table) {
  const auto loads = table.loads();
  return loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
}

double abt(std::uint64_t servers, std::uint64_t bottleneck_flows, double bandwidth) {
  if (bottleneck_flows == 0) throw DomainError("ABT is undefined when no channel carries a flow");
  const double n = static_cast<double>(servers);
  return n * (n - 1.0) * bandwidth / static_cast<double>(bottleneck_flows);
}

LoadHistogram histogram(const LinkLoadTable& table, std::uint64_t bin_width) {
  if (bin_width == 0) throw DomainError("histogram bin width must be positive");
  LoadHistogram h;
  h.bin_width = bin_width;
  h.channels = table.channel_count();
  if (h.channels == 0) return h;
  h.min_load = UINT64_MAX;
  h.min_used_load = UINT64_MAX;
  std::uint64_t sum = 0;
  for (std::uint64_t load : table.loads()) {
    ++h.bins[load / bin_width];
    sum += load;
    h.min_load = std::min(h.min_load, load);
    h.max_load = std::max(h.max_load, load);
    if (load == 0) {
      ++h.unused_channels;
    } else {
      h.min_used_load = std::min(h.min_used_load, load);
    }
  }
  if (h.min_used_load == UINT64_MAX) h.min_used_load = 0;
  const std::uint64_t used = h.channels - h.unused_channels;
  h.mean_load_all = static_cast<double>(sum) / static_cast<double>(h.channels);
  h.mean_load_used = used == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(used);
  return h;
}

std::uint64_t unconnected_server_ports(const Topology& topo, std::uint32_t ports_per_server) {
  std::uint64_t idle = 0;
  for (NodeId s = 0; s < topo.server_count(); ++s) {
    if (topo.degree(s) < ports_per_server) idle += ports_per_server - topo.degree(s);
  }
  return idle;
}

double mean_load_ports(const LoadHistogram& h, std::uint64_t idle_ports) {
  const std::uint64_t denom = h.channels - h.unused_channels + idle_ports;
  if (denom == 0) return 0.0;
  return h.mean_load_all * static_cast<double>(h.channels) / static_cast<double>(denom);
}

double cost_per_server(Family family, int k, const CostParams& p) {
  if (!(p.rho >= 0.0) || !(p.gamma >= 0.0)) throw ArgumentError("cost ratios must be nonnegative");
  switch (family) {
    case Family::GQStar:
    case Family::GenericStellar:
      return p.rho + p.gamma + 1.0 + p.gamma / 2.0;
    case Family::FiConn:
      if (k < 0) throw ArgumentError("FiConn level must be nonnegative");
      return p.rho + p.gamma + 1.0 + p.gamma / 2.0 - p.gamma / std::ldexp(1.0, k + 1);
    case Family::DPillar:
      return 2.0 * (p.rho + p.gamma) + 1.0;
  }
  throw ArgumentError("unknown family");
}

double normalized_cost(Family family, int k, const CostParams& params) {
  return cost_per_server(family, k, params) / cost_per_server(Family::GQStar, 0, params);
}

}  // namespace stellar
