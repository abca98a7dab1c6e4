#include <vector>

#include "routing_internal.hpp"
#include "stellar/errors.hpp"
#include "stellar/topology_gen.hpp"

namespace stellar::detail {
namespace {

class TorWorker final : public RouteWorker {
 public:
  TorWorker(const FiConnLayout& layout, std::uint32_t servers) : layout_(&layout), servers_(servers) {}

  RouteStatus route(NodeId s, NodeId t, std::uint64_t, std::vector<NodeId>& out) override {
    out.clear();
    append(s, t, out);
    return RouteStatus::Routed;
  }

 private:
  // Appends TOR(s, t), both endpoints included.
  void append(NodeId s, NodeId t, std::vector<NodeId>& out) const {
    const FiConnLayout& L = *layout_;
    if (s == t) {
      out.push_back(s);
      return;
    }
    const auto n = static_cast<std::uint32_t>(L.n);
    if (s / n == t / n) {
      out.insert(out.end(), {s, servers_ + s / n, t});
      return;
    }
    int level = 1;
    while (s / L.size[level] != t / L.size[level]) ++level;
    const std::uint64_t base = s / L.size[level] * L.size[level];
    const std::uint64_t i = (s - base) / L.size[level - 1];
    const std::uint64_t j = (t - base) / L.size[level - 1];
    append(s, static_cast<NodeId>(base + L.link_endpoint(level, i, j)), out);
    append(static_cast<NodeId>(base + L.link_endpoint(level, j, i)), t, out);
  }

  const FiConnLayout* layout_;
  std::uint32_t servers_;
};

class TorRouter final : public RouterBase {
 public:
  TorRouter(const Topology& topo, const FaultSet& faults)
      : RouterBase(topo, faults), layout_(ficonn_layout({topo.family().k, topo.family().n})) {
    if (layout_.size.back() != topo.server_count()) throw DomainError("topology is not a FiConn instance");
  }
  std::string_view name() const override { return "ficonn-tor"; }
  std::unique_ptr<RouteWorker> make_worker() const override {
    return std::make_unique<TorWorker>(layout_, topology().server_count());
  }

 private:
  FiConnLayout layout_;
};

}  // namespace

std::unique_ptr<Router> make_ficonn_tor(const Topology& topo, const FaultSet& faults) {
  return std::make_unique<TorRouter>(topo, faults);
}

}  // namespace stellar::detail
