#include <algorithm>
#include <vector>

#include "routing_internal.hpp"
#include "stellar/errors.hpp"

namespace stellar::detail {
namespace {

// Index arithmetic shared by both DPillar routers.
struct DPillarShape {
  int k = 0;
  std::uint32_t h = 0;
  std::uint32_t per_column = 0;  // h^k
  std::uint32_t groups = 0;      // h^(k-1)
  std::uint32_t servers = 0;
  std::vector<std::uint32_t> stride;

  explicit DPillarShape(const Topology& topo) {
    k = topo.family().k;
    h = static_cast<std::uint32_t>(topo.family().n / 2);
    std::uint64_t p = 1;
    for (int i = 0; i < k; ++i) {
      stride.push_back(static_cast<std::uint32_t>(p));
      p *= h;
    }
    per_column = static_cast<std::uint32_t>(p);
    groups = per_column / h;
    servers = topo.server_count();
    if (std::uint64_t{per_column} * k != servers || std::uint64_t{groups} * k != topo.switch_count()) {
      throw DomainError("topology is not a DPillar instance");
    }
  }

  std::uint32_t column(NodeId s) const { return s / per_column; }
  std::uint32_t name(NodeId s) const { return s % per_column; }
  std::uint32_t digit(std::uint32_t name, int i) const { return name / stride[i] % h; }
  std::uint32_t set_digit(std::uint32_t name, int i, std::uint32_t w) const {
    return name + (w - digit(name, i)) * stride[i];
  }
  NodeId server(std::uint32_t c, std::uint32_t name) const { return c * per_column + name; }
  // Switch in column c serving `name`.
  NodeId switch_of(std::uint32_t c, std::uint32_t name) const {
    const std::uint32_t low = name % stride[c];
    const std::uint32_t high = name / stride[c] / h;
    return servers + c * groups + low + high * stride[c];
  }
  std::uint32_t next(std::uint32_t c) const { return (c + 1) % static_cast<std::uint32_t>(k); }
  std::uint32_t prev(std::uint32_t c) const { return (c + static_cast<std::uint32_t>(k) - 1) % static_cast<std::uint32_t>(k); }
};

class SpWorker final : public RouteWorker {
 public:
  explicit SpWorker(const DPillarShape& shape) : shape_(&shape) {}

  RouteStatus route(NodeId s, NodeId t, std::uint64_t, std::vector<NodeId>& out) override {
    const DPillarShape& d = *shape_;
    out.clear();
    out.push_back(s);
    const std::uint32_t target = d.name(t);
    NodeId cur = s;
    while (cur != t) {
      const std::uint32_t c = d.column(cur);
      const std::uint32_t name = d.name(cur);
      const std::uint32_t moved = d.set_digit(name, static_cast<int>(c), d.digit(target, static_cast<int>(c)));
      cur = d.server(d.next(c), moved);
      out.push_back(d.switch_of(c, name));
      out.push_back(cur);
    }
    return RouteStatus::Routed;
  }

 private:
  const DPillarShape* shape_;
};

// Depth-first search over group members, trying the clockwise SP move
// first, so the fault-free result is the SP path.
class MpWorker final : public RouteWorker {
 public:
  MpWorker(const Topology& topo, const FaultSet& faults, const DPillarShape& shape)
      : topo_(&topo),
        faults_(&faults),
        shape_(&shape),
        seen_(topo.node_count(), 0),
        ttl_(4 * shape.k) {}

  RouteStatus route(NodeId s, NodeId t, std::uint64_t, std::vector<NodeId>& out) override {
    out.clear();
    out.push_back(s);
    if (s == t) return RouteStatus::Routed;
    if (++stamp_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      stamp_ = 1;
    }
    seen_[s] = stamp_;
    if (search(s, t, ttl_, out)) return RouteStatus::Routed;
    out.clear();
    return RouteStatus::NoRouteFound;
  }

 private:
  bool live(NodeId server, NodeId sw) const {
    if (faults_->empty()) return true;
    return !faults_->failed(*topo_->link_between(server, sw));
  }

  bool step(NodeId cur, NodeId sw, NodeId next, NodeId t, int ttl, std::vector<NodeId>& out) {
    if (seen_[next] == stamp_ || seen_[sw] == stamp_) return false;
    if (!live(cur, sw) || !live(next, sw)) return false;
    seen_[next] = stamp_;
    seen_[sw] = stamp_;
    out.push_back(sw);
    out.push_back(next);
    if (next == t || search(next, t, ttl - 1, out)) return true;
    out.resize(out.size() - 2);
    seen_[sw] = 0;  // switches may be reused by other branches
    return false;
  }

  bool search(NodeId cur, NodeId t, int ttl, std::vector<NodeId>& out) {
    if (ttl <= 0) return false;
    const DPillarShape& d = *shape_;
    const auto c = d.column(cur);
    const auto name = d.name(cur);
    const auto target = d.name(t);
    const auto cw = d.next(c);
    const auto ccw = d.prev(c);
    const auto ic = static_cast<int>(c);
    const auto iccw = static_cast<int>(ccw);
    const NodeId cw_switch = d.switch_of(c, name);
    const NodeId ccw_switch = d.switch_of(ccw, name);
    const std::uint32_t cw_fix = d.digit(target, ic);
    const std::uint32_t ccw_fix = d.digit(target, iccw);

    if (step(cur, cw_switch, d.server(cw, d.set_digit(name, ic, cw_fix)), t, ttl, out)) return true;
    if (d.digit(name, iccw) != ccw_fix &&
        step(cur, ccw_switch, d.server(ccw, d.set_digit(name, iccw, ccw_fix)), t, ttl, out)) {
      return true;
    }
    if (step(cur, ccw_switch, d.server(ccw, name), t, ttl, out)) return true;
    for (std::uint32_t w = 0; w < d.h; ++w) {
      if (w == cw_fix) continue;
      if (step(cur, cw_switch, d.server(cw, d.set_digit(name, ic, w)), t, ttl, out)) return true;
    }
    for (std::uint32_t w = 0; w < d.h; ++w) {
      if (w == ccw_fix || w == d.digit(name, iccw)) continue;
      if (step(cur, ccw_switch, d.server(ccw, d.set_digit(name, iccw, w)), t, ttl, out)) return true;
    }
    return false;
  }

  const Topology* topo_;
  const FaultSet* faults_;
  const DPillarShape* shape_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  int ttl_;
};

class DPillarRouter final : public RouterBase {
 public:
  DPillarRouter(const Topology& topo, const FaultSet& faults, bool multi_path)
      : RouterBase(topo, faults), shape_(topo), multi_path_(multi_path) {}

  std::string_view name() const override { return multi_path_ ? "dpillar-mp" : "dpillar-sp"; }
  std::unique_ptr<RouteWorker> make_worker() const override {
    if (multi_path_) return std::make_unique<MpWorker>(topology(), faults(), shape_);
    return std::make_unique<SpWorker>(shape_);
  }

 private:
  DPillarShape shape_;
  bool multi_path_;
};

}  // namespace

std::unique_ptr<Router> make_dpillar_router(const Topology& topo, const FaultSet& faults, bool multi_path) {
  return std::make_unique<DPillarRouter>(topo, faults, multi_path);
}

}  // namespace stellar::detail
