#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "routing_internal.hpp"
#include "stellar/errors.hpp"
#include "stellar/topology_gen.hpp"

namespace stellar::detail {
namespace {

// Immutable lookup tables over a GQ* instance, indexed by base node x
// (switch id N + x).
struct GQTables {
  int k = 0;
  int n = 0;
  std::uint32_t servers = 0;
  std::vector<std::uint32_t> stride;
  std::vector<std::uint8_t> coord;   // x * k + i
  std::vector<NodeId> gateway;       // (x * k + i) * n + w: server on x's side of edge x -> x[i := w]
  std::vector<NodeId> partner;       // per server
  std::vector<std::uint32_t> home;   // base node of the server's switch
  std::vector<LinkId> home_link;     // server-switch link
  std::vector<LinkId> pair_link;     // server-server link

  int c(std::uint32_t x, int i) const { return coord[std::size_t{x} * k + i]; }
  NodeId gw(std::uint32_t x, int i, int w) const { return gateway[(std::size_t{x} * k + i) * n + w]; }
  std::uint32_t with(std::uint32_t x, int i, int w) const {
    return x + static_cast<std::uint32_t>((w - c(x, i))) * stride[i];
  }
  int hamming(std::uint32_t x, std::uint32_t y) const {
    int d = 0;
    for (int i = 0; i < k; ++i) d += c(x, i) != c(y, i);
    return d;
  }
};

GQTables build_tables(const Topology& topo) {
  GQTables t;
  t.k = topo.family().k;
  t.n = topo.family().n;
  t.servers = topo.server_count();
  const std::uint32_t base_nodes = topo.switch_count();
  std::uint64_t expect = 1;
  for (int i = 0; i < t.k; ++i) {
    t.stride.push_back(static_cast<std::uint32_t>(expect));
    expect *= static_cast<std::uint64_t>(t.n);
  }
  if (t.k < 1 || t.n < 2 || expect != base_nodes) throw DomainError("topology is not a GQ* instance");

  const StellarMap map = stellar_map(topo);
  t.coord.resize(std::size_t{base_nodes} * t.k);
  for (std::uint32_t x = 0; x < base_nodes; ++x) {
    for (int i = 0; i < t.k; ++i) t.coord[std::size_t{x} * t.k + i] = static_cast<std::uint8_t>((x / t.stride[i]) % t.n);
  }
  t.gateway.assign(std::size_t{base_nodes} * t.k * t.n, kNoNode);
  t.partner = map.partner;
  t.home.resize(t.servers);
  t.home_link.resize(t.servers);
  t.pair_link.resize(t.servers);
  for (NodeId s = 0; s < t.servers; ++s) {
    t.home[s] = map.base_of_switch(map.server_switch[s]);
    t.home_link[s] = *topo.link_between(s, map.server_switch[s]);
    t.pair_link[s] = *topo.link_between(s, map.partner[s]);
  }
  for (NodeId s = 0; s < t.servers; ++s) {
    const std::uint32_t x = t.home[s];
    const std::uint32_t y = t.home[t.partner[s]];
    int dim = -1;
    for (int i = 0; i < t.k; ++i) {
      if (t.c(x, i) == t.c(y, i)) continue;
      if (dim >= 0) throw DomainError("server pair spans two dimensions");
      dim = i;
    }
    if (dim < 0) throw DomainError("server pair shares a switch");
    t.gateway[(std::size_t{x} * t.k + dim) * t.n + t.c(y, dim)] = s;
  }
  for (std::uint32_t x = 0; x < base_nodes; ++x) {
    for (int i = 0; i < t.k; ++i) {
      for (int w = 0; w < t.n; ++w) {
        if (w != t.c(x, i) && t.gw(x, i, w) == kNoNode) throw DomainError("topology is not a GQ* instance");
      }
    }
  }
  return t;
}

class GQRouter;

class GQWorker final : public RouteWorker {
 public:
  explicit GQWorker(const GQRouter& router);
  RouteStatus route(NodeId s, NodeId t, std::uint64_t flow_index, std::vector<NodeId>& out) override;

 private:
  struct Option {
    NodeId s0;
    NodeId t0;
    int predicted;
  };

  bool live(LinkId l) const { return !check_ || !faults_->failed(l); }
  // Routes s -> t without intermediates. Writes the walk into `out`.
  RouteStatus direct(NodeId s, NodeId t, std::vector<NodeId>& out);
  bool dfs(std::uint32_t x, std::uint32_t target, std::vector<NodeId>& out);
  bool crossing_live(NodeId a) const {
    return live(tables_->home_link[a]) && live(tables_->pair_link[a]) &&
           live(tables_->home_link[tables_->partner[a]]);
  }

  const GQTables* tables_;
  const FaultSet* faults_;
  RetryPolicy policy_;
  bool check_;
  bool retry_;
  int budget_ = 0;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> dead_;  // per base node, == stamp_ when exhausted
  std::vector<NodeId> first_;
  std::vector<NodeId> second_;
};

class GQRouter final : public RouterBase {
 public:
  GQRouter(const Topology& topo, const FaultSet& faults, const RetryPolicy& policy, bool fault_tolerant)
      : RouterBase(topo, faults), tables_(build_tables(topo)), policy_(policy), fault_tolerant_(fault_tolerant) {
    if (policy_.crossing_budget == 0) policy_.crossing_budget = 8 * tables_.k * tables_.n;
  }

  std::string_view name() const override { return fault_tolerant_ ? "gq-star-routing" : "gq-dimension-order"; }
  std::unique_ptr<RouteWorker> make_worker() const override { return std::make_unique<GQWorker>(*this); }

  const GQTables& tables() const { return tables_; }
  const RetryPolicy& policy() const { return policy_; }
  bool fault_tolerant() const { return fault_tolerant_; }

 private:
  GQTables tables_;
  RetryPolicy policy_;
  bool fault_tolerant_;
};

GQWorker::GQWorker(const GQRouter& router)
    : tables_(&router.tables()),
      faults_(&router.faults()),
      policy_(router.policy()),
      check_(!router.faults().empty()),
      retry_(router.fault_tolerant()),
      dead_(router.topology().switch_count(), 0) {}

bool GQWorker::dfs(std::uint32_t x, std::uint32_t target, std::vector<NodeId>& out) {
  if (x == target) return true;
  const GQTables& g = *tables_;
  const NodeId servers = g.servers;
  // Direct crossings in every open dimension come first; a local proxy is
  // only tried once none of them leads on.
  for (int i = 0; i < g.k; ++i) {
    const int want = g.c(target, i);
    if (g.c(x, i) == want) continue;
    const std::uint32_t y = g.with(x, i, want);
    if (dead_[y] == stamp_) continue;
    if (budget_-- <= 0) return false;
    const NodeId a = g.gw(x, i, want);
    if (!crossing_live(a)) continue;
    out.insert(out.end(), {a, g.partner[a], servers + y});
    if (dfs(y, target, out)) return true;
    out.resize(out.size() - 3);
    if (budget_ <= 0) return false;
  }
  for (int i = 0; i < g.k; ++i) {
    const int want = g.c(target, i);
    if (g.c(x, i) == want) continue;
    const std::uint32_t y = g.with(x, i, want);
    if (dead_[y] == stamp_ || crossing_live(g.gw(x, i, want))) continue;
    for (int w = 0; w < g.n; ++w) {
      if (w == g.c(x, i) || w == want) continue;
      if (budget_-- <= 0) return false;
      const std::uint32_t p = g.with(x, i, w);
      const NodeId a1 = g.gw(x, i, w);
      const NodeId a2 = g.gw(p, i, want);
      if (!crossing_live(a1) || !crossing_live(a2)) continue;
      out.insert(out.end(), {a1, g.partner[a1], servers + p, a2, g.partner[a2], servers + y});
      if (dfs(y, target, out)) return true;
      out.resize(out.size() - 6);
      break;  // y is exhausted; other proxies lead to the same place
    }
    if (budget_ <= 0) return false;
  }
  dead_[x] = stamp_;
  return false;
}

RouteStatus GQWorker::direct(NodeId s, NodeId t, std::vector<NodeId>& out) {
  const GQTables& g = *tables_;
  out.clear();
  if (s == t) {
    out.push_back(s);
    return RouteStatus::Routed;
  }
  // Either endpoint may enter the base graph through its own switch or its
  // partner's. Options are ordered by predicted hop length.
  const NodeId sp = g.partner[s];
  const NodeId tp = g.partner[t];
  std::array<Option, 4> options{{{s, t, 0}, {sp, t, 0}, {s, tp, 0}, {sp, tp, 0}}};
  int count = 0;
  for (const Option& o : options) {
    const bool via_switch = o.s0 != o.t0;
    if (check_) {
      if (o.s0 != s && !live(g.pair_link[s])) continue;
      if (o.t0 != t && !live(g.pair_link[t])) continue;
      if (via_switch && (!live(g.home_link[o.s0]) || !live(g.home_link[o.t0]))) continue;
    }
    Option kept = o;
    kept.predicted = (o.s0 != s) + (o.t0 != t) + (via_switch ? 2 * g.hamming(g.home[o.s0], g.home[o.t0]) + 1 : 0);
    options[count++] = kept;
  }
  if (count == 0) return RouteStatus::AttachmentFault;
  std::stable_sort(options.begin(), options.begin() + count,
                   [](const Option& a, const Option& b) { return a.predicted < b.predicted; });

  budget_ = policy_.crossing_budget;
  for (int o = 0; o < count; ++o) {
    const Option& opt = options[o];
    out.clear();
    out.push_back(s);
    if (opt.s0 != s) out.push_back(opt.s0);
    if (opt.s0 != opt.t0) {
      const std::uint32_t x = g.home[opt.s0];
      out.push_back(g.servers + x);
      ++stamp_;
      if (stamp_ == 0) {
        std::fill(dead_.begin(), dead_.end(), 0);
        stamp_ = 1;
      }
      if (!dfs(x, g.home[opt.t0], out)) {
        if (budget_ <= 0) break;
        continue;
      }
      out.push_back(opt.t0);
    }
    if (opt.t0 != t) out.push_back(t);
    if (check_) strip_loops(out);
    return RouteStatus::Routed;
  }
  out.clear();
  return RouteStatus::NoRouteFound;
}

RouteStatus GQWorker::route(NodeId s, NodeId t, std::uint64_t flow_index, std::vector<NodeId>& out) {
  const RouteStatus status = direct(s, t, out);
  if (status != RouteStatus::NoRouteFound || !retry_) return status;
  const int attempts = policy_.max_random_intermediates;
  if (attempts == 0) return status;
  const std::uint64_t flow_seed = mix_seed(policy_.seed, flow_index);
  for (int a = 0; a < attempts; ++a) {
    const auto r = static_cast<NodeId>(mix_seed(flow_seed, static_cast<std::uint64_t>(a)) % tables_->servers);
    if (r == s || r == t) continue;
    if (direct(s, r, first_) != RouteStatus::Routed) continue;
    if (direct(r, t, second_) != RouteStatus::Routed) continue;
    out.assign(first_.begin(), first_.end());
    out.insert(out.end(), second_.begin() + 1, second_.end());
    strip_loops(out);
    return RouteStatus::Routed;
  }
  out.clear();
  return RouteStatus::GaveUpAfterRetries;
}

}  // namespace

std::unique_ptr<Router> make_gq_router(const Topology& topo, const FaultSet& faults,
                                       const RetryPolicy& policy, bool fault_tolerant) {
  return std::make_unique<GQRouter>(topo, faults, policy, fault_tolerant);
}

}  // namespace stellar::detail
