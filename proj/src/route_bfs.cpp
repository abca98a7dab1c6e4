#include "routing_internal.hpp"
#include "stellar/bfs.hpp"

namespace stellar::detail {
namespace {

// Keeps the tree of the last source, so source-ordered streams cost one BFS
// per source.
class BfsWorker final : public RouteWorker {
 public:
  BfsWorker(const Topology& topo, const FaultSet& faults) : runner_(topo), faults_(&faults) {}

  RouteStatus route(NodeId s, NodeId t, std::uint64_t, std::vector<NodeId>& out) override {
    if (s != source_) {
      tree_ = &runner_.run(s, faults_);
      source_ = s;
    }
    tree_->path_to(t, out);
    return out.empty() ? RouteStatus::NoRouteFound : RouteStatus::Routed;
  }

 private:
  BfsRunner runner_;
  const FaultSet* faults_;
  const BfsTree* tree_ = nullptr;
  NodeId source_ = kNoNode;
};

class BfsRouter final : public RouterBase {
 public:
  BfsRouter(const Topology& topo, const FaultSet& faults) : RouterBase(topo, faults) {}
  std::string_view name() const override { return "bfs"; }
  std::unique_ptr<RouteWorker> make_worker() const override {
    return std::make_unique<BfsWorker>(topology(), faults());
  }
};

}  // namespace

std::unique_ptr<Router> make_bfs_router(const Topology& topo, const FaultSet& faults) {
  return std::make_unique<BfsRouter>(topo, faults);
}

}  // namespace stellar::detail
