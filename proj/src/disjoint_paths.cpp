#include "stellar/disjoint_paths.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "stellar/errors.hpp"

namespace stellar {
namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Dinic max-flow on a small explicit network.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

  void add_edge(int u, int v, int cap) {
    edges_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[v], 0});
    head_[v] = static_cast<int>(edges_.size()) - 1;
  }

  int max_flow(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (int f = dfs(s, t, kInf)) flow += f;
    }
    return flow;
  }

 private:
  struct Edge {
    int to;
    int next;
    int cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int u, int t, int pushed) {
    if (u == t) return pushed;
    for (int& e = iter_[u]; e != -1; e = edges_[e].next) {
      Edge& ed = edges_[e];
      if (ed.cap <= 0 || level_[ed.to] != level_[u] + 1) continue;
      if (int f = dfs(ed.to, t, std::min(pushed, ed.cap))) {
        ed.cap -= f;
        edges_[e ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

NodeId attachment_switch(const Topology& topo, NodeId s) {
  for (const auto& a : topo.neighbors(s)) {
    if (!topo.is_server(a.node)) return a.node;
  }
  return kNoNode;
}

bool partners(const Topology& topo, NodeId s, NodeId t) {
  const auto l = topo.link_between(s, t);
  return l.has_value();
}

void check_pair(const Topology& topo, NodeId s, NodeId t) {
  topo.require_server(s);
  topo.require_server(t);
  if (s == t) throw DomainError("parallel paths need two distinct servers");
  const NodeId ss = attachment_switch(topo, s);
  if (ss != kNoNode && ss == attachment_switch(topo, t)) {
    throw DomainError("servers " + std::to_string(s) + " and " + std::to_string(t) +
                      " share a switch");
  }
}

// Node v splits into in = 2v, out = 2v + 1.
int count_paths(const Topology& topo, NodeId s, NodeId t, bool switches_capacitated) {
  const NodeId ss = attachment_switch(topo, s);
  const NodeId ts = attachment_switch(topo, t);
  FlowNetwork net(2 * static_cast<std::size_t>(topo.node_count()));
  for (NodeId v = 0; v < topo.node_count(); ++v) {
    int cap = 1;
    if (v == s || v == t || v == ss || v == ts) {
      cap = kInf;
    } else if (!topo.is_server(v) && !switches_capacitated) {
      cap = kInf;
    }
    net.add_edge(static_cast<int>(2 * v), static_cast<int>(2 * v + 1), cap);
  }
  for (const Link& l : topo.links()) {
    // A direct s-t link is a single path, not an unbounded pipe.
    const bool direct = (l.a == s && l.b == t) || (l.a == t && l.b == s);
    const int cap = direct ? 1 : kInf;
    net.add_edge(static_cast<int>(2 * l.a + 1), static_cast<int>(2 * l.b), cap);
    net.add_edge(static_cast<int>(2 * l.b + 1), static_cast<int>(2 * l.a), cap);
  }
  return net.max_flow(static_cast<int>(2 * s + 1), static_cast<int>(2 * t));
}

}  // namespace

int parallel_paths(const Topology& topo, NodeId s, NodeId t) {
  check_pair(topo, s, t);
  if (partners(topo, s, t)) {
    throw DomainError("servers " + std::to_string(s) + " and " + std::to_string(t) + " are partners");
  }
  return count_paths(topo, s, t, /*switches_capacitated=*/true);
}

int server_parallel_paths(const Topology& topo, NodeId s, NodeId t) {
  check_pair(topo, s, t);
  return count_paths(topo, s, t, /*switches_capacitated=*/false);
}

}  // namespace stellar
