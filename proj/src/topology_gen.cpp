#include "stellar/topology_gen.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "stellar/errors.hpp"

namespace stellar {
namespace {

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / base) throw CapacityError(std::string(what) + " exceeds the node budget");
    r *= base;
  }
  return r;
}

void require_capacity(std::uint64_t nodes, std::uint64_t cap, const std::string& what) {
  if (nodes > cap || nodes > std::uint64_t{0xFFFFFFF0}) {
    throw CapacityError(what + " needs " + std::to_string(nodes) + " nodes, budget is " +
                        std::to_string(cap));
  }
}

}  // namespace

BaseGraph build_gq(GQParams params, std::uint64_t max_nodes) {
  const int k = params.k;
  const int n = params.n;
  if (k < 1 || n < 2) throw ArgumentError("GQ_{k,n} needs k >= 1 and n >= 2");
  const std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n), k, max_nodes, "GQ");
  std::vector<std::uint64_t> stride(k);
  for (int i = 0; i < k; ++i) stride[i] = i == 0 ? 1 : stride[i - 1] * static_cast<std::uint64_t>(n);

  BaseGraph g;
  g.node_count = static_cast<std::uint32_t>(count);
  g.family = {Family::GQStar, k, n};
  g.labels.resize(count);
  const std::uint64_t edges = count * static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n - 1) / 2;
  g.edges.reserve(edges);
  g.edge_tags.reserve(edges);
  for (std::uint64_t x = 0; x < count; ++x) {
    auto& label = g.labels[x];
    label.resize(k);
    for (int i = 0; i < k; ++i) label[i] = static_cast<int>((x / stride[i]) % n);
    for (int i = 0; i < k; ++i) {
      for (int w = label[i] + 1; w < n; ++w) {
        const std::uint64_t y = x + static_cast<std::uint64_t>(w - label[i]) * stride[i];
        g.edges.emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
        g.edge_tags.push_back(i);
      }
    }
  }
  return g;
}

StellarNetwork stellar_transform(const BaseGraph& base, std::uint64_t max_nodes) {
  if (base.edges.empty()) throw DomainError("stellar transform needs a base graph with at least one edge");
  {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto [u, v] : base.edges) {
      if (u == v) throw DomainError("base graph has a self-loop at " + std::to_string(u));
      if (u >= base.node_count || v >= base.node_count) throw DomainError("base edge endpoint out of range");
      if (!seen.insert(std::minmax(u, v)).second) {
        throw DomainError("base graph has a duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
      }
    }
  }
  if (!base.connected()) throw DomainError("stellar transform needs a connected base graph");

  const std::uint64_t servers = 2 * static_cast<std::uint64_t>(base.edges.size());
  require_capacity(servers + base.node_count, max_nodes, "stellar network");

  FamilyInfo family = base.family;
  if (family.family != Family::GQStar) family = {Family::GenericStellar, 0, 0};
  const auto n_servers = static_cast<std::uint32_t>(servers);
  TopologyBuilder builder(n_servers, base.node_count, family);

  StellarNetwork net;
  StellarMap& map = net.map;
  map.server_count = n_servers;
  map.edge_servers.resize(base.edges.size());
  map.server_switch.resize(n_servers);
  map.partner.resize(n_servers);

  for (std::uint32_t e = 0; e < base.edges.size(); ++e) {
    const auto [u, v] = std::minmax(base.edges[e].first, base.edges[e].second);
    const NodeId a = 2 * e;
    const NodeId b = 2 * e + 1;
    const int tag = base.edge_tags.empty() ? -1 : base.edge_tags[e];
    builder.add_link(a, b, tag);
    builder.add_link(a, builder.switch_node(u), tag);
    builder.add_link(b, builder.switch_node(v), tag);
    map.edge_servers[e] = {a, b};
    map.server_switch[a] = builder.switch_node(u);
    map.server_switch[b] = builder.switch_node(v);
    map.partner[a] = b;
    map.partner[b] = a;
    if (!base.labels.empty()) {
      builder.set_label(a, {static_cast<int>(u), static_cast<int>(v)});
      builder.set_label(b, {static_cast<int>(v), static_cast<int>(u)});
    }
  }
  if (!base.labels.empty()) {
    for (std::uint32_t x = 0; x < base.node_count; ++x) builder.set_label(builder.switch_node(x), base.labels[x]);
  }
  net.topology = std::move(builder).build();
  return net;
}

StellarMap stellar_map(const Topology& topo) {
  StellarMap map;
  const std::uint32_t n = topo.server_count();
  map.server_count = n;
  map.server_switch.assign(n, kNoNode);
  map.partner.assign(n, kNoNode);
  for (NodeId s = 0; s < n; ++s) {
    for (const auto& a : topo.neighbors(s)) {
      auto& slot = topo.is_server(a.node) ? map.partner[s] : map.server_switch[s];
      if (slot != kNoNode) throw DomainError("server " + std::to_string(s) + " is not in stellar form");
      slot = a.node;
    }
    if (map.partner[s] == kNoNode || map.server_switch[s] == kNoNode) {
      throw DomainError("server " + std::to_string(s) + " is not in stellar form");
    }
  }
  for (NodeId s = 0; s < n; ++s) {
    const NodeId p = map.partner[s];
    if (s > p) continue;
    if (map.server_switch[s] < map.server_switch[p]) {
      map.edge_servers.emplace_back(s, p);
    } else {
      map.edge_servers.emplace_back(p, s);
    }
  }
  return map;
}

BaseGraph inverse_stellar(const Topology& topo) {
  const StellarMap map = stellar_map(topo);
  BaseGraph g;
  g.node_count = topo.switch_count();
  g.family = topo.family();
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto [a, b] : map.edge_servers) {
    const auto u = map.base_of_switch(map.server_switch[a]);
    const auto v = map.base_of_switch(map.server_switch[b]);
    if (u == v) throw DomainError("server pair on a single switch has no base edge");
    if (!seen.insert(std::minmax(u, v)).second) throw DomainError("two server pairs span the same switches");
    g.edges.push_back(std::minmax(u, v));
    const auto link = topo.link_between(a, b);
    g.edge_tags.push_back(topo.link(*link).tag);
  }
  if (topo.has_labels()) {
    g.labels.resize(g.node_count);
    for (std::uint32_t x = 0; x < g.node_count; ++x) {
      const auto l = topo.label(map.switch_of_base(x));
      g.labels[x].assign(l.begin(), l.end());
    }
  }
  return g;
}

StellarNetwork build_gq_star(GQParams params, std::uint64_t max_nodes) {
  return stellar_transform(build_gq(params, max_nodes), max_nodes);
}

BaseGraph load_base_graph(std::istream& in) {
  BaseGraph g;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::string line;
  std::size_t lineno = 0;
  std::uint32_t max_id = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    std::string second;
    std::string extra;
    if (!(ls >> second) || (ls >> extra)) throw InputError("expected \"u v\"", lineno);
    std::uint32_t ids[2];
    const std::string* tokens[2] = {&first, &second};
    for (int i = 0; i < 2; ++i) {
      const std::string& tok = *tokens[i];
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
          tok.size() > 9) {
        throw InputError("'" + tok + "' is not a nonnegative integer node id", lineno);
      }
      ids[i] = static_cast<std::uint32_t>(std::stoul(tok));
    }
    if (ids[0] == ids[1]) throw InputError("self-loop at node " + first, lineno);
    const auto key = std::minmax(ids[0], ids[1]);
    if (!seen.insert(key).second) throw InputError("duplicate edge " + first + " " + second, lineno);
    g.edges.push_back(key);
    max_id = std::max({max_id, ids[0], ids[1]});
  }
  if (g.edges.empty()) throw DomainError("edge list is empty");
  g.node_count = max_id + 1;
  return g;
}

BaseGraph load_base_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_base_graph(in);
}

FiConnLayout ficonn_layout(FiConnParams params, std::uint64_t max_nodes) {
  if (params.k < 0 || params.n < 2 || params.n % 2 != 0) {
    throw ArgumentError("FiConn_{k,n} needs k >= 0 and even n >= 2");
  }
  FiConnLayout layout;
  layout.k = params.k;
  layout.n = params.n;
  layout.size.push_back(static_cast<std::uint64_t>(params.n));
  layout.available.emplace_back(params.n);
  for (int i = 0; i < params.n; ++i) layout.available[0][i] = static_cast<std::uint32_t>(i);
  for (int l = 1; l <= params.k; ++l) {
    const auto& prev = layout.available[l - 1];
    const std::uint64_t copies = prev.size() / 2 + 1;
    const std::uint64_t size = layout.size[l - 1] * copies;
    require_capacity(size + size / static_cast<std::uint64_t>(params.n), max_nodes, "FiConn");
    layout.size.push_back(size);
    std::vector<std::uint32_t> next;
    next.reserve(copies * prev.size() / 2);
    for (std::uint64_t c = 0; c < copies; ++c) {
      for (std::size_t o = 1; o < prev.size(); o += 2) {
        next.push_back(static_cast<std::uint32_t>(c * layout.size[l - 1] + prev[o]));
      }
    }
    layout.available.push_back(std::move(next));
  }
  return layout;
}

Topology build_ficonn(FiConnParams params, std::uint64_t max_nodes) {
  const FiConnLayout layout = ficonn_layout(params, max_nodes);
  const auto servers = static_cast<std::uint32_t>(layout.size[params.k]);
  const auto switches = servers / static_cast<std::uint32_t>(params.n);
  TopologyBuilder builder(servers, switches, {Family::FiConn, params.k, params.n});

  for (NodeId s = 0; s < servers; ++s) {
    builder.add_link(s, builder.switch_node(s / static_cast<std::uint32_t>(params.n)), 0);
  }
  for (int l = 1; l <= params.k; ++l) {
    const std::uint64_t block = layout.size[l];
    const std::uint64_t copies = layout.copies(l);
    for (std::uint64_t base = 0; base < servers; base += block) {
      for (std::uint64_t i = 0; i < copies; ++i) {
        for (std::uint64_t j = i + 1; j < copies; ++j) {
          builder.add_link(static_cast<NodeId>(base + layout.link_endpoint(l, i, j)),
                           static_cast<NodeId>(base + layout.link_endpoint(l, j, i)), l);
        }
      }
    }
  }
  for (NodeId s = 0; s < servers; ++s) {
    std::vector<int> label;
    for (int l = params.k; l >= 1; --l) {
      label.push_back(static_cast<int>((s % layout.size[l]) / layout.size[l - 1]));
    }
    label.push_back(static_cast<int>(s % static_cast<std::uint32_t>(params.n)));
    builder.set_label(s, std::move(label));
  }
  for (std::uint32_t w = 0; w < switches; ++w) builder.set_label(builder.switch_node(w), {static_cast<int>(w)});
  return std::move(builder).build();
}

Topology build_dpillar(DPillarParams params, std::uint64_t max_nodes) {
  const int k = params.k;
  const int n = params.n;
  if (k < 2 || n < 2 || n % 2 != 0) throw ArgumentError("DPillar_{k,n} needs k >= 2 and even n >= 2");
  const std::uint64_t h = static_cast<std::uint64_t>(n / 2);
  const std::uint64_t per_column = checked_pow(h, k, max_nodes, "DPillar");
  const std::uint64_t groups = per_column / h;
  require_capacity(per_column * k + groups * k, max_nodes, "DPillar");

  const auto servers = static_cast<std::uint32_t>(per_column * k);
  const auto switches = static_cast<std::uint32_t>(groups * k);
  TopologyBuilder builder(servers, switches, {Family::DPillar, k, n});

  std::vector<std::uint64_t> stride(k);
  for (int i = 0; i < k; ++i) stride[i] = i == 0 ? 1 : stride[i - 1] * h;
  auto digit = [&](std::uint64_t name, int i) { return (name / stride[i]) % h; };
  // Group index: the name with coordinate c dropped.
  auto group = [&](std::uint64_t name, int c) {
    const std::uint64_t low = name % stride[c];
    const std::uint64_t high = name / stride[c] / h;
    return low + high * stride[c];
  };

  for (int c = 0; c < k; ++c) {
    const int prev = (c + k - 1) % k;
    for (std::uint64_t name = 0; name < per_column; ++name) {
      const auto s = static_cast<NodeId>(c * per_column + name);
      builder.add_link(s, builder.switch_node(static_cast<std::uint32_t>(c * groups + group(name, c))), c);
      builder.add_link(s, builder.switch_node(static_cast<std::uint32_t>(prev * groups + group(name, prev))), prev);
      std::vector<int> label{c};
      for (int i = 0; i < k; ++i) label.push_back(static_cast<int>(digit(name, i)));
      builder.set_label(s, std::move(label));
    }
    for (std::uint64_t g = 0; g < groups; ++g) {
      std::vector<int> label{c};
      for (int i = 0; i + 1 < k; ++i) label.push_back(static_cast<int>((g / stride[i]) % h));
      builder.set_label(builder.switch_node(static_cast<std::uint32_t>(c * groups + g)), std::move(label));
    }
  }
  return std::move(builder).build();
}

Topology build_from_spec(const std::string& spec, std::uint64_t max_nodes) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  if (family == "stellar") {
    if (colon == std::string::npos) throw ArgumentError("expected stellar:<edge-list path>");
    const std::string path = spec.substr(colon + 1);
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open edge list '" + path + "'");
    return stellar_transform(load_base_graph(in), max_nodes).topology;
  }
  int k = 0;
  int n = 0;
  {
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    std::replace(rest.begin(), rest.end(), ':', ' ');
    std::istringstream is(rest);
    std::string extra;
    if (!(is >> k >> n) || (is >> extra)) {
      throw ArgumentError("topology spec '" + spec + "' should look like family:K:N");
    }
  }
  if (family == "gqstar" || family == "gq") return build_gq_star({k, n}, max_nodes).topology;
  if (family == "ficonn") return build_ficonn({k, n}, max_nodes);
  if (family == "dpillar") return build_dpillar({k, n}, max_nodes);
  throw ArgumentError("unknown topology family '" + family + "'");
}

void write_nodes_csv(const Topology& topo, std::ostream& out) {
  out << "node_id,kind,label_tuple\n";
  for (NodeId v = 0; v < topo.node_count(); ++v) {
    out << v << ',' << (topo.is_server(v) ? "server" : "switch") << ',';
    const auto l = topo.label(v);
    for (std::size_t i = 0; i < l.size(); ++i) out << (i ? " " : "") << l[i];
    out << '\n';
  }
}

void write_links_csv(const Topology& topo, std::ostream& out) {
  out << "link_src,link_dst,level_or_dimension\n";
  for (const Link& l : topo.links()) out << l.a << ',' << l.b << ',' << l.tag << '\n';
}

}  // namespace stellar
