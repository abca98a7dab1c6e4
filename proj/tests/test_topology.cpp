#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "stellar/errors.hpp"
#include "stellar/topology_gen.hpp"

using namespace stellar;

TEST_CASE("GQ_{k,n} has n^k nodes, k(n-1)n^k/2 edges and degree k(n-1)") {
  for (auto [k, n] : {std::pair{1, 2}, {2, 3}, {3, 4}, {2, 5}}) {
    const BaseGraph g = build_gq({k, n});
    std::uint32_t nodes = 1;
    for (int i = 0; i < k; ++i) nodes *= n;
    CHECK(g.node_count == nodes);
    CHECK(g.edges.size() == std::size_t(k) * (n - 1) * nodes / 2);
    for (std::uint32_t v = 0; v < g.node_count; ++v) CHECK(g.degree(v) == std::uint32_t(k * (n - 1)));
    CHECK(g.connected());
  }
}

TEST_CASE("GQ labels differ in exactly the tagged dimension") {
  const BaseGraph g = build_gq({3, 4});
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& a = g.labels[g.edges[e].first];
    const auto& b = g.labels[g.edges[e].second];
    int diff = 0;
    for (int i = 0; i < 3; ++i) diff += a[i] != b[i];
    CHECK(diff == 1);
    CHECK(a[g.edge_tags[e]] != b[g.edge_tags[e]]);
  }
}

TEST_CASE("GQ rejects bad parameters and over-budget sizes") {
  CHECK_THROWS_AS(build_gq({0, 3}), ArgumentError);
  CHECK_THROWS_AS(build_gq({2, 1}), ArgumentError);
  CHECK_THROWS_AS(build_gq({6, 100}), CapacityError);
  CHECK_THROWS_AS(build_gq_star({3, 10}, 1000), CapacityError);
}

TEST_CASE("stellar transform of K2 gives two servers and three links") {
  BaseGraph k2;
  k2.node_count = 2;
  k2.edges = {{0, 1}};
  const StellarNetwork net = stellar_transform(k2);
  const Topology& t = net.topology;
  CHECK(t.server_count() == 2);
  CHECK(t.switch_count() == 2);
  CHECK(t.link_count() == 3);
  CHECK(net.map.server_switch[0] == 2);
  CHECK(net.map.server_switch[1] == 3);
  CHECK(net.map.partner[0] == 1);
}

TEST_CASE("stellar transform rejects trivial and disconnected bases") {
  BaseGraph empty;
  empty.node_count = 1;
  CHECK_THROWS_AS(stellar_transform(empty), DomainError);
  BaseGraph split;
  split.node_count = 4;
  split.edges = {{0, 1}, {2, 3}};
  CHECK_THROWS_AS(stellar_transform(split), DomainError);
}

TEST_CASE("stellar counts and inverse round trip on random bases") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const BaseGraph g = oracle::random_connected_graph(2 + rng() % 10, rng);
    const StellarNetwork net = stellar_transform(g);
    const Topology& t = net.topology;
    CHECK(t.server_count() == 2 * g.edges.size());
    CHECK(t.switch_count() == g.node_count);
    CHECK(t.link_count() == 3 * g.edges.size());
    for (std::uint32_t x = 0; x < g.node_count; ++x) CHECK(t.degree(net.map.switch_of_base(x)) == g.degree(x));
    for (NodeId s = 0; s < t.server_count(); ++s) CHECK(t.degree(s) == 2);
    const BaseGraph back = inverse_stellar(t);
    CHECK(back.node_count == g.node_count);
    auto a = g.edges;
    auto b = back.edges;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    const StellarMap m = stellar_map(t);
    CHECK(m.partner == net.map.partner);
    CHECK(m.server_switch == net.map.server_switch);
    CHECK(m.edge_servers == net.map.edge_servers);
  }
}

TEST_CASE("stellar_map rejects non-stellar topologies") {
  CHECK_THROWS_AS(stellar_map(build_ficonn({1, 4})), DomainError);
}

TEST_CASE("edge list parsing") {
  const BaseGraph g = load_base_graph("# ring\n0 1\n1 2\n\n2 0  # closing edge\n");
  CHECK(g.node_count == 3);
  CHECK(g.edges.size() == 3);

  auto line_of = [](const char* text) {
    try {
      load_base_graph(text);
    } catch (const InputError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("0 1\n1 x\n") == 2);
  CHECK(line_of("0 1\n1 0\n") == 2);
  CHECK(line_of("0 1\n2 2\n") == 2);
  CHECK(line_of("0 1 2\n") == 1);
  CHECK(line_of("-1 2\n") == 1);
  CHECK_THROWS_AS(load_base_graph("# nothing\n"), DomainError);
}

TEST_CASE("FiConn sizes follow N_l = N_{l-1}(N_{l-1}/2^l + 1)") {
  for (int n : {4, 6, 8, 24}) {
    for (int k = 0; k <= 2; ++k) {
      const FiConnLayout L = ficonn_layout({k, n});
      std::uint64_t size = n;
      for (int l = 1; l <= k; ++l) size = size * (size / (std::uint64_t{1} << l) + 1);
      CHECK(L.size.back() == size);
      CHECK(L.degree_one_count() == size / (std::uint64_t{1} << k));
    }
  }
  CHECK(ficonn_layout({2, 24}).size.back() == 24648);
  CHECK(ficonn_layout({3, 8}).size.back() == 24640);
}

TEST_CASE("FiConn_{2,24} structure") {
  const Topology t = build_ficonn({2, 24});
  CHECK(t.server_count() == 24648);
  CHECK(t.switch_count() == 1027);
  CHECK(t.channel_count() == 67782);
  std::uint64_t degree_one = 0;
  std::vector<int> per_level(3, 0);
  for (const Link& l : t.links()) {
    if (t.is_server(l.b)) ++per_level[l.tag];
  }
  for (NodeId s = 0; s < t.server_count(); ++s) degree_one += t.degree(s) == 1;
  CHECK(degree_one == 24648 / 4);
  CHECK(per_level[1] == 79 * 78);
  CHECK(per_level[2] == 79 * 78 / 2);
  for (NodeId w = t.server_count(); w < t.node_count(); ++w) CHECK(t.degree(w) == 24);
}

TEST_CASE("FiConn level links join distinct copies exactly once") {
  const FiConnLayout L = ficonn_layout({2, 6});
  const Topology t = build_ficonn({2, 6});
  for (int level = 1; level <= 2; ++level) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> joined;
    for (const Link& l : t.links()) {
      if (!t.is_server(l.b) || l.tag != level) continue;
      CHECK(l.a / L.size[level] == l.b / L.size[level]);
      const auto ca = l.a / L.size[level - 1];
      const auto cb = l.b / L.size[level - 1];
      CHECK(ca != cb);
      CHECK(joined.insert(std::minmax(ca, cb)).second);
    }
    const std::uint64_t blocks = t.server_count() / L.size[level];
    const std::uint64_t g = L.copies(level);
    CHECK(joined.size() == blocks * g * (g - 1) / 2);
  }
}

TEST_CASE("FiConn rejects odd radix") {
  CHECK_THROWS_AS(build_ficonn({1, 5}), ArgumentError);
}

TEST_CASE("DPillar counts") {
  for (auto [k, n] : {std::pair{2, 2}, {2, 4}, {3, 6}, {4, 18}}) {
    const Topology t = build_dpillar({k, n});
    std::uint32_t per_column = 1;
    for (int i = 0; i < k; ++i) per_column *= n / 2;
    CHECK(t.server_count() == k * per_column);
    CHECK(t.switch_count() == k * per_column / (n / 2));
    CHECK(t.link_count() == 2 * t.server_count());
    for (NodeId w = t.server_count(); w < t.node_count(); ++w) CHECK(t.degree(w) == std::uint32_t(n));
    for (NodeId s = 0; s < t.server_count(); ++s) CHECK(t.degree(s) == 2);
  }
  const Topology big = build_dpillar({4, 18});
  CHECK(big.server_count() == 26244);
  CHECK(big.switch_count() == 2916);
  CHECK(big.channel_count() == 104976);
}

TEST_CASE("DPillar switches join adjacent columns with matching names") {
  const Topology t = build_dpillar({3, 6});
  for (NodeId w = t.server_count(); w < t.node_count(); ++w) {
    const auto wl = t.label(w);
    const int c = wl[0];
    for (const auto& a : t.neighbors(w)) {
      const auto sl = t.label(a.node);
      const int col = sl[0];
      CHECK((col == c || col == (c + 1) % 3));
      // Server name with coordinate c dropped equals the switch's group name.
      std::vector<int> dropped;
      for (int i = 0; i < 3; ++i)
        if (i != c) dropped.push_back(sl[1 + i]);
      CHECK(dropped == std::vector<int>(wl.begin() + 1, wl.end()));
    }
  }
}

TEST_CASE("build_from_spec") {
  CHECK(build_from_spec("gqstar:2:3").server_count() == 36);
  CHECK(build_from_spec("ficonn:1:4").server_count() == 12);
  CHECK(build_from_spec("dpillar:2:4").server_count() == 8);
  CHECK_THROWS_AS(build_from_spec("torus:2:3"), ArgumentError);
  CHECK_THROWS_AS(build_from_spec("gqstar:2"), ArgumentError);
  CHECK_THROWS_AS(build_from_spec("stellar:/nonexistent/file"), ArgumentError);
}

TEST_CASE("48-port presets use every switch port") {
  for (const GQParams p : kGQStar48PortPresets) CHECK(p.k * (p.n - 1) == 48);
}

TEST_CASE("CSV exports") {
  const Topology t = build_gq_star({1, 2}).topology;
  std::ostringstream nodes;
  std::ostringstream links;
  write_nodes_csv(t, nodes);
  write_links_csv(t, links);
  CHECK(nodes.str() == "node_id,kind,label_tuple\n0,server,0 1\n1,server,1 0\n2,switch,0\n3,switch,1\n");
  CHECK(links.str() == "link_src,link_dst,level_or_dimension\n0,1,0\n0,2,0\n1,3,0\n");
}
