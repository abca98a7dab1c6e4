#include <doctest.h>

#include "stellar/errors.hpp"
#include "stellar/graph.hpp"

using namespace stellar;

namespace {

// Two servers on one switch, plus a partner link: the smallest mixed case.
Topology tiny() {
  TopologyBuilder b(3, 1, {});
  b.add_link(0, b.switch_node(0));
  b.add_link(1, b.switch_node(0));
  b.add_link(1, 2);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("builder numbers servers before switches") {
  const Topology t = tiny();
  CHECK(t.server_count() == 3);
  CHECK(t.switch_count() == 1);
  CHECK(t.node_count() == 4);
  CHECK(t.is_server(2));
  CHECK_FALSE(t.is_server(3));
  CHECK(t.kind(3) == NodeKind::Switch);
  CHECK(t.degree(3) == 2);
  CHECK(t.link_count() == 3);
  CHECK(t.channel_count() == 6);
}

TEST_CASE("links are stored with a < b") {
  TopologyBuilder b(2, 1, {});
  b.add_link(b.switch_node(0), 1);
  b.add_link(0, 1);
  const Topology t = std::move(b).build();
  for (const Link& l : t.links()) CHECK(l.a < l.b);
}

TEST_CASE("channel ids encode direction") {
  const Topology t = tiny();
  const LinkId l = *t.link_between(1, 2);
  CHECK(t.channel(1, 2) == 2 * l);
  CHECK(t.channel(2, 1) == 2 * l + 1);
  CHECK(Topology::channel_link(t.channel(2, 1)) == l);
  CHECK(t.channel_endpoints(t.channel(2, 1)) == std::pair<NodeId, NodeId>{2, 1});
  CHECK(t.channel_endpoints(t.channel(3, 0)) == std::pair<NodeId, NodeId>{3, 0});
  CHECK_THROWS_AS(t.channel(0, 2), ArgumentError);
}

TEST_CASE("link_between is symmetric and absent for non-neighbours") {
  const Topology t = tiny();
  CHECK(t.link_between(0, 3) == t.link_between(3, 0));
  CHECK_FALSE(t.link_between(0, 2).has_value());
  CHECK_FALSE(t.link_between(0, 99).has_value());
}

TEST_CASE("builder rejects broken server-centric structure") {
  SUBCASE("switch to switch") {
    TopologyBuilder b(1, 2, {});
    b.add_link(0, b.switch_node(0));
    b.add_link(b.switch_node(0), b.switch_node(1));
    CHECK_THROWS_AS(std::move(b).build(), DomainError);
  }
  SUBCASE("self loop") {
    TopologyBuilder b(1, 0, {});
    b.add_link(0, 0);
    CHECK_THROWS_AS(std::move(b).build(), DomainError);
  }
  SUBCASE("duplicate link") {
    TopologyBuilder b(2, 0, {});
    b.add_link(0, 1);
    b.add_link(1, 0);
    CHECK_THROWS_AS(std::move(b).build(), DomainError);
  }
  SUBCASE("server of degree three") {
    TopologyBuilder b(4, 0, {});
    b.add_link(0, 1);
    b.add_link(0, 2);
    b.add_link(0, 3);
    CHECK_THROWS_AS(std::move(b).build(), DomainError);
  }
  SUBCASE("isolated server") {
    TopologyBuilder b(2, 1, {});
    b.add_link(0, b.switch_node(0));
    CHECK_THROWS_AS(std::move(b).build(), DomainError);
  }
  SUBCASE("endpoint out of range") {
    TopologyBuilder b(1, 1, {});
    b.add_link(0, 7);
    CHECK_THROWS_AS(std::move(b).build(), DomainError);
  }
}

TEST_CASE("hop length counts servers, not switches") {
  const Topology t = tiny();
  const std::vector<NodeId> via_switch{0, 3, 1};
  const std::vector<NodeId> longer{0, 3, 1, 2};
  const std::vector<NodeId> single{0};
  CHECK(t.hop_length(via_switch) == 1);
  CHECK(t.hop_length(longer) == 2);
  CHECK(t.hop_length(single) == 0);
  CHECK(Path::from_nodes(t, longer).hop_length == 2);
}

TEST_CASE("labels round trip") {
  TopologyBuilder b(2, 1, {});
  b.add_link(0, b.switch_node(0));
  b.add_link(1, b.switch_node(0));
  b.set_label(0, {4, 5});
  b.set_label(b.switch_node(0), {9});
  const Topology t = std::move(b).build();
  CHECK(t.has_labels());
  CHECK(std::vector<int>(t.label(0).begin(), t.label(0).end()) == std::vector<int>{4, 5});
  CHECK(t.label(1).empty());
  CHECK(t.label(2)[0] == 9);
}

TEST_CASE("require_server distinguishes unknown ids and switches") {
  const Topology t = tiny();
  CHECK_NOTHROW(t.require_server(2));
  CHECK_THROWS_AS(t.require_server(3), ArgumentError);
  CHECK_THROWS_AS(t.require_node(4), ArgumentError);
}

TEST_CASE("family display names") {
  CHECK(FamilyInfo{Family::GQStar, 3, 10}.display_name() == "GQ*_{3,10}");
  CHECK(FamilyInfo{Family::FiConn, 2, 24}.display_name() == "FiConn_{2,24}");
  CHECK(to_string(Family::DPillar) == "dpillar");
}
