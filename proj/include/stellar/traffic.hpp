#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "stellar/graph.hpp"

namespace stellar {

struct Flow {
  NodeId src;
  NodeId dst;
  std::uint64_t index;
};

struct AllToAll {};
struct ManyAllToAll {
  std::uint32_t group_size = 1000;
  std::uint64_t seed = 1;
};
struct Butterfly {};
struct RandomPairs {
  std::uint64_t flow_count = 1'000'000;
  std::uint64_t seed = 1;
};

using PatternSpec = std::variant<AllToAll, ManyAllToAll, Butterfly, RandomPairs>;

// all2all | many:SIZE:SEED | butterfly | random:COUNT:SEED
PatternSpec parse_pattern(const std::string& text);
std::string to_string(const PatternSpec& spec);

// Deterministic, index-addressable flow stream: flow(i) does not require
// generating flows 0..i-1, so workers can consume disjoint index ranges.
class TrafficPattern {
 public:
  TrafficPattern(const PatternSpec& spec, std::uint32_t servers);

  std::uint64_t flow_count() const { return count_; }
  Flow flow(std::uint64_t index) const;
  const PatternSpec& spec() const { return spec_; }
  std::uint32_t servers() const { return servers_; }

  std::vector<Flow> materialize() const;

 private:
  PatternSpec spec_;
  std::uint32_t servers_;
  std::uint64_t count_ = 0;
  std::vector<NodeId> permutation_;        // many all-to-all
  std::vector<std::uint64_t> butterfly_offsets_;  // prefix count of partners per server
  int butterfly_levels_ = 0;
};

// Convenience: materialized stream for a built topology.
std::vector<Flow> generate(const PatternSpec& spec, const Topology& topo);

}  // namespace stellar
