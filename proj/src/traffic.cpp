#include "stellar/traffic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "stellar/errors.hpp"
#include "stellar/routing.hpp"

namespace stellar {
namespace {

// Uniform value in [0, bound) from a 64-bit hash.
std::uint32_t scale(std::uint64_t x, std::uint32_t bound) {
  return static_cast<std::uint32_t>((static_cast<unsigned __int128>(x) * bound) >> 64);
}

std::uint64_t parse_uint(const std::string& field, const std::string& text) {
  if (field.empty() || !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ArgumentError("bad number '" + field + "' in pattern '" + text + "'");
  }
  return std::stoull(field);
}

}  // namespace

PatternSpec parse_pattern(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw ArgumentError("empty traffic pattern");
  const std::string& kind = parts[0];
  if ((kind == "all2all" || kind == "butterfly") && parts.size() == 1) {
    if (kind == "all2all") return AllToAll{};
    return Butterfly{};
  }
  if (kind == "many" && parts.size() >= 2 && parts.size() <= 3) {
    ManyAllToAll m;
    m.group_size = static_cast<std::uint32_t>(parse_uint(parts[1], text));
    if (parts.size() == 3) m.seed = parse_uint(parts[2], text);
    return m;
  }
  if (kind == "random" && parts.size() >= 2 && parts.size() <= 3) {
    RandomPairs r;
    r.flow_count = parse_uint(parts[1], text);
    if (parts.size() == 3) r.seed = parse_uint(parts[2], text);
    return r;
  }
  throw ArgumentError("unknown traffic pattern '" + text +
                      "' (expected all2all, many:SIZE:SEED, butterfly or random:COUNT:SEED)");
}

std::string to_string(const PatternSpec& spec) {
  if (std::holds_alternative<AllToAll>(spec)) return "all2all";
  if (std::holds_alternative<Butterfly>(spec)) return "butterfly";
  if (const auto* m = std::get_if<ManyAllToAll>(&spec)) {
    return "many:" + std::to_string(m->group_size) + ":" + std::to_string(m->seed);
  }
  const auto& r = std::get<RandomPairs>(spec);
  return "random:" + std::to_string(r.flow_count) + ":" + std::to_string(r.seed);
}

TrafficPattern::TrafficPattern(const PatternSpec& spec, std::uint32_t servers) : spec_(spec), servers_(servers) {
  const std::uint64_t n = servers;
  if (std::holds_alternative<AllToAll>(spec)) {
    count_ = n == 0 ? 0 : n * (n - 1);
  } else if (const auto* m = std::get_if<ManyAllToAll>(&spec)) {
    if (m->group_size < 2) throw ArgumentError("group size must be at least 2");
    if (m->group_size > n) {
      throw ArgumentError("group size " + std::to_string(m->group_size) + " exceeds " + std::to_string(n) +
                          " servers");
    }
    permutation_.resize(n);
    std::iota(permutation_.begin(), permutation_.end(), NodeId{0});
    std::mt19937_64 rng(m->seed);
    std::shuffle(permutation_.begin(), permutation_.end(), rng);
    const std::uint64_t g = m->group_size;
    count_ = (n / g) * g * (g - 1);
  } else if (std::holds_alternative<Butterfly>(spec)) {
    while ((std::uint64_t{1} << butterfly_levels_) < n) ++butterfly_levels_;
    butterfly_offsets_.assign(n + 1, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t partners = 0;
      for (int j = 0; j < butterfly_levels_; ++j) partners += (i ^ (std::uint64_t{1} << j)) < n;
      butterfly_offsets_[i + 1] = butterfly_offsets_[i] + partners;
    }
    count_ = butterfly_offsets_[n];
  } else {
    const auto& r = std::get<RandomPairs>(spec);
    if (n < 2 && r.flow_count > 0) throw ArgumentError("random traffic needs at least two servers");
    count_ = r.flow_count;
  }
}

Flow TrafficPattern::flow(std::uint64_t index) const {
  if (index >= count_) throw ArgumentError("flow index out of range");
  const std::uint64_t n = servers_;
  if (std::holds_alternative<AllToAll>(spec_)) {
    const auto src = static_cast<NodeId>(index / (n - 1));
    const auto r = static_cast<NodeId>(index % (n - 1));
    return {src, r < src ? r : r + 1, index};
  }
  if (const auto* m = std::get_if<ManyAllToAll>(&spec_)) {
    const std::uint64_t g = m->group_size;
    const std::uint64_t per_group = g * (g - 1);
    const std::uint64_t base = index / per_group * g;
    const std::uint64_t j = index % per_group;
    const std::uint64_t a = j / (g - 1);
    const std::uint64_t r = j % (g - 1);
    return {permutation_[base + a], permutation_[base + (r < a ? r : r + 1)], index};
  }
  if (std::holds_alternative<Butterfly>(spec_)) {
    const auto it = std::upper_bound(butterfly_offsets_.begin(), butterfly_offsets_.end(), index);
    const auto src = static_cast<std::uint64_t>(it - butterfly_offsets_.begin() - 1);
    std::uint64_t skip = index - butterfly_offsets_[src];
    for (int j = 0; j < butterfly_levels_; ++j) {
      const std::uint64_t dst = src ^ (std::uint64_t{1} << j);
      if (dst >= n) continue;
      if (skip-- == 0) return {static_cast<NodeId>(src), static_cast<NodeId>(dst), index};
    }
    throw std::logic_error("butterfly offsets are inconsistent");
  }
  const auto& r = std::get<RandomPairs>(spec_);
  const std::uint64_t h = mix_seed(r.seed, index);
  const NodeId src = scale(h, servers_);
  NodeId dst = src;
  for (std::uint64_t attempt = 0; dst == src; ++attempt) dst = scale(mix_seed(h, attempt), servers_);
  return {src, dst, index};
}

std::vector<Flow> TrafficPattern::materialize() const {
  std::vector<Flow> flows;
  flows.reserve(count_);
  for (std::uint64_t i = 0; i < count_; ++i) flows.push_back(flow(i));
  return flows;
}

std::vector<Flow> generate(const PatternSpec& spec, const Topology& topo) {
  return TrafficPattern(spec, topo.server_count()).materialize();
}

}  // namespace stellar
