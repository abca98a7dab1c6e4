#include "stellar/faults.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "stellar/errors.hpp"

namespace stellar {

FaultSet::FaultSet(const Topology& topo) : mask_(topo.link_count(), 0) {}

FaultSet::FaultSet(const Topology& topo, std::vector<LinkId> failed, double fraction,
                   std::uint64_t seed)
    : mask_(topo.link_count(), 0), failed_(std::move(failed)), fraction_(fraction), seed_(seed) {
  std::sort(failed_.begin(), failed_.end());
  failed_.erase(std::unique(failed_.begin(), failed_.end()), failed_.end());
  for (LinkId l : failed_) {
    if (l >= topo.link_count()) throw ArgumentError("fault on unknown link " + std::to_string(l));
    mask_[l] = 1;
  }
}

std::uint32_t fault_count(std::uint32_t links, double p) {
  // Half-up rounding of p * links.
  return static_cast<std::uint32_t>(std::floor(p * static_cast<double>(links) + 0.5));
}

FaultSet inject_uniform(const Topology& topo, double p, std::uint64_t seed, double max_fraction) {
  if (!(p >= 0.0) || p > 1.0) throw ArgumentError("fault fraction must lie in [0, 1]");
  if (p > max_fraction) {
    throw ArgumentError("fault fraction " + std::to_string(p) + " exceeds the cap " +
                        std::to_string(max_fraction));
  }
  const std::uint32_t want = fault_count(topo.link_count(), p);
  std::vector<LinkId> all(topo.link_count());
  std::iota(all.begin(), all.end(), LinkId{0});
  std::vector<LinkId> picked;
  picked.reserve(want);
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), want, rng);
  return FaultSet(topo, std::move(picked), p, seed);
}

FaultSet read_fault_file(const Topology& topo, std::istream& in) {
  std::vector<LinkId> failed;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u = 0;
    long long v = 0;
    std::string first;
    if (!(ls >> first)) continue;
    ls.clear();
    ls.seekg(0);
    std::string rest;
    if (!(ls >> u) || !(ls >> v) || (ls >> rest) || u < 0 || v < 0) {
      throw InputError("expected two node ids \"u v\"", lineno);
    }
    const auto link = topo.link_between(static_cast<NodeId>(u), static_cast<NodeId>(v));
    if (!link) throw InputError("no link between " + std::to_string(u) + " and " + std::to_string(v), lineno);
    failed.push_back(*link);
  }
  const double frac = topo.link_count() == 0 ? 0.0 : static_cast<double>(failed.size()) / topo.link_count();
  return FaultSet(topo, std::move(failed), frac, 0);
}

void write_fault_file(const Topology& topo, const FaultSet& faults, std::ostream& out) {
  for (LinkId l : faults.failed_links()) out << topo.link(l).a << ' ' << topo.link(l).b << '\n';
}

FaultSet parse_fault_spec(const Topology& topo, const std::string& spec, double max_fraction) {
  if (spec.empty()) return FaultSet(topo);
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    bool parsed = false;
    double p = 0.0;
    std::uint64_t seed = 0;
    try {
      std::size_t used = 0;
      p = std::stod(spec.substr(0, colon), &used);
      std::size_t used_seed = 0;
      seed = std::stoull(spec.substr(colon + 1), &used_seed);
      parsed = used == colon && used_seed == spec.size() - colon - 1;
    } catch (const std::logic_error&) {
      // Not numeric: treat it as a path.
    }
    if (parsed) return inject_uniform(topo, p, seed, max_fraction);
  }
  std::ifstream in(spec);
  if (!in) throw ArgumentError("cannot open fault file '" + spec + "' (expected a path or fraction:seed)");
  return read_fault_file(topo, in);
}

}  // namespace stellar
