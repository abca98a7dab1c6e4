#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stellar/graph.hpp"

namespace stellar {

// Bidirectionally failed links: a failed link carries nothing in either
// direction.
class FaultSet {
 public:
  FaultSet() = default;
  // An empty fault set sized for `topo`.
  explicit FaultSet(const Topology& topo);
  FaultSet(const Topology& topo, std::vector<LinkId> failed, double fraction, std::uint64_t seed);

  bool failed(LinkId link) const { return !mask_.empty() && mask_[link] != 0; }
  bool channel_failed(ChannelId c) const { return failed(Topology::channel_link(c)); }
  bool empty() const { return failed_.empty(); }
  std::size_t size() const { return failed_.size(); }

  // Sorted ascending.
  const std::vector<LinkId>& failed_links() const { return failed_; }
  double fraction() const { return fraction_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<std::uint8_t> mask_;
  std::vector<LinkId> failed_;
  double fraction_ = 0.0;
  std::uint64_t seed_ = 0;
};

inline constexpr double kDefaultMaxFaultFraction = 0.15;

// Uniform sample without replacement of round_half_up(p * links) links.
// p above `max_fraction` is rejected unless the caller raises the cap.
FaultSet inject_uniform(const Topology& topo, double p, std::uint64_t seed,
                        double max_fraction = kDefaultMaxFaultFraction);

// Number of links inject_uniform fails for a given fraction.
std::uint32_t fault_count(std::uint32_t links, double p);

// One unordered link per line, "u v". Blank lines and '#' comments ignored.
FaultSet read_fault_file(const Topology& topo, std::istream& in);
void write_fault_file(const Topology& topo, const FaultSet& faults, std::ostream& out);

// Either a path to a fault file or "fraction:seed".
FaultSet parse_fault_spec(const Topology& topo, const std::string& spec,
                          double max_fraction = kDefaultMaxFaultFraction);

}  // namespace stellar
