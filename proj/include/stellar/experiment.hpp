#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stellar/faults.hpp"
#include "stellar/graph.hpp"
#include "stellar/metrics.hpp"
#include "stellar/routing.hpp"
#include "stellar/traffic.hpp"

namespace stellar {

struct ExperimentSpec {
  std::string topology;            // build_from_spec syntax
  std::string router;              // make_router name
  std::string pattern = "all2all";  // parse_pattern syntax
  double fault_fraction = 0.0;
  std::vector<std::uint64_t> seeds{1};
  std::string fault_file;          // overrides fault_fraction when set
  double max_fault_fraction = kDefaultMaxFaultFraction;
  unsigned workers = 1;
  bool assert_routes = false;      // per-flow safety checks
  int max_random_intermediates = 4;
  int crossing_budget = 0;
};

struct SummaryRow {
  std::string topology;
  std::string router;
  std::string pattern;
  double fault_fraction = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t servers = 0;
  std::uint64_t flows = 0;
  std::uint64_t routed_flows = 0;
  std::uint64_t failed_flows = 0;
  std::uint64_t bottleneck = 0;
  double abt = 0.0;                // all-to-all only; 0 otherwise
  double mean_hop = 0.0;
  int max_hop = 0;
  double connectivity_pct = 0.0;
  double mean_load_all = 0.0;
  double mean_load_used = 0.0;
  std::uint64_t unused_channels = 0;
};

struct RunResult {
  std::vector<SummaryRow> rows;
  std::vector<LinkLoadTable> tables;  // one per seed, aligned with rows
};

// Throws DomainError when the spec is inconsistent (incompatible router,
// faults with a non-fault-tolerant router, audit mismatch).
void validate(const ExperimentSpec& spec);

// Streams the pattern through the router once per seed. The seed drives both
// fault injection and the router's retry randomness.
RunResult run(const ExperimentSpec& spec);
RunResult run(const ExperimentSpec& spec, const Topology& topo);

// Single run over an already built topology and fault set.
SummaryRow run_once(const Topology& topo, const FaultSet& faults, const Router& router,
                    const TrafficPattern& pattern, unsigned workers, bool assert_routes,
                    LinkLoadTable* table_out = nullptr);

void write_summary_header(std::ostream& out);
void write_summary_row(const SummaryRow& row, std::ostream& out);
// Reads rows written by write_summary_row (header line required).
std::vector<SummaryRow> read_summary_csv(std::istream& in);
void write_loads_csv(const Topology& topo, const LinkLoadTable& table, std::ostream& out);

struct CostRow {
  Family family;
  int k;
  int n;
  double rho;
  double gamma;
  double cost_norm;
};
void write_cost_header(std::ostream& out);
void write_cost_row(const CostRow& row, std::ostream& out);

// Cartesian product of the listed values. Empty lists mean an empty grid.
struct GridSpec {
  std::vector<std::string> topologies;
  std::vector<std::string> routers;
  std::vector<std::string> patterns;
  std::vector<double> fault_fractions;
  std::vector<std::uint64_t> seeds{1};
  unsigned workers = 1;
  bool assert_routes = false;
  std::string out_dir;  // per-cell CSV files; existing cells are reused
};

struct SweepResult {
  std::vector<SummaryRow> rows;
  std::vector<std::string> failed_cells;  // "cell: reason"
  std::size_t reused_cells = 0;
};

SweepResult sweep(const GridSpec& grid);

struct CostGrid {
  std::vector<Family> families{Family::GQStar, Family::FiConn, Family::DPillar};
  std::vector<int> levels{3, 2, 4};     // k per family, aligned with `families`
  std::vector<int> radices{10, 24, 18};  // n per family; labels only, cost does not depend on n
  std::vector<double> rhos;
  std::vector<double> gammas;
};

std::vector<CostRow> cost_sweep(const CostGrid& grid);

// "a,b,c" or "lo:hi:step" (inclusive, step > 0).
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& text);  // "1,2" or "1..5"
std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace stellar
