#include "stellar/experiment.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "stellar/errors.hpp"
#include "stellar/topology_gen.hpp"

namespace stellar {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct WorkerTotals {
  LinkLoadTable table;
  std::uint64_t hop_sum = 0;
  int max_hop = 0;
};

}  // namespace

void validate(const ExperimentSpec& spec) {
  const auto names = router_names();
  if (std::find(names.begin(), names.end(), spec.router) == names.end()) {
    throw ArgumentError("unknown router '" + spec.router + "'");
  }
  if (!(spec.fault_fraction >= 0.0) || spec.fault_fraction > spec.max_fault_fraction) {
    throw ArgumentError("fault fraction " + fmt(spec.fault_fraction) + " outside [0, " +
                        fmt(spec.max_fault_fraction) + "]");
  }
  const bool faulty = spec.fault_fraction > 0.0 || !spec.fault_file.empty();
  if (faulty && !router_fault_tolerant(spec.router)) {
    throw DomainError("router '" + spec.router + "' does not tolerate faults");
  }
  if (spec.workers == 0) throw ArgumentError("workers must be at least 1");
  if (spec.seeds.empty()) throw ArgumentError("at least one seed is required");
  if (spec.max_random_intermediates < 0) throw ArgumentError("max_random_intermediates must be >= 0");
  if (spec.crossing_budget < 0) throw ArgumentError("crossing_budget must be >= 0");
  parse_pattern(spec.pattern);
}

SummaryRow run_once(const Topology& topo, const FaultSet& faults, const Router& router,
                    const TrafficPattern& pattern, unsigned workers, bool assert_routes,
                    LinkLoadTable* table_out) {
  const std::uint64_t flows = pattern.flow_count();
  std::vector<WorkerTotals> partial(std::max(1u, workers));
  detail::run_partitioned(flows, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    WorkerTotals acc{LinkLoadTable(topo)};
    auto worker = router.make_worker();
    std::vector<NodeId> path;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const Flow f = pattern.flow(i);
      if (worker->route(f.src, f.dst, f.index, path) != RouteStatus::Routed) {
        acc.table.record_failure();
        continue;
      }
      if (assert_routes) check_route(topo, faults, f.src, f.dst, path);
      acc.table.record_flow(topo, path);
      const int hop = topo.hop_length(path);
      acc.hop_sum += static_cast<std::uint64_t>(hop);
      acc.max_hop = std::max(acc.max_hop, hop);
    }
    partial[w] = std::move(acc);
  });

  LinkLoadTable table(topo);
  std::uint64_t hop_sum = 0;
  int max_hop = 0;
  for (auto& p : partial) {
    if (p.table.channel_count() == 0) continue;
    table.merge(p.table);
    hop_sum += p.hop_sum;
    max_hop = std::max(max_hop, p.max_hop);
  }
  if (table.routed_flows() + table.failed_flows() != flows) {
    throw std::logic_error("run audit failed: routed + failed != flow count");
  }

  SummaryRow row;
  row.router = std::string(router.name());
  row.pattern = to_string(pattern.spec());
  row.fault_fraction = faults.fraction();
  row.servers = topo.server_count();
  row.flows = flows;
  row.routed_flows = table.routed_flows();
  row.failed_flows = table.failed_flows();
  row.bottleneck = bottleneck(table);
  if (std::holds_alternative<AllToAll>(pattern.spec()) && row.bottleneck > 0) {
    row.abt = abt(row.servers, row.bottleneck);
  }
  row.mean_hop = row.routed_flows == 0 ? 0.0 : static_cast<double>(hop_sum) / static_cast<double>(row.routed_flows);
  row.max_hop = max_hop;
  row.connectivity_pct = flows == 0 ? 100.0 : 100.0 * static_cast<double>(row.routed_flows) / static_cast<double>(flows);
  const LoadHistogram h = histogram(table);
  row.mean_load_all = h.mean_load_all;
  row.mean_load_used = h.mean_load_used;
  row.unused_channels = h.unused_channels;
  if (table_out) *table_out = std::move(table);
  return row;
}

RunResult run(const ExperimentSpec& spec, const Topology& topo) {
  validate(spec);
  const TrafficPattern pattern(parse_pattern(spec.pattern), topo.server_count());
  RunResult result;
  for (std::uint64_t seed : spec.seeds) {
    FaultSet faults(topo);
    if (!spec.fault_file.empty()) {
      std::ifstream in(spec.fault_file);
      if (!in) throw ArgumentError("cannot open fault file '" + spec.fault_file + "'");
      faults = read_fault_file(topo, in);
    } else if (spec.fault_fraction > 0.0) {
      faults = inject_uniform(topo, spec.fault_fraction, seed, spec.max_fault_fraction);
    }
    RetryPolicy policy;
    policy.max_random_intermediates = spec.max_random_intermediates;
    policy.crossing_budget = spec.crossing_budget;
    policy.seed = seed;
    const auto router = make_router(spec.router, topo, faults, policy);
    LinkLoadTable table;
    SummaryRow row = run_once(topo, faults, *router, pattern, spec.workers, spec.assert_routes, &table);
    row.topology = spec.topology;
    row.seed = seed;
    result.rows.push_back(std::move(row));
    result.tables.push_back(std::move(table));
  }
  return result;
}

RunResult run(const ExperimentSpec& spec) {
  validate(spec);
  const Topology topo = build_from_spec(spec.topology);
  return run(spec, topo);
}

void write_summary_header(std::ostream& out) {
  out << "topology,router,pattern,fault_fraction,seed,N,F,ABT,mean_hop,max_hop,connectivity_pct,"
         "mean_load_all,mean_load_used,unused_channels,flows,routed,failed\n";
}

void write_summary_row(const SummaryRow& r, std::ostream& out) {
  out << r.topology << ',' << r.router << ',' << r.pattern << ',' << fmt(r.fault_fraction) << ',' << r.seed
      << ',' << r.servers << ',' << r.bottleneck << ',' << fmt(r.abt) << ',' << fmt(r.mean_hop) << ','
      << r.max_hop << ',' << fmt(r.connectivity_pct) << ',' << fmt(r.mean_load_all) << ','
      << fmt(r.mean_load_used) << ',' << r.unused_channels << ',' << r.flows << ',' << r.routed_flows << ','
      << r.failed_flows << '\n';
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::vector<SummaryRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;
    const auto f = split_list(line);
    if (f.size() != 17) throw InputError("expected 17 summary fields", lineno);
    try {
      SummaryRow r;
      r.topology = f[0];
      r.router = f[1];
      r.pattern = f[2];
      r.fault_fraction = std::stod(f[3]);
      r.seed = std::stoull(f[4]);
      r.servers = std::stoull(f[5]);
      r.bottleneck = std::stoull(f[6]);
      r.abt = std::stod(f[7]);
      r.mean_hop = std::stod(f[8]);
      r.max_hop = std::stoi(f[9]);
      r.connectivity_pct = std::stod(f[10]);
      r.mean_load_all = std::stod(f[11]);
      r.mean_load_used = std::stod(f[12]);
      r.unused_channels = std::stoull(f[13]);
      r.flows = std::stoull(f[14]);
      r.routed_flows = std::stoull(f[15]);
      r.failed_flows = std::stoull(f[16]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw InputError("malformed summary row", lineno);
    }
  }
  return rows;
}

void write_loads_csv(const Topology& topo, const LinkLoadTable& table, std::ostream& out) {
  out << "channel_src,channel_dst,flows\n";
  for (ChannelId c = 0; c < table.channel_count(); ++c) {
    const auto [from, to] = topo.channel_endpoints(c);
    out << from << ',' << to << ',' << table.load(c) << '\n';
  }
}

void write_cost_header(std::ostream& out) { out << "family,k,n,rho,gamma,cost_norm\n"; }

void write_cost_row(const CostRow& r, std::ostream& out) {
  out << to_string(r.family) << ',' << r.k << ',' << r.n << ',' << fmt(r.rho) << ',' << fmt(r.gamma) << ','
      << fmt(r.cost_norm) << '\n';
}

SweepResult sweep(const GridSpec& grid) {
  SweepResult result;
  const bool persist = !grid.out_dir.empty();
  if (persist) std::filesystem::create_directories(grid.out_dir);
  for (const auto& topo_spec : grid.topologies) {
    std::optional<Topology> topo;
    std::string build_error;
    try {
      topo = build_from_spec(topo_spec);
    } catch (const std::exception& e) {
      build_error = e.what();
    }
    for (const auto& router : grid.routers) {
      for (const auto& pattern : grid.patterns) {
        for (double p : grid.fault_fractions) {
          std::string cell = topo_spec + "_" + router + "_" + pattern + "_" + fmt(p);
          std::replace_if(cell.begin(), cell.end(), [](char c) { return c == ':' || c == '/' || c == ' '; }, '-');
          if (!topo) {
            result.failed_cells.push_back(cell + ": " + build_error);
            continue;
          }
          const std::filesystem::path file = std::filesystem::path(grid.out_dir) / (cell + ".csv");
          try {
            if (persist && std::filesystem::exists(file)) {
              std::ifstream in(file);
              auto rows = read_summary_csv(in);
              result.rows.insert(result.rows.end(), rows.begin(), rows.end());
              ++result.reused_cells;
              continue;
            }
            ExperimentSpec spec;
            spec.topology = topo_spec;
            spec.router = router;
            spec.pattern = pattern;
            spec.fault_fraction = p;
            spec.seeds = grid.seeds;
            spec.workers = grid.workers;
            spec.assert_routes = grid.assert_routes;
            const RunResult r = run(spec, *topo);
            if (persist) {
              // Write then rename, so an interrupted sweep never leaves a partial cell.
              const auto tmp = file.string() + ".tmp";
              {
                std::ofstream out(tmp);
                if (!out) throw std::runtime_error("cannot write " + tmp);
                write_summary_header(out);
                for (const auto& row : r.rows) write_summary_row(row, out);
              }
              std::filesystem::rename(tmp, file);
            }
            result.rows.insert(result.rows.end(), r.rows.begin(), r.rows.end());
          } catch (const std::exception& e) {
            result.failed_cells.push_back(cell + ": " + e.what());
          }
        }
      }
    }
  }
  return result;
}

std::vector<CostRow> cost_sweep(const CostGrid& grid) {
  if (grid.levels.size() != grid.families.size() || grid.radices.size() != grid.families.size()) {
    throw ArgumentError("cost grid families, levels and radices must align");
  }
  std::vector<CostRow> rows;
  for (std::size_t f = 0; f < grid.families.size(); ++f) {
    for (double rho : grid.rhos) {
      for (double gamma : grid.gammas) {
        const double c = normalized_cost(grid.families[f], grid.levels[f], {rho, gamma});
        rows.push_back({grid.families[f], grid.levels[f], grid.radices[f], rho, gamma, c});
      }
    }
  }
  return rows;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  if (text.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ArgumentError("bad number '" + s + "' in '" + text + "'");
    return v;
  };
  std::vector<double> out;
  if (text.empty()) return out;
  const auto range = split_list(text, ':');
  if (range.size() == 3) {
    const double lo = number(range[0]);
    const double hi = number(range[1]);
    const double step = number(range[2]);
    if (!(step > 0.0) || hi < lo) throw ArgumentError("range '" + text + "' needs lo <= hi and step > 0");
    const auto count = static_cast<std::uint64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(std::min(hi, lo + static_cast<double>(i) * step));
    return out;
  }
  if (range.size() != 1) throw ArgumentError("expected a,b,c or lo:hi:step, got '" + text + "'");
  for (const auto& item : split_list(text)) out.push_back(number(item));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ArgumentError("bad seed '" + s + "' in '" + text + "'");
    }
    return std::stoull(s);
  };
  std::vector<std::uint64_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = number(text.substr(0, dots));
    const auto hi = number(text.substr(dots + 2));
    if (hi < lo) throw ArgumentError("seed range '" + text + "' is empty");
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  for (const auto& item : split_list(text)) out.push_back(number(item));
  return out;
}

}  // namespace stellar
