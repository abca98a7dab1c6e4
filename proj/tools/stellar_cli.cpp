// Command-line front end: build, route, run, cost and sweep.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "stellar/bfs.hpp"
#include "stellar/errors.hpp"
#include "stellar/experiment.hpp"
#include "stellar/faults.hpp"
#include "stellar/metrics.hpp"
#include "stellar/routing.hpp"
#include "stellar/topology_gen.hpp"

namespace {

using namespace stellar;

// Output stream that is either stdout or a file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct BuildArgs {
  std::string topology;
  std::string out;
  bool diameter = false;
  unsigned workers = 1;
};

struct RouteArgs {
  std::string topology;
  std::string router = "bfs";
  std::string faults;
  NodeId src = 0;
  NodeId dst = 0;
  std::uint64_t flow_index = 0;
};

struct RunArgs {
  ExperimentSpec spec;
  std::string seeds = "1";
  std::string out;
  std::string loads;
  bool show_histogram = false;
};

struct CostArgs {
  std::string rhos = "0.01,0.02,0.04,0.08,0.16";
  std::string gammas = "0.1:0.6:0.1";
  std::string out;
};

struct SweepArgs {
  std::string topologies;
  std::string routers;
  std::string patterns = "all2all";
  std::string faults = "0";
  std::string seeds = "1";
  std::string out_dir;
  std::string out;
  unsigned workers = 1;
  bool assert_routes = false;
};

void add_config(CLI::App* cmd) {
  cmd->add_option("--config", "Flat key = value file; command-line flags take precedence");
}

// CLI11 reads config files for the root app only, so a subcommand's --config
// file is expanded into flags here. Keys already given on the command line
// are skipped.
std::vector<std::string> expand_config(const CLI::App& app, std::vector<std::string> args) {
  std::size_t sub_at = args.size();
  const CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < args.size() && sub == nullptr; ++i) {
    for (const CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; })) {
      if (s->get_name() == args[i]) {
        sub = s;
        sub_at = i;
      }
    }
  }
  if (sub == nullptr) return args;

  std::string path;
  std::vector<std::string> given;
  for (std::size_t i = sub_at + 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const std::string name = a.substr(0, a.find('='));
    given.push_back(name);
    if (name != "--config") continue;
    if (a.size() > name.size()) {
      path = a.substr(name.size() + 1);
    } else if (i + 1 < args.size()) {
      path = args[i + 1];
    }
  }
  if (path.empty()) return args;

  std::vector<std::string> extra;
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(path)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty()) throw CLI::ConfigError("sections are not supported in " + path);
    const std::string flag = "--" + item.name;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr || flag == "--config") {
      throw CLI::ConfigError("unknown key '" + item.name + "' in " + path);
    }
    if (std::find(given.begin(), given.end(), flag) != given.end()) continue;
    if (opt->get_expected_max() == 0) {
      const std::string v = item.inputs.empty() ? "true" : item.inputs.front();
      if (v == "true" || v == "1" || v == "on" || v == "yes") extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    extra.insert(extra.end(), item.inputs.begin(), item.inputs.end());
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_at + 1), extra.begin(), extra.end());
  return args;
}

int do_build(const BuildArgs& a) {
  const Topology topo = build_from_spec(a.topology);
  std::uint32_t ports = 0;
  for (NodeId v = topo.server_count(); v < topo.node_count(); ++v) ports = std::max(ports, topo.degree(v));
  std::cout << "topology " << topo.family().display_name() << '\n'
            << "servers " << topo.server_count() << '\n'
            << "switches " << topo.switch_count() << '\n'
            << "switch_ports " << ports << '\n'
            << "links " << topo.link_count() << '\n'
            << "directional_links " << topo.channel_count() << '\n'
            << "unconnected_server_ports " << unconnected_server_ports(topo) << '\n';
  if (a.diameter) {
    std::vector<NodeId> sources(topo.server_count());
    for (NodeId s = 0; s < topo.server_count(); ++s) sources[s] = s;
    std::cout << "hop_diameter " << bfs_eccentricity_max(topo, sources, a.workers) << '\n';
  }
  if (!a.out.empty()) {
    Output nodes(a.out + "_nodes.csv");
    write_nodes_csv(topo, nodes.get());
    Output links(a.out + "_links.csv");
    write_links_csv(topo, links.get());
  }
  return 0;
}

int do_route(const RouteArgs& a) {
  const Topology topo = build_from_spec(a.topology);
  const FaultSet faults = parse_fault_spec(topo, a.faults);
  const auto router = make_router(a.router, topo, faults);
  const RoutingOutcome out = router->route(a.src, a.dst, a.flow_index);
  if (!out.routed()) {
    std::cout << "status " << to_string(out.status) << '\n';
    return 1;
  }
  check_route(topo, faults, a.src, a.dst, out.path.nodes);
  std::cout << "path";
  for (NodeId v : out.path.nodes) std::cout << ' ' << v;
  std::cout << "\nhop_length " << out.path.hop_length << '\n';
  return 0;
}

int do_run(RunArgs& a) {
  a.spec.seeds = parse_seed_list(a.seeds);
  const Topology topo = build_from_spec(a.spec.topology);
  const RunResult result = run(a.spec, topo);
  Output out(a.out);
  write_summary_header(out.get());
  for (const auto& row : result.rows) write_summary_row(row, out.get());
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (!a.loads.empty()) {
      Output loads(a.loads + "_seed" + std::to_string(result.rows[i].seed) + ".csv");
      write_loads_csv(topo, result.tables[i], loads.get());
    }
    if (a.show_histogram) {
      const LoadHistogram h = histogram(result.tables[i]);
      std::cerr << "seed " << result.rows[i].seed << " histogram (bin " << h.bin_width << ")\n";
      for (const auto& [bin, count] : h.bins) {
        std::cerr << "  [" << bin * h.bin_width << ", " << (bin + 1) * h.bin_width << ") " << count << '\n';
      }
      const std::uint64_t idle = unconnected_server_ports(topo);
      std::cerr << "  unused " << h.unused_channels << " of " << h.channels << ", idle server ports " << idle
                << ", mean over loaded channels and idle ports " << mean_load_ports(h, idle) << '\n';
    }
  }
  return 0;
}

int do_cost(const CostArgs& a) {
  CostGrid grid;
  grid.rhos = parse_double_list(a.rhos);
  grid.gammas = parse_double_list(a.gammas);
  Output out(a.out);
  write_cost_header(out.get());
  for (const auto& row : cost_sweep(grid)) write_cost_row(row, out.get());
  return 0;
}

int do_sweep(const SweepArgs& a) {
  GridSpec grid;
  grid.topologies = split_list(a.topologies);
  grid.routers = split_list(a.routers);
  grid.patterns = split_list(a.patterns);
  grid.fault_fractions = parse_double_list(a.faults);
  grid.seeds = parse_seed_list(a.seeds);
  grid.workers = a.workers;
  grid.assert_routes = a.assert_routes;
  grid.out_dir = a.out_dir;
  const SweepResult result = sweep(grid);
  Output out(a.out);
  write_summary_header(out.get());
  for (const auto& row : result.rows) write_summary_row(row, out.get());
  if (result.reused_cells > 0) std::cerr << "reused " << result.reused_cells << " cells\n";
  for (const auto& f : result.failed_cells) std::cerr << "failed " << f << '\n';
  return result.failed_cells.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-level evaluator for server-centric datacenter networks"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "Build a topology and print its statistics");
  build->add_option("--topology", build_args.topology, "gqstar:K:N | ficonn:K:N | dpillar:K:N | stellar:<path>")
      ->required();
  build->add_option("--out", build_args.out, "Prefix for <prefix>_nodes.csv and <prefix>_links.csv");
  build->add_flag("--diameter", build_args.diameter, "Compute the hop-diameter by exhaustive BFS");
  build->add_option("--workers", build_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  add_config(build);

  RouteArgs route_args;
  auto* route = app.add_subcommand("route", "Route a single server pair");
  route->add_option("--topology", route_args.topology, "Topology spec")->required();
  route->add_option("--router", route_args.router, "Router name");
  route->add_option("--src", route_args.src, "Source server")->required();
  route->add_option("--dst", route_args.dst, "Destination server")->required();
  route->add_option("--faults", route_args.faults, "Fault file or fraction:seed");
  route->add_option("--flow-index", route_args.flow_index, "Flow index for retry randomness");
  add_config(route);

  RunArgs run_args;
  auto* runc = app.add_subcommand("run", "Run one experiment");
  runc->add_option("--topology", run_args.spec.topology, "Topology spec")->required();
  runc->add_option("--router", run_args.spec.router, "Router name")->required();
  runc->add_option("--pattern", run_args.spec.pattern, "all2all | many:SIZE:SEED | butterfly | random:COUNT:SEED");
  runc->add_option("--faults", run_args.spec.fault_fraction, "Fraction of links to fail per seed");
  runc->add_option("--fault-file", run_args.spec.fault_file, "Explicit fault file (overrides --faults)");
  runc->add_option("--max-fault-fraction", run_args.spec.max_fault_fraction, "Cap on --faults");
  runc->add_option("--seeds", run_args.seeds, "Seed list: 1,2,3 or 1..5");
  runc->add_option("--retries", run_args.spec.max_random_intermediates, "Random intermediate attempts");
  runc->add_option("--budget", run_args.spec.crossing_budget, "Crossing budget (0 = 8kn)");
  runc->add_option("--workers", run_args.spec.workers, "Worker threads")->check(CLI::PositiveNumber);
  runc->add_flag("--assert", run_args.spec.assert_routes, "Check every routed path");
  runc->add_option("--out", run_args.out, "Summary CSV (default stdout)");
  runc->add_option("--loads", run_args.loads, "Prefix for per-seed channel load CSVs");
  runc->add_flag("--histogram", run_args.show_histogram, "Print the load histogram to stderr");
  add_config(runc);

  CostArgs cost_args;
  auto* cost = app.add_subcommand("cost", "Normalised cost table");
  cost->add_option("--rho", cost_args.rhos, "rho values: a,b,c or lo:hi:step");
  cost->add_option("--gamma", cost_args.gammas, "gamma values: a,b,c or lo:hi:step");
  cost->add_option("--out", cost_args.out, "Cost CSV (default stdout)");
  add_config(cost);

  SweepArgs sweep_args;
  auto* sweepc = app.add_subcommand("sweep", "Run a grid of experiments");
  sweepc->add_option("--topologies", sweep_args.topologies, "Comma-separated topology specs");
  sweepc->add_option("--routers", sweep_args.routers, "Comma-separated router names");
  sweepc->add_option("--patterns", sweep_args.patterns, "Comma-separated patterns");
  sweepc->add_option("--faults", sweep_args.faults, "Fault fractions: a,b,c or lo:hi:step");
  sweepc->add_option("--seeds", sweep_args.seeds, "Seed list: 1,2,3 or 1..5");
  sweepc->add_option("--out-dir", sweep_args.out_dir, "Directory for per-cell CSVs (resumable)");
  sweepc->add_option("--out", sweep_args.out, "Combined summary CSV (default stdout)");
  sweepc->add_option("--workers", sweep_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  sweepc->add_flag("--assert", sweep_args.assert_routes, "Check every routed path");
  add_config(sweepc);

  try {
    std::vector<std::string> args = expand_config(app, std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*build) return do_build(build_args);
    if (*route) return do_route(route_args);
    if (*runc) return do_run(run_args);
    if (*cost) return do_cost(cost_args);
    if (*sweepc) return do_sweep(sweep_args);
  } catch (const std::logic_error& e) {
    // Argument and domain errors derive from logic_error; a bare one is a
    // failed invariant.
    const bool invariant = dynamic_cast<const std::invalid_argument*>(&e) == nullptr &&
                           dynamic_cast<const std::domain_error*>(&e) == nullptr &&
                           dynamic_cast<const std::length_error*>(&e) == nullptr;
    std::cerr << (invariant ? "invariant violated: " : "error: ") << e.what() << '\n';
    return invariant ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
