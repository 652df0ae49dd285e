#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mrmac/errors.hpp"
#include "mrmac/fixtures.hpp"
#include "mrmac/graph_io.hpp"
#include "mrmac/harness.hpp"
#include "mrmac/oracle.hpp"
#include "mrmac/resolution.hpp"

namespace {

using namespace mrmac;

void apply_overrides(ExperimentConfig& cfg, const std::string& out_dir, unsigned threads) {
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (threads > 0) cfg.threads = threads;
}

void write_schedule(const std::string& path, const Configuration& x) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_configuration_csv(out, x);
}

int schedule_command(const std::string& graph_file, const std::string& rule, const std::string& plan_file,
                     unsigned K, const std::string& schedule_out) {
  const Topology g = read_graph_file(graph_file);
  std::optional<MulticastPlan> plan;
  if (!plan_file.empty()) plan = read_plan_file(plan_file, g);

  if (rule == "bounds") {
    ResolutionBounds b;
    if (plan) b = K == 1 ? bounds_multicast(g, *plan) : bounds_multichannel(g, *plan, K);
    else b = K == 1 ? bounds_2d(g) : bounds_multichannel(g, K);
    const auto rho = throughput_bounds(g, b.lower, b.upper, plan ? &*plan : nullptr);
    std::cout << "station,lower,upper\n";
    for (StationId r = 0; r < g.size(); ++r) std::cout << r << ',' << b.lower[r] << ',' << b.upper[r] << '\n';
    std::cout << "# rho_min=" << rho.rho_min << " rho_max=" << rho.rho_max << '\n';
    return 0;
  }
  if (plan || K != 1) throw Error("--plan and --K apply to --rule bounds only");

  ResolutionAssignment a;
  Configuration x;
  if (rule == "oneD") {
    a = resolution_1d(g);
    x = greedy_1d_schedule(g, a);
  } else {
    try {
      a = resolution_chordal(g);
    } catch (const NotChordal& e) {
      std::cerr << "square graph is not chordal; chordless cycle:";
      for (StationId v : e.witness()) std::cerr << ' ' << v;
      std::cerr << '\n';
      return 1;
    }
    x = greedy_peo_schedule(g);
  }
  write_assignment_csv(std::cout, a);
  const bool ok = is_collision_free(g, x).collision_free;
  std::cout << "# greedy schedule " << (ok ? "collision-free" : "has collisions") << '\n';
  if (!schedule_out.empty()) write_schedule(schedule_out, x);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-resolution MAC scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a seeded parameter sweep and write CSV/JSON results");
  sweep->add_option("config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Override output_dir");
  sweep->add_option("--threads", threads, "Override thread count")->check(CLI::Range(1u, 256u));

  auto* trace = app.add_subcommand("trace", "Run the first point of a config with per-cycle dumps");
  trace->add_option("config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
  trace->add_option("--out", out_dir, "Override output_dir");

  std::string fixture_name;
  bool list = false;
  auto* fixture = app.add_subcommand("fixture", "Run a named counterexample fixture (or 'all')");
  fixture->add_option("name", fixture_name, "Fixture name");
  fixture->add_flag("--list", list, "List fixture names");

  std::string graph_file, rule = "oneD", plan_file, schedule_out;
  unsigned K = 1;
  auto* schedule = app.add_subcommand("schedule", "Compute resolutions and a centralized schedule for a graph file");
  schedule->add_option("graph", graph_file, "Graph file")->required()->check(CLI::ExistingFile);
  schedule->add_option("--rule", rule, "Resolution rule")->check(CLI::IsMember({"oneD", "chordal", "bounds"}));
  schedule->add_option("--plan", plan_file, "Multicast plan file (bounds only)")->check(CLI::ExistingFile);
  schedule->add_option("--K", K, "Channel count (bounds only)")->check(CLI::Range(1u, 1024u));
  schedule->add_option("--schedule-out", schedule_out, "Write the greedy schedule as configuration CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      auto cfg = parse_config_file(config_path);
      apply_overrides(cfg, out_dir, threads);
      const auto result = run_experiment(cfg);
      for (const auto& f : result.files) std::cout << f << '\n';
      return 0;
    }
    if (*trace) {
      auto cfg = parse_config_file(config_path);
      apply_overrides(cfg, out_dir, 0);
      for (const auto& f : run_trace(cfg)) std::cout << f << '\n';
      return 0;
    }
    if (*fixture) {
      if (list || fixture_name.empty()) {
        for (const auto& n : fixture_names()) std::cout << n << '\n';
        return list ? 0 : 2;
      }
      const auto names = fixture_name == "all" ? fixture_names() : std::vector<std::string>{fixture_name};
      bool ok = true;
      for (const auto& n : names) {
        const auto report = run_fixture(n);
        print_report(std::cout, report);
        ok = ok && report.passed();
      }
      return ok ? 0 : 1;
    }
    if (*schedule) return schedule_command(graph_file, rule, plan_file, K, schedule_out);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
