#ifndef MRMAC_HARNESS_HPP
#define MRMAC_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mrmac/engine.hpp"
#include "mrmac/metrics.hpp"

namespace mrmac {

enum class TrafficMode { broadcast, multicast };
enum class ResolutionChoice { oneD, lower, upper, chordal };

/// Flat `key = value` experiment description; `#` starts a comment. List
/// values are comma separated.
struct ExperimentConfig {
  TrafficMode mode = TrafficMode::broadcast;
  int dimension = 1;
  double extent = 50.0;
  double range = 1.0;
  std::vector<double> lambda{1.0};
  std::vector<double> gamma{1.0};
  std::vector<double> q{1.0};
  std::vector<unsigned> K{1};
  double epsilon = 0.0;
  std::size_t seeds = 10;
  std::uint64_t master_seed = 1;
  std::size_t max_cycles = 2000;
  std::size_t stable_window = 10;
  ResolutionChoice resolution = ResolutionChoice::oneD;
  bool refine = false;
  bool reclaim = false;
  unsigned threads = 1;
  bool dump_configurations = true;
  std::string output_dir = "out";
};

/// Throws ParseError with the offending line and key.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

struct RunPoint {
  std::size_t lambda_index = 0;
  std::size_t gamma_index = 0;
  std::size_t q_index = 0;
  std::size_t K_index = 0;
  std::size_t seed = 0;
};

struct RunRecord {
  double lambda = 0.0;
  double gamma = 0.0;
  double q = 1.0;
  unsigned K = 1;
  std::size_t seed = 0;
  std::size_t stations = 0;
  std::size_t cycles = 0;
  ConvergenceStats stats;
  double rho = 0.0;        // NaN unless the final configuration is collision-free
  double rho_aloha = 0.0;  // NaN outside one dimension
  double improvement_pct = 0.0;
  std::uint64_t bits_exchanged = 0;
  unsigned max_level = 0;
  bool chordal_fallback = false;  // chordal rule requested but G^2 was not chordal
};

/// Points in output order: lambda, then gamma, q, K, seed.
std::vector<RunPoint> expand_points(const ExperimentConfig& cfg);

/// 64-bit seed for one purpose of one run. The network depends only on
/// (lambda, seed) and the plan additionally on q, so runs that differ in gamma
/// or K share their instance.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t salt);

RunRecord run_point(const ExperimentConfig& cfg, const RunPoint& p, const CycleObserver& observer = {});

struct SweepResult {
  std::vector<RunRecord> records;
  std::vector<std::string> files;
};

/// Runs every point, in parallel when cfg.threads > 1, and writes the sweep
/// CSV, per-run summaries and the aggregate CSV under cfg.output_dir.
/// Outputs do not depend on the thread count.
SweepResult run_experiment(const ExperimentConfig& cfg, bool write_files = true);

/// Header `lambda,gamma,seed,conv_time,conv_pct,rho_bc,rho_aloha,improvement_pct`.
void write_sweep_csv(std::ostream& out, std::span<const RunRecord> records);

/// First point of the config with per-cycle trace CSV, optional per-cycle
/// configuration dumps and a JSON summary. Returns the written file paths.
std::vector<std::string> run_trace(const ExperimentConfig& cfg);

}  // namespace mrmac

#endif  // MRMAC_HARNESS_HPP
