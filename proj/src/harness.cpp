#include "mrmac/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mrmac/errors.hpp"
#include "mrmac/oracle.hpp"
#include "mrmac/resolution.hpp"

namespace mrmac {
namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& v, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, key, "expected a number, got '" + v + "'");
  }
}

std::uint64_t to_unsigned(const std::string& v, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
    const auto u = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw ParseError(line, key, "expected a non-negative integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, std::size_t line, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(line, key, "expected true or false, got '" + v + "'");
}

std::vector<double> to_double_list(const std::string& v, std::size_t line, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(item, line, key));
  if (out.empty()) throw ParseError(line, key, "list must not be empty");
  return out;
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

nlohmann::json json_number(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

struct Instance {
  Topology g;
  MulticastPlan plan;
  ResolutionAssignment initial;
  ResolutionAssignment ceiling;
  bool chordal_fallback = false;
};

Instance build_instance(const ExperimentConfig& cfg, const RunPoint& p) {
  Instance in;
  const double lambda = cfg.lambda.at(p.lambda_index);
  const unsigned K = cfg.K.at(p.K_index);
  in.g = generate_poisson_unit_disk(cfg.dimension, cfg.extent, lambda, cfg.range,
                                    derive_seed(cfg.master_seed, p.lambda_index, p.seed, 1));
  if (cfg.mode == TrafficMode::multicast) {
    const std::uint64_t key = (std::uint64_t{p.lambda_index} << 20) | p.q_index;
    in.plan = MulticastPlan::random(in.g, cfg.q.at(p.q_index), derive_seed(cfg.master_seed, key, p.seed, 2));
    const auto b = bounds_multicast(in.g, in.plan);
    in.initial = cfg.resolution == ResolutionChoice::upper ? b.upper : b.lower;
    in.ceiling = b.upper;
    return in;
  }
  const auto b = K == 1 ? bounds_2d(in.g) : bounds_multichannel(in.g, K);
  in.ceiling = b.upper;
  switch (cfg.resolution) {
    case ResolutionChoice::oneD: in.initial = resolution_1d(in.g); break;
    case ResolutionChoice::lower: in.initial = b.lower; break;
    case ResolutionChoice::upper: in.initial = b.upper; break;
    case ResolutionChoice::chordal:
      try {
        in.initial = resolution_chordal(in.g);
      } catch (const NotChordal&) {
        in.initial = b.upper;
        in.chordal_fallback = true;
      }
      break;
  }
  return in;
}

ProtocolParams protocol_params(const ExperimentConfig& cfg, const RunPoint& p) {
  ProtocolParams pp;
  pp.epsilon = cfg.epsilon;
  pp.gamma = cfg.gamma.at(p.gamma_index);
  pp.max_cycles = cfg.max_cycles;
  pp.stable_window = cfg.stable_window;
  pp.K = cfg.K.at(p.K_index);
  pp.refine = cfg.refine;
  return pp;
}

World make_world(const ExperimentConfig& cfg, const RunPoint& p, const Instance& in) {
  const std::uint64_t seed = derive_seed(cfg.master_seed, p.lambda_index, p.seed, 3);
  if (cfg.mode == TrafficMode::multicast)
    return World(in.g, in.plan, in.initial, protocol_params(cfg, p), seed, in.ceiling);
  return World(in.g, in.initial, protocol_params(cfg, p), seed, in.ceiling);
}

double final_throughput(const ExperimentConfig& cfg, const Instance& in, const World& w, const RunResult& r) {
  if (!r.collision_free) return std::nan("");
  if (cfg.mode == TrafficMode::multicast) return throughput_multicast(in.g, in.plan, r.final_configuration);
  if (w.params().K > 1) return throughput_sides(in.g, r.final_configuration).value();
  if (cfg.reclaim) return throughput_broadcast(in.g, reclaim_idle_slots(in.g, r.final_configuration));
  return throughput_broadcast(in.g, r.final_configuration);
}

RunRecord make_record(const ExperimentConfig& cfg, const RunPoint& p, const Instance& in, const World& w,
                      const RunResult& r) {
  RunRecord rec;
  rec.lambda = cfg.lambda[p.lambda_index];
  rec.gamma = cfg.gamma[p.gamma_index];
  rec.q = cfg.mode == TrafficMode::multicast ? cfg.q[p.q_index] : 1.0;
  rec.K = cfg.K[p.K_index];
  rec.seed = p.seed;
  rec.stations = in.g.size();
  rec.cycles = r.cycles;
  rec.stats = convergence_stats(r);
  rec.rho = final_throughput(cfg, in, w, r);
  rec.rho_aloha = cfg.dimension == 1 ? aloha_baseline(rec.lambda, cfg.range).rho : std::nan("");
  rec.improvement_pct = 100.0 * (rec.rho / rec.rho_aloha - 1.0);
  rec.bits_exchanged = r.bits_exchanged;
  rec.max_level = r.final_levels.max_level();
  rec.chordal_fallback = in.chordal_fallback;
  return rec;
}

nlohmann::json record_json(const RunRecord& r) {
  return {{"lambda", r.lambda},
          {"gamma", r.gamma},
          {"q", r.q},
          {"K", r.K},
          {"seed", r.seed},
          {"stations", r.stations},
          {"cycles", r.cycles},
          {"conv_time", r.stats.time},
          {"conv_pct", r.stats.percentage},
          {"collision_free", r.stats.collision_free},
          {"throughput", json_number(r.rho)},
          {"rho_aloha", json_number(r.rho_aloha)},
          {"improvement_pct", json_number(r.improvement_pct)},
          {"bits_exchanged", r.bits_exchanged},
          {"max_level", r.max_level},
          {"chordal_fallback", r.chordal_fallback}};
}

void write_aggregate_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<RunRecord>& records) {
  out << "lambda,gamma,q,K,runs,converged,conv_time_mean,conv_time_std,conv_time_median,conv_pct_mean,"
         "rho_mean,rho_std,rho_aloha,improvement_mean,improvement_std\n";
  const std::size_t group = cfg.seeds;
  for (std::size_t first = 0; first + group <= records.size() && group > 0; first += group) {
    std::vector<double> t, pct, rho, imp;
    std::size_t converged = 0;
    for (std::size_t i = first; i < first + group; ++i) {
      const auto& r = records[i];
      t.push_back(static_cast<double>(r.stats.time));
      pct.push_back(r.stats.percentage);
      rho.push_back(r.rho);
      imp.push_back(r.improvement_pct);
      converged += r.stats.collision_free;
    }
    const auto& r0 = records[first];
    const auto ts = summarize(t), ps = summarize(pct), rs = summarize(rho), is = summarize(imp);
    out << number(r0.lambda) << ',' << number(r0.gamma) << ',' << number(r0.q) << ',' << r0.K << ',' << group << ','
        << converged << ',' << number(ts.mean) << ',' << number(ts.stddev) << ',' << number(median(t)) << ','
        << number(ps.mean) << ',' << number(rs.count ? rs.mean : std::nan("")) << ','
        << number(rs.count ? rs.stddev : std::nan("")) << ',' << number(r0.rho_aloha) << ','
        << number(is.count ? is.mean : std::nan("")) << ',' << number(is.count ? is.stddev : std::nan("")) << '\n';
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::map<std::string, std::size_t> seen;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "", "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "", "missing key");
    if (seen.count(key)) throw ParseError(lineno, key, "duplicate key (first set on line " + std::to_string(seen[key]) + ")");
    seen[key] = lineno;
    if (v.empty()) throw ParseError(lineno, key, "missing value");

    if (key == "mode") {
      if (v == "broadcast") cfg.mode = TrafficMode::broadcast;
      else if (v == "multicast") cfg.mode = TrafficMode::multicast;
      else throw ParseError(lineno, key, "expected broadcast or multicast");
    } else if (key == "dimension") {
      const auto d = to_unsigned(v, lineno, key);
      if (d != 1 && d != 2) throw ParseError(lineno, key, "dimension must be 1 or 2");
      cfg.dimension = static_cast<int>(d);
    } else if (key == "extent") {
      cfg.extent = to_double(v, lineno, key);
      if (cfg.extent <= 0) throw ParseError(lineno, key, "extent must be positive");
    } else if (key == "range") {
      cfg.range = to_double(v, lineno, key);
      if (cfg.range <= 0) throw ParseError(lineno, key, "range must be positive");
    } else if (key == "lambda") {
      cfg.lambda = to_double_list(v, lineno, key);
      for (double l : cfg.lambda)
        if (l <= 0) throw ParseError(lineno, key, "intensities must be positive");
    } else if (key == "gamma") {
      cfg.gamma = to_double_list(v, lineno, key);
      for (double g : cfg.gamma)
        if (g < 1) throw ParseError(lineno, key, "gamma values must be >= 1");
    } else if (key == "q") {
      cfg.q = to_double_list(v, lineno, key);
      for (double q : cfg.q)
        if (q < 0 || q > 1) throw ParseError(lineno, key, "q values must lie in [0, 1]");
    } else if (key == "K") {
      cfg.K.clear();
      for (const auto& item : split_list(v)) {
        const auto k = to_unsigned(item, lineno, key);
        if (k < 1 || k > 1024) throw ParseError(lineno, key, "channel counts must lie in [1, 1024]");
        cfg.K.push_back(static_cast<unsigned>(k));
      }
      if (cfg.K.empty()) throw ParseError(lineno, key, "list must not be empty");
    } else if (key == "epsilon") {
      cfg.epsilon = to_double(v, lineno, key);
      if (cfg.epsilon < 0) throw ParseError(lineno, key, "epsilon must be >= 0");
    } else if (key == "seeds") {
      cfg.seeds = to_unsigned(v, lineno, key);
      if (cfg.seeds == 0) throw ParseError(lineno, key, "need at least one seed");
    } else if (key == "master_seed") {
      cfg.master_seed = to_unsigned(v, lineno, key);
    } else if (key == "max_cycles") {
      cfg.max_cycles = to_unsigned(v, lineno, key);
    } else if (key == "stable_window") {
      cfg.stable_window = to_unsigned(v, lineno, key);
      if (cfg.stable_window == 0) throw ParseError(lineno, key, "stable_window must be >= 1");
    } else if (key == "resolution") {
      if (v == "oneD") cfg.resolution = ResolutionChoice::oneD;
      else if (v == "lower") cfg.resolution = ResolutionChoice::lower;
      else if (v == "upper") cfg.resolution = ResolutionChoice::upper;
      else if (v == "chordal") cfg.resolution = ResolutionChoice::chordal;
      else throw ParseError(lineno, key, "expected oneD, lower, upper or chordal");
    } else if (key == "refine") {
      cfg.refine = to_bool(v, lineno, key);
    } else if (key == "reclaim") {
      cfg.reclaim = to_bool(v, lineno, key);
    } else if (key == "threads") {
      const auto t = to_unsigned(v, lineno, key);
      if (t == 0 || t > 256) throw ParseError(lineno, key, "threads must lie in [1, 256]");
      cfg.threads = static_cast<unsigned>(t);
    } else if (key == "dump_configurations") {
      cfg.dump_configurations = to_bool(v, lineno, key);
    } else if (key == "output_dir") {
      cfg.output_dir = v;
    } else {
      throw ParseError(lineno, key, "unknown key");
    }
  }

  auto line_of = [&](const std::string& key) { return seen.count(key) ? seen[key] : lineno; };
  if (cfg.mode == TrafficMode::multicast) {
    if (cfg.resolution == ResolutionChoice::chordal)
      throw ParseError(line_of("resolution"), "resolution", "the clique rule applies to broadcast only");
    for (unsigned k : cfg.K)
      if (k != 1) throw ParseError(line_of("K"), "K", "multichannel operation is defined for broadcast only");
    if (cfg.reclaim) throw ParseError(line_of("reclaim"), "reclaim", "reclaiming is defined for broadcast only");
  }
  if (cfg.reclaim)
    for (unsigned k : cfg.K)
      if (k != 1) throw ParseError(line_of("reclaim"), "reclaim", "reclaiming is defined for a single channel only");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_config(in);
}

std::vector<RunPoint> expand_points(const ExperimentConfig& cfg) {
  std::vector<RunPoint> out;
  const std::size_t nq = cfg.mode == TrafficMode::multicast ? cfg.q.size() : 1;
  for (std::size_t li = 0; li < cfg.lambda.size(); ++li)
    for (std::size_t gi = 0; gi < cfg.gamma.size(); ++gi)
      for (std::size_t qi = 0; qi < nq; ++qi)
        for (std::size_t ki = 0; ki < cfg.K.size(); ++ki)
          for (std::size_t s = 0; s < cfg.seeds; ++s) out.push_back({li, gi, qi, ki, s});
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t salt) {
  Rng rng = make_stream(master, (a << 32) ^ b, salt);
  return rng();
}

RunRecord run_point(const ExperimentConfig& cfg, const RunPoint& p, const CycleObserver& observer) {
  const Instance in = build_instance(cfg, p);
  World w = make_world(cfg, p, in);
  const RunResult r = run(w, observer);
  return make_record(cfg, p, in, w, r);
}

void write_sweep_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << "lambda,gamma,seed,conv_time,conv_pct,rho_bc,rho_aloha,improvement_pct\n";
  for (const auto& r : records)
    out << number(r.lambda) << ',' << number(r.gamma) << ',' << r.seed << ',' << r.stats.time << ','
        << number(r.stats.percentage) << ',' << number(r.rho) << ',' << number(r.rho_aloha) << ','
        << number(r.improvement_pct) << '\n';
}

SweepResult run_experiment(const ExperimentConfig& cfg, bool write_files) {
  const auto points = expand_points(cfg);
  SweepResult result;
  result.records.resize(points.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(points.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        result.records[i] = run_point(cfg, points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(points.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  if (!write_files) return result;

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  // Records are ordered lambda, gamma, q, K, seed; split the sweep CSV per
  // (q, K) pair when there is more than one.
  const std::size_t nq = cfg.mode == TrafficMode::multicast ? cfg.q.size() : 1;
  const bool split = nq * cfg.K.size() > 1;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<RunRecord>> by_qk;
  for (std::size_t i = 0; i < points.size(); ++i)
    by_qk[{points[i].q_index, points[i].K_index}].push_back(result.records[i]);
  for (const auto& [qk, recs] : by_qk) {
    std::string name = "sweep.csv";
    if (split) name = "sweep_q" + number(cfg.mode == TrafficMode::multicast ? cfg.q[qk.first] : 1.0) + "_K" +
                      std::to_string(cfg.K[qk.second]) + ".csv";
    auto out = open_output(dir / name);
    write_sweep_csv(out, recs);
    result.files.push_back((dir / name).string());
  }
  {
    auto out = open_output(dir / "runs.jsonl");
    for (const auto& r : result.records) out << record_json(r).dump() << '\n';
    result.files.push_back((dir / "runs.jsonl").string());
  }
  {
    auto out = open_output(dir / "aggregate.csv");
    write_aggregate_csv(out, cfg, result.records);
    result.files.push_back((dir / "aggregate.csv").string());
  }
  return result;
}

std::vector<std::string> run_trace(const ExperimentConfig& cfg) {
  const auto points = expand_points(cfg);
  const RunPoint p = points.front();
  const Instance in = build_instance(cfg, p);
  World w = make_world(cfg, p, in);

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  std::vector<std::string> files;
  const fs::path trace_path = dir / "trace.csv";
  auto trace = open_output(trace_path);
  files.push_back(trace_path.string());
  trace << "cycle,station,l,state,channel,collided\n";
  const fs::path config_dir = dir / "configurations";
  if (cfg.dump_configurations) fs::create_directories(config_dir);

  const RunResult r = run(w, [&](const World& world) {
    const auto& x = world.configuration();
    const auto collided = colliding_stations(world.model(), x);
    for (StationId s = 0; s < x.size(); ++s)
      trace << x.cycle << ',' << s << ',' << x[s].length << ',' << x[s].to_string() << ',' << x[s].channel << ','
            << (collided[s] ? 1 : 0) << '\n';
    if (cfg.dump_configurations) {
      char name[32];
      std::snprintf(name, sizeof name, "cycle_%06zu.csv", x.cycle);
      auto out = open_output(config_dir / name);
      write_configuration_csv(out, x);
    }
  });
  if (cfg.dump_configurations) files.push_back(config_dir.string());

  const RunRecord rec = make_record(cfg, p, in, w, r);
  nlohmann::json summary = record_json(rec);
  summary["bits_exchanged_per_cycle"] =
      rec.cycles ? nlohmann::json(static_cast<double>(rec.bits_exchanged) / static_cast<double>(rec.cycles))
                 : nlohmann::json(nullptr);
  const fs::path summary_path = dir / "summary.json";
  auto out = open_output(summary_path);
  out << summary.dump(2) << '\n';
  files.push_back(summary_path.string());
  {
    auto levels = open_output(dir / "assignment.csv");
    write_assignment_csv(levels, r.final_levels);
    files.push_back((dir / "assignment.csv").string());
  }
  return files;
}

}  // namespace mrmac
