// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Thresholds are fixed here and nowhere else.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mrmac/chordal.hpp"
#include "mrmac/engine.hpp"
#include "mrmac/errors.hpp"
#include "mrmac/exchange.hpp"
#include "mrmac/fixtures.hpp"
#include "mrmac/metrics.hpp"
#include "mrmac/oracle.hpp"
#include "mrmac/resolution.hpp"
#include "mrmac/voting.hpp"
#include "test_util.hpp"

using namespace mrmac;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string ratio(std::size_t k, std::size_t n) { return std::to_string(k) + "/" + std::to_string(n); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Greedy first, exhaustive search when greedy gets stuck.
std::optional<Configuration> oracle_schedule(const Topology& g, const InterferenceModel& model,
                                             const ResolutionAssignment& levels) {
  const auto order = left_to_right(g);
  if (auto x = greedy_schedule(model, levels, order)) return x;
  try {
    return exhaustive_schedule(model, levels);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

// Steps the world for `cycles` cycles; true iff the states never change.
bool stays_put(World& w, std::size_t cycles) {
  const Configuration start = w.configuration();
  for (std::size_t t = 0; t < cycles; ++t) {
    w.step();
    if (!w.configuration().same_states(start)) return false;
  }
  return true;
}

// --- 1 ---------------------------------------------------------------------

Outcome absorption() {
  constexpr std::size_t kSeeds = 100, kCycles = 500;
  std::ostringstream detail;
  bool all = true;

  auto variant = [&](const char* name, const std::function<bool(std::uint64_t, std::size_t&)>& one) {
    std::size_t held = 0, skipped = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed)
      if (one(seed, skipped)) ++held;
    const bool ok = held == kSeeds;
    all = all && ok;
    detail << name << ' ' << ratio(held, kSeeds);
    if (skipped) detail << " (" << skipped << " without a schedule)";
    detail << "; ";
  };

  ProtocolParams base;
  base.max_cycles = kCycles;
  base.stop_when_collision_free = false;

  variant("broadcast eps=0", [&](std::uint64_t seed, std::size_t&) {
    const Topology g = generate_poisson_unit_disk(1, 20, 1.0 + seed % 5, 1, seed);
    const auto a = resolution_1d(g);
    const auto x = greedy_1d_schedule(g, a);
    if (!is_collision_free(g, x).collision_free) return false;
    ProtocolParams p = base;
    p.epsilon = 0.0;
    World w(g, a, p, seed);
    w.set_configuration(x);
    return stays_put(w, kCycles);
  });

  variant("broadcast eps=0.1", [&](std::uint64_t seed, std::size_t& skipped) {
    const Topology g = testutil::random_disk_graph(12, 3.0, seed);
    const auto a = bounds_2d(g).upper;
    const auto x = oracle_schedule(g, InterferenceModel::broadcast(g), a);
    if (!x) return ++skipped, false;
    ProtocolParams p = base;
    p.epsilon = 0.1;
    World w(g, a, p, seed);
    w.set_configuration(*x);
    return stays_put(w, kCycles);
  });

  variant("multicast q=0.5", [&](std::uint64_t seed, std::size_t& skipped) {
    const Topology g = testutil::random_disk_graph(12, 3.0, seed);
    const auto plan = MulticastPlan::random(g, 0.5, seed);
    const auto a = bounds_multicast(g, plan).upper;
    const auto model = InterferenceModel::multicast(g, plan);
    const auto x = oracle_schedule(g, model, a);
    if (!x) return ++skipped, false;
    World w(g, plan, a, base, seed);
    w.set_configuration(*x);
    return stays_put(w, kCycles);
  });

  variant("K=2", [&](std::uint64_t seed, std::size_t& skipped) {
    const Topology g = testutil::random_disk_graph(12, 3.0, seed);
    const auto model = InterferenceModel::broadcast(g, 2);
    // Prefer the lower bound so that the second channel is actually used.
    auto a = bounds_multichannel(g, 2).lower;
    auto x = oracle_schedule(g, model, a);
    if (!x) {
      a = bounds_multichannel(g, 2).upper;
      x = oracle_schedule(g, model, a);
    }
    if (!x) return ++skipped, false;
    ProtocolParams p = base;
    p.K = 2;
    World w(g, a, p, seed);
    w.set_configuration(*x);
    return stays_put(w, kCycles);
  });

  return {all, detail.str()};
}

// --- 2 ---------------------------------------------------------------------

Outcome one_dimensional_convergence() {
  constexpr std::size_t kRuns = 100, kNeeded = 95;
  const double lambdas[] = {1.0, 3.0, 5.0};
  std::size_t ok = 0;
  std::size_t per_lambda[3] = {0, 0, 0}, tried[3] = {0, 0, 0};
  for (std::uint64_t i = 0; i < kRuns; ++i) {
    const Topology g = generate_poisson_unit_disk(1, 20, lambdas[i % 3], 1, 5000 + i);
    ProtocolParams p;
    p.epsilon = 0.0;
    p.gamma = 1.01;
    p.max_cycles = 2000;
    World w(g, resolution_1d(g), p, i);
    const RunResult r = run(w);
    ++tried[i % 3];
    if (r.collision_free && is_collision_free(g, r.final_configuration).collision_free) {
      ++ok;
      ++per_lambda[i % 3];
    }
  }
  std::string detail = ratio(ok, kRuns) + " collision-free (lambda=1: " + ratio(per_lambda[0], tried[0]) +
                       ", 3: " + ratio(per_lambda[1], tried[1]) + ", 5: " + ratio(per_lambda[2], tried[2]) +
                       "); need " + std::to_string(kNeeded);
  return {ok >= kNeeded, detail};
}

// --- 3 ---------------------------------------------------------------------

Outcome pentagon_counterexample() {
  constexpr std::size_t kSeeds = 20;
  const Topology g = pentagon();
  const bool none_at_2 = !exhaustive_schedule(g, ResolutionAssignment::uniform(5, 2, ResolutionRule::lower2D));
  const auto at3 = exhaustive_schedule(g, ResolutionAssignment::uniform(5, 3, ResolutionRule::upper2D));
  const bool some_at_3 = at3 && is_collision_free(g, *at3).collision_free;
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    const RunResult r = pentagon_refinement_run(seed);
    if (r.collision_free && is_collision_free(g, r.final_configuration).collision_free &&
        r.final_levels.max_level() >= 3)
      ++ok;
  }
  std::string detail = std::string("l=2 ") + (none_at_2 ? "none" : "FOUND") + ", l=3 " + (some_at_3 ? "found" : "NONE") +
                       ", refinement " + ratio(ok, kSeeds);
  return {none_at_2 && some_at_3 && ok == kSeeds, detail};
}

// --- 4 ---------------------------------------------------------------------

Outcome lattice_deadlock() {
  constexpr std::size_t kSeeds = 50, kNeeded = 45;
  const Lattice lat = lattice44();
  const std::set<std::size_t> allowed{0b000, 0b110, 0b111};
  std::size_t stuck = 0;
  bool support = true;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    ProtocolParams p;
    p.epsilon = 0.0;
    World w(lat.g, ResolutionAssignment::uniform(lat.g.size(), 3, ResolutionRule::upper2D), p, seed);
    w.set_configuration(lat.start);
    const RunResult r = run(w, [&](const World& world) {
      for (StationId m : lat.middle) {
        const VoteTally t = vote_broadcast(lat.g, world.configuration(), m);
        for (std::size_t i = 0; i < t.size(); ++i)
          if (t.weight[i] > 0 && !allowed.count(i)) support = false;
      }
    });
    if (!r.collision_free) ++stuck;
  }
  std::size_t converged = 0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed)
    if (lattice_run(0.1, seed).collision_free) ++converged;
  std::string detail = "eps=0 stuck " + ratio(stuck, kSeeds) + ", support " + (support ? "{0,6,7}" : "LEAKED") +
                       "; eps=0.1 converged " + ratio(converged, kSeeds) + ", need " + std::to_string(kNeeded);
  return {stuck == kSeeds && support && converged >= kNeeded, detail};
}

// --- 5 ---------------------------------------------------------------------

Outcome throughput_identity() {
  constexpr std::size_t kInstances = 100;
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    bool same = true;
    switch (seed % 3) {
      case 0: {
        const Topology g = testutil::random_disk_graph(8 + seed % 10, 3.0, seed);
        const auto t = throughput_sides(g, testutil::random_configuration(g.size(), 6, seed));
        same = t.transmitter_side == t.receiver_side;
        break;
      }
      case 1: {
        const Topology g = testutil::random_disk_graph(8 + seed % 10, 3.0, seed);
        const auto plan = MulticastPlan::random(g, 0.2 + 0.3 * (seed % 3), seed);
        const auto t = throughput_sides(g, testutil::random_configuration(g.size(), 6, seed), &plan);
        same = t.transmitter_side == t.receiver_side;
        break;
      }
      default: {
        const Topology g = generate_poisson_unit_disk(1, 15, 1.0 + seed % 4, 1, seed);
        const auto sets = reclaim_idle_slots(g, greedy_1d_schedule(g, resolution_1d(g)));
        const auto t = throughput_sides(g, sets);
        same = t.transmitter_side == t.receiver_side;
      }
    }
    if (same) ++ok;
  }
  return {ok == kInstances, ratio(ok, kInstances) + " exact matches"};
}

// --- 6 ---------------------------------------------------------------------

Outcome aloha_band() {
  constexpr std::size_t kRealizations = 100;
  constexpr double kLow = 40.0, kHigh = 120.0;
  std::ostringstream detail;
  bool all = true;
  detail << "reclaimed/plain per lambda:";
  for (int lambda = 1; lambda <= 10; ++lambda) {
    std::vector<double> reclaimed, plain;
    for (std::uint64_t i = 0; i < kRealizations; ++i) {
      const Topology g = generate_poisson_unit_disk(1, 50, lambda, 1, 100000 * lambda + i);
      const Configuration x = greedy_1d_schedule(g, resolution_1d(g));
      plain.push_back(throughput_broadcast(g, x));
      reclaimed.push_back(throughput_broadcast(g, reclaim_idle_slots(g, x)));
    }
    const double rho_aloha = aloha_baseline(lambda, 1.0).rho;
    const double imp = 100.0 * (summarize(reclaimed).mean / rho_aloha - 1.0);
    const double imp_plain = 100.0 * (summarize(plain).mean / rho_aloha - 1.0);
    const bool ok = imp >= kLow && imp <= kHigh;
    all = all && ok;
    detail << ' ' << lambda << ':' << fmt("%.1f", imp) << '/' << fmt("%.1f", imp_plain) << (ok ? "" : "!");
  }
  detail << " (band [40,120])";
  return {all, detail.str()};
}

// --- 7 ---------------------------------------------------------------------

Outcome chordal_scheduling() {
  constexpr std::size_t kGraphs = 100;
  std::size_t found = 0, greedy_ok = 0, levels_ok = 0, small = 0, exhaustive_ok = 0;
  for (std::uint64_t seed = 0; found < kGraphs && seed < 100000; ++seed) {
    const std::size_t n = 4 + seed % 12;
    const Topology g = testutil::random_disk_graph(n, 1.0 + 0.25 * n, seed);
    const Topology sq = square_graph(g);
    if (!chordality_and_peo(sq).is_chordal) continue;
    ++found;
    const Configuration x = greedy_peo_schedule(g);
    if (is_collision_free(g, x).collision_free) ++greedy_ok;

    const auto adj = testutil::adjacency(sq);
    bool levels = true;
    for (StationId r = 0; r < g.size(); ++r)
      levels = levels && x[r].length == ceil_log2(testutil::brute_max_clique_containing(adj, r));
    if (levels) ++levels_ok;

    if (n <= 10) {
      ++small;
      try {
        const auto e = exhaustive_schedule(g, resolution_chordal(g));
        if (e && is_collision_free(g, *e).collision_free) ++exhaustive_ok;
      } catch (const BudgetExceeded&) {
      }
    }
  }
  const std::string detail = "greedy " + ratio(greedy_ok, found) + ", clique levels " + ratio(levels_ok, found) +
                             ", exhaustive " + ratio(exhaustive_ok, small);
  return {found == kGraphs && greedy_ok == found && levels_ok == found && exhaustive_ok == small, detail};
}

// --- 8 ---------------------------------------------------------------------

Outcome multicast_equivalence() {
  constexpr std::size_t kInstances = 50;
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    const Topology g = testutil::random_disk_graph(8 + seed % 8, 3.0, seed);
    const auto plan = MulticastPlan::broadcast(g);
    const auto a = bounds_multicast(g, plan).upper;
    ProtocolParams p;
    p.max_cycles = 300;
    p.stop_when_collision_free = false;
    World bc(g, a, p, seed);
    World mc(g, plan, a, p, seed);
    bool same = bc.configuration().same_states(mc.configuration());
    for (std::size_t t = 0; same && t < p.max_cycles; ++t) {
      bc.step();
      mc.step();
      same = bc.configuration().same_states(mc.configuration());
    }
    if (same) ++ok;
  }
  return {ok == kInstances, ratio(ok, kInstances) + " identical trajectories over 300 cycles"};
}

// --- 9 ---------------------------------------------------------------------

Outcome exchange_reconstruction() {
  constexpr std::size_t kPlans = 100;
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < kPlans; ++seed) {
    const Topology g = testutil::random_disk_graph(3 + seed % 8, 2.5, seed);
    const LinkGraph lg(g);
    const auto plan = MulticastPlan::random(g, 0.2 + 0.3 * (seed % 3), seed);
    const auto x = testutil::random_configuration(g.size(), 4, seed);
    const auto bundles = exchange_bundles(g, plan, x);
    bool good = true;
    for (StationId r = 0; r < g.size(); ++r) {
      const auto views = reconstruct_link_views(g, lg, plan, bundles, r);
      good = good && views.size() == voting_links(lg, plan, r).size();
      for (const auto& [a, info] : views) good = good && info == link_neighborhood_truth(lg, plan, x, a);
      std::size_t bits = 2 * x[r].length;
      for (StationId q : g.one_hop(r)) bits += x[q].length;
      good = good && exchange_bit_cost(g, x, r) == bits;
    }
    if (good) ++ok;
  }
  return {ok == kPlans, ratio(ok, kPlans) + " plans reconstructed with the expected bit cost"};
}

// --- 10 --------------------------------------------------------------------

Outcome bound_ordering() {
  constexpr std::size_t kInstances = 200;
  const unsigned channels[] = {1, 2, 4};
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    const Topology g = testutil::random_disk_graph(6 + seed % 15, 3.0, seed);
    const unsigned K = channels[seed % 3];
    const bool multicast = (seed / 3) % 2 == 1;
    const auto plan = multicast ? MulticastPlan::random(g, 0.5, seed) : MulticastPlan::broadcast(g);
    const auto b = multicast ? bounds_multichannel(g, plan, K) : bounds_multichannel(g, K);
    bool good = true;
    for (StationId r = 0; r < g.size(); ++r) good = good && b.lower[r] <= b.upper[r];
    const auto rho = throughput_bounds(g, b.lower, b.upper, multicast ? &plan : nullptr);
    good = good && rho.rho_min <= rho.rho_max;
    if (good) ++ok;
  }
  return {ok == kInstances, ratio(ok, kInstances) + " instances ordered"};
}

// --- smoke -----------------------------------------------------------------

// Median time at which the final configuration first appeared, over a gamma
// grid. Larger gamma freezes the states sooner.
Outcome gamma_monotonicity() {
  constexpr std::size_t kSeeds = 20;
  const double gammas[] = {1.0, 1.005, 1.01, 1.02, 1.05};
  std::ostringstream detail;
  bool all = true;
  for (double lambda : {3.0, 5.0}) {
    detail << "lambda=" << lambda << ':';
    double prev = INFINITY;
    for (double gamma : gammas) {
      std::vector<double> t;
      for (std::uint64_t s = 0; s < kSeeds; ++s) {
        const Topology g = generate_poisson_unit_disk(1, 20, lambda, 1, 9000 + s);
        ProtocolParams p;
        p.epsilon = 0.0;
        p.gamma = gamma;
        World w(g, resolution_1d(g), p, s);
        t.push_back(static_cast<double>(convergence_stats(run(w)).time));
      }
      const double m = median(t);
      all = all && m <= prev;
      prev = m;
      detail << ' ' << m;
    }
    detail << "; ";
  }
  return {all, "median convergence time over gamma 1..1.05: " + detail.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"criterion 1: collision-free configurations are absorbing", absorption},
      {"criterion 2: one-dimensional runs converge within 2000 cycles", one_dimensional_convergence},
      {"criterion 3: pentagon needs refinement beyond the lower bound", pentagon_counterexample},
      {"criterion 4: lattice deadlocks at eps=0 and escapes with eps>0", lattice_deadlock},
      {"criterion 5: receiver and transmitter throughput sums agree", throughput_identity},
      {"criterion 6: improvement over slotted ALOHA within band", aloha_band},
      {"criterion 7: elimination-order greedy on chordal squares", chordal_scheduling},
      {"criterion 8: multicast with D_r = V_r matches broadcast", multicast_equivalence},
      {"criterion 9: multicast exchange reconstruction and bit cost", exchange_reconstruction},
      {"criterion 10: resolution and throughput bounds are ordered", bound_ordering},
      {"smoke: larger gamma shortens convergence time", gamma_monotonicity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s %s (%s)\n", o.passed ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu failed\n", failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
