#include "mrmac/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mrmac/errors.hpp"
#include "mrmac/exchange.hpp"
#include "mrmac/oracle.hpp"
#include "mrmac/resolution.hpp"
#include "mrmac/voting.hpp"

namespace mrmac {
namespace {

constexpr std::size_t kLatticeSeeds = 50;
constexpr std::size_t kPentagonSeeds = 20;

std::string join(const std::vector<unsigned>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

void check(FixtureReport& report, std::string description, bool ok, std::string detail = {}) {
  report.checks.push_back({std::move(description), ok, std::move(detail)});
}

std::set<std::pair<StationId, StationId>> endpoints(const LinkGraph& lg, const std::vector<LinkId>& ids) {
  std::set<std::pair<StationId, StationId>> out;
  for (LinkId a : ids) out.insert({lg.link(a).tx, lg.link(a).rx});
  return out;
}

FixtureReport pentagon_fixture() {
  FixtureReport report{"pentagon", {}};
  const Topology g = pentagon();
  check(report, "square graph is complete", square_graph(g).link_count() == 10);

  const auto b = bounds_2d(g);
  check(report, "lower bound is 2 everywhere", b.lower.l == std::vector<unsigned>(5, 2), join(b.lower.l));
  check(report, "upper bound is 3 everywhere", b.upper.l == std::vector<unsigned>(5, 3), join(b.upper.l));

  const auto at2 = exhaustive_schedule(g, ResolutionAssignment::uniform(5, 2, ResolutionRule::lower2D));
  check(report, "no collision-free schedule at l=2", !at2.has_value());
  const auto at3 = exhaustive_schedule(g, ResolutionAssignment::uniform(5, 3, ResolutionRule::upper2D));
  check(report, "a collision-free schedule exists at l=3", at3 && is_collision_free(g, *at3).collision_free);

  const auto clique = resolution_chordal(g);
  check(report, "clique rule gives l=3", clique.l == std::vector<unsigned>(5, 3), join(clique.l));
  check(report, "elimination-order greedy is collision-free", is_collision_free(g, greedy_peo_schedule(g)).collision_free);

  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < kPentagonSeeds; ++seed) {
    const RunResult r = pentagon_refinement_run(seed);
    if (r.collision_free && r.final_levels.max_level() == 3) ++ok;
  }
  check(report, "refinement from the lower bound ends collision-free with a station at l=3", ok == kPentagonSeeds,
        std::to_string(ok) + "/" + std::to_string(kPentagonSeeds) + " runs");
  return report;
}

FixtureReport lattice_fixture() {
  FixtureReport report{"lattice44", {}};
  const Lattice lat = lattice44();
  const auto model = InterferenceModel::broadcast(lat.g);
  const auto collided = colliding_stations(model, lat.start);
  bool border_clean = true, middle_stuck = true;
  for (StationId r = 0; r < lat.g.size(); ++r) {
    const bool is_middle = std::find(lat.middle.begin(), lat.middle.end(), r) != lat.middle.end();
    if (is_middle) middle_stuck = middle_stuck && collided[r];
    else border_clean = border_clean && !collided[r];
  }
  check(report, "start: border stations collision-free, inner stations colliding", border_clean && middle_stuck);

  // Structural side: with epsilon = 0 the inner stations only ever see votes
  // on 000, 110 and 111, which cannot host four mutually conflicting stations.
  const std::set<std::size_t> allowed{0, 6, 7};
  std::size_t stuck = 0;
  bool support_ok = true;
  for (std::uint64_t seed = 0; seed < kLatticeSeeds; ++seed) {
    ProtocolParams p;
    p.epsilon = 0.0;
    World w(lat.g, ResolutionAssignment::uniform(lat.g.size(), 3, ResolutionRule::upper2D), p, seed);
    w.set_configuration(lat.start);
    const RunResult r = run(w, [&](const World& world) {
      for (StationId m : lat.middle) {
        const auto tally = tally_votes(m, world.configuration(), world.voters(m), 1);
        for (std::size_t i = 0; i < tally.size(); ++i)
          if (tally.weight[i] > 0 && !allowed.count(i)) support_ok = false;
      }
    });
    if (!r.collision_free) ++stuck;
  }
  check(report, "epsilon=0: inner stations only receive votes on 000, 110, 111", support_ok);
  check(report, "epsilon=0: no run reaches collision-freedom", stuck == kLatticeSeeds,
        std::to_string(stuck) + "/" + std::to_string(kLatticeSeeds) + " stuck");

  std::size_t converged = 0;
  for (std::uint64_t seed = 0; seed < kLatticeSeeds; ++seed)
    if (lattice_run(0.1, seed).collision_free) ++converged;
  check(report, "epsilon=0.1: at least 45 of 50 runs converge", converged >= 45,
        std::to_string(converged) + "/" + std::to_string(kLatticeSeeds) + " converged");
  return report;
}

FixtureReport line_fixture() {
  FixtureReport report{"line6", {}};
  const Topology g = line6();
  const auto l = resolution_1d(g);
  check(report, "one-dimensional resolutions are 3,3,3,3,3,2", l.l == std::vector<unsigned>{3, 3, 3, 3, 3, 2},
        join(l.l));
  check(report, "links satisfy the interval property", g.has_interval_property());

  std::vector<SlotState> states{SlotState(0, 3), SlotState(1, 3), SlotState(2, 3),
                                SlotState(0b101, 3), SlotState(3, 3), SlotState(0b10, 2)};
  const Configuration prefix(states);
  check(report, "101 at station 3 and 10 at station 5 overlap across two hops", collides(g, prefix, 3, 5));
  states[5] = SlotState(0b11, 2);
  check(report, "101 and 11 do not overlap", !collides(g, Configuration(states), 3, 5));

  const auto x = greedy_1d_schedule(g, l);
  check(report, "left-to-right greedy is collision-free", is_collision_free(g, x).collision_free);

  std::size_t ok = 0;
  constexpr std::size_t runs = 20;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    ProtocolParams p;
    p.epsilon = 0.0;
    World w(g, l, p, seed);
    if (run(w).collision_free) ++ok;
  }
  check(report, "protocol with epsilon=0 converges from random starts", ok == runs,
        std::to_string(ok) + "/" + std::to_string(runs) + " runs");
  return report;
}

FixtureReport multicast_fixture() {
  FixtureReport report{"multicast6", {}};
  const auto sc = multicast6();
  const LinkGraph lg(sc.g);
  const LinkId a = lg.id(sc.tx, sc.rx);

  using Pairs = std::set<std::pair<StationId, StationId>>;
  const auto one = endpoints(lg, lg.peers(a));
  check(report, "one-hop link-peers of Tx->Rx are Rx->Tx, Rx->H, E->Tx",
        one == Pairs{{sc.rx, sc.tx}, {sc.rx, sc.h}, {sc.e, sc.tx}});
  const auto two_ids = lg.two_hop_peers(a);
  auto two = endpoints(lg, two_ids);
  for (const auto& p : one) two.erase(p);
  check(report, "two-hop-only link-peers are Tx->E, H->Rx, F->E",
        two == Pairs{{sc.tx, sc.e}, {sc.h, sc.rx}, {sc.f, sc.e}});
  Pairs untouched;
  for (LinkId b = 0; b < lg.size(); ++b)
    if (b != a && !std::binary_search(two_ids.begin(), two_ids.end(), b)) untouched.insert({lg.link(b).tx, lg.link(b).rx});
  check(report, "E->F and the far pair are outside the two-hop link neighborhood",
        untouched == Pairs{{sc.e, sc.f}, {5, 6}, {6, 5}});

  const auto bc = InterferenceModel::broadcast(sc.g);
  const auto mc = InterferenceModel::multicast(sc.g, sc.plan);
  check(report, "exposed terminal: Tx and E conflict under broadcast only",
        bc.conflicting(sc.tx, sc.e) && !mc.conflicting(sc.tx, sc.e));

  const auto bounds = bounds_multicast(sc.g, sc.plan);
  std::vector<SlotState> same(sc.g.size(), SlotState(0, 0));
  for (StationId r = 0; r < sc.g.size(); ++r) same[r] = SlotState(0, bounds.upper[r]);
  const Configuration shared(same);
  check(report, "Tx and E may share a slot under multicast", !mc.collides(shared, sc.tx, sc.e));

  bool exchange_ok = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = make_stream(seed, 0, 7);
    std::vector<SlotState> xs;
    for (StationId r = 0; r < sc.g.size(); ++r) {
      const unsigned level = static_cast<unsigned>(uniform_index(rng, 4));
      xs.emplace_back(uniform_index(rng, std::uint64_t{1} << level), level);
    }
    const Configuration x(xs);
    const auto bundles = exchange_bundles(sc.g, sc.plan, x);
    for (StationId r = 0; r < sc.g.size(); ++r)
      for (const auto& [link, info] : reconstruct_link_views(sc.g, lg, sc.plan, bundles, r))
        if (info != link_neighborhood_truth(lg, sc.plan, x, link)) exchange_ok = false;
  }
  check(report, "two-step exchange reconstructs every voting link's view", exchange_ok);

  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ProtocolParams p;
    p.epsilon = 0.1;
    World w(sc.g, sc.plan, bounds.upper, p, seed);
    if (run(w).collision_free) ++ok;
  }
  check(report, "multicast protocol converges at the upper bound", ok == 10, std::to_string(ok) + "/10 runs");
  return report;
}

const std::map<std::string, std::function<FixtureReport()>>& registry() {
  static const std::map<std::string, std::function<FixtureReport()>> r{
      {"pentagon", pentagon_fixture},
      {"lattice44", lattice_fixture},
      {"line6", line_fixture},
      {"multicast6", multicast_fixture},
  };
  return r;
}

}  // namespace

Topology pentagon() {
  std::vector<Position> pos;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 5; ++k) pos.push_back({std::cos(2 * pi * k / 5), std::sin(2 * pi * k / 5)});
  return Topology(2, pos, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
}

Lattice lattice44() {
  auto is_corner = [](int i, int j) { return (i == 0 || i == 3) && (j == 0 || j == 3); };
  auto is_middle = [](int i, int j) { return i >= 1 && i <= 2 && j >= 1 && j <= 2; };
  const std::set<std::pair<int, int>> pairs{{1, 0}, {0, 2}, {2, 3}, {3, 1}};

  Lattice lat;
  std::vector<Position> pos;
  std::vector<SlotState> states;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (is_corner(i, j)) continue;
      std::vector<std::uint64_t> here;
      if (is_middle(i, j)) here = {0};
      else if (pairs.count({i, j})) here = {1, 2};
      else here = {3, 4, 5};
      for (std::uint64_t s : here) {
        if (here.size() == 1) lat.middle.push_back(pos.size());
        pos.push_back({static_cast<double>(i), static_cast<double>(j)});
        states.emplace_back(s, 3);
      }
    }
  }
  lat.g = Topology::unit_disk(2, pos, 1.0);
  lat.start = Configuration(states);
  return lat;
}

Topology line6() { return Topology::unit_disk(1, {{0.0}, {0.6}, {0.9}, {1.3}, {1.85}, {2.8}}, 1.0); }

MulticastScenario multicast6() {
  MulticastScenario sc;
  sc.g = Topology::unit_disk(2, {{0, 0}, {1, 0}, {2, 0}, {-1, 0}, {-2, 0}, {5, 5}, {6, 5}}, 1.0);
  std::vector<std::vector<StationId>> d(sc.g.size());
  d[sc.tx] = {sc.rx};
  d[sc.e] = {sc.f};
  d[5] = {6};
  sc.plan = MulticastPlan(sc.g, d);
  return sc;
}

bool FixtureReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.passed; });
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

FixtureReport run_fixture(const std::string& name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw Error("unknown fixture '" + name + "'");
  return it->second();
}

void print_report(std::ostream& out, const FixtureReport& report) {
  out << "fixture " << report.name << '\n';
  for (const auto& c : report.checks) {
    out << (c.passed ? "  PASS  " : "  FAIL  ") << c.description;
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  out << (report.passed() ? "PASS" : "FAIL") << ' ' << report.name << '\n';
}

RunResult lattice_run(double epsilon, std::uint64_t seed, std::size_t max_cycles) {
  const Lattice lat = lattice44();
  ProtocolParams p;
  p.epsilon = epsilon;
  p.max_cycles = max_cycles;
  World w(lat.g, ResolutionAssignment::uniform(lat.g.size(), 3, ResolutionRule::upper2D), p, seed);
  w.set_configuration(lat.start);
  return run(w);
}

RunResult pentagon_refinement_run(std::uint64_t seed, std::size_t max_cycles) {
  const Topology g = pentagon();
  const auto b = bounds_2d(g);
  ProtocolParams p;
  p.epsilon = 0.1;
  p.gamma = 1.005;
  p.refine = true;
  p.max_cycles = max_cycles;
  World w(g, b.lower, p, seed, b.upper);
  return run(w);
}

}  // namespace mrmac
