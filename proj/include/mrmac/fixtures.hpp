#ifndef MRMAC_FIXTURES_HPP
#define MRMAC_FIXTURES_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mrmac/engine.hpp"
#include "mrmac/link_graph.hpp"
#include "mrmac/schedule_state.hpp"
#include "mrmac/topology.hpp"

namespace mrmac {

/// Five stations on a cycle. Every pair is within two hops, so G^2 = K5.
Topology pentagon();

/// 4x4 unit grid without its corners, range 1. The four inner points hold
/// one station each, the eight border points two or three collocated
/// stations. 24 stations, all at resolution 3.
struct Lattice {
  Topology g;
  /// Starting configuration: inner stations all at 000, border stations
  /// collision-free among themselves.
  Configuration start;
  std::vector<StationId> middle;
};
Lattice lattice44();

/// Six stations on a line whose one-dimensional resolutions are mixed
/// (3,3,3,3,3,2), so that a 3-bit and a 2-bit state can be prefixes of each
/// other across two hops.
Topology line6();

/// Path F-E-Tx-Rx-H with a far pair. Sessions Tx->Rx and E->F are an exposed
/// terminal pair: they conflict under broadcast but not under multicast.
struct MulticastScenario {
  Topology g;
  MulticastPlan plan;
  StationId tx = 0, rx = 1, h = 2, e = 3, f = 4;
};
MulticastScenario multicast6();

struct FixtureCheck {
  std::string description;
  bool passed = false;
  std::string detail;
};

struct FixtureReport {
  std::string name;
  std::vector<FixtureCheck> checks;
  bool passed() const;
};

std::vector<std::string> fixture_names();

/// Throws Error for an unknown name.
FixtureReport run_fixture(const std::string& name);

void print_report(std::ostream& out, const FixtureReport& report);

/// Lattice run from the starting configuration; stops early once
/// collision-free.
RunResult lattice_run(double epsilon, std::uint64_t seed, std::size_t max_cycles = 2000);

/// Pentagon run started at the lower bound with refinement up to the upper
/// bound, epsilon 0.1 and mild annealing (gamma 1.005). Without annealing
/// the states keep moving, the stability window rarely fills and many runs
/// never refine within the cap.
RunResult pentagon_refinement_run(std::uint64_t seed, std::size_t max_cycles = 2000);

}  // namespace mrmac

#endif  // MRMAC_FIXTURES_HPP
