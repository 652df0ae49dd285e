#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mrmac/errors.hpp"
#include "mrmac/fixtures.hpp"
#include "mrmac/resolution.hpp"
#include "test_util.hpp"

using namespace mrmac;

namespace {

unsigned log2_ceil_float(double v) { return static_cast<unsigned>(std::ceil(std::log2(v) - 1e-12)); }

Topology cycle(std::size_t n) {
  std::vector<Position> pos(n);
  std::vector<Link> links;
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = {std::cos(i * 1.0), std::sin(i * 1.0)};
    links.emplace_back(i, (i + 1) % n);
  }
  return Topology(2, pos, links);
}

}  // namespace

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2((1ull << 40) + 1) == 41);
  CHECK_THROWS(ceil_log2(0));
}

TEST_CASE("one-dimensional rule against its formula") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Topology g = generate_poisson_unit_disk(1, 10, 3, 1, seed);
    const auto a = resolution_1d(g);
    for (StationId r = 0; r < g.size(); ++r) {
      std::size_t w = 1 + g.one_hop(r).size();
      for (StationId p : g.one_hop(r)) w = std::max(w, 1 + g.one_hop(p).size());
      CHECK(a[r] == log2_ceil_float(static_cast<double>(w)));
      CHECK(a.rule[r] == ResolutionRule::oneD);
    }
  }
  CHECK(resolution_1d(Topology(1, {{0.0}}, {})).l == std::vector<unsigned>{0});
}

TEST_CASE("two-dimensional bounds") {
  const auto p = bounds_2d(pentagon());
  CHECK(p.lower.l == std::vector<unsigned>(5, 2));
  CHECK(p.upper.l == std::vector<unsigned>(5, 3));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Topology g = testutil::random_disk_graph(12, 3.0, seed);
    const auto b = bounds_2d(g);
    for (StationId r = 0; r < g.size(); ++r) {
      CHECK(b.lower[r] <= b.upper[r]);
      std::size_t w = 1 + g.two_hop(r).size();
      for (StationId q : g.two_hop(r)) w = std::max(w, 1 + g.two_hop(q).size());
      CHECK(b.upper[r] == log2_ceil_float(static_cast<double>(w)));
    }
    CHECK(b.lower.l == resolution_1d(g).l);
  }
}

TEST_CASE("clique rule") {
  CHECK(resolution_chordal(pentagon()).l == std::vector<unsigned>(5, 3));
  // A path of four: G^2 has the cliques {0,1,2} and {1,2,3}.
  const Topology p4(1, {{0}, {1}, {2}, {3}}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(resolution_chordal(p4).l == std::vector<unsigned>(4, 2));
  // The square of a 6-cycle is the octahedron, which has chordless 4-cycles.
  CHECK_THROWS_AS(resolution_chordal(cycle(6)), NotChordal);
  try {
    resolution_chordal(cycle(6));
  } catch (const NotChordal& e) {
    CHECK(e.witness().size() >= 4);
  }
  // Clique sizes lie between the two bounds' state counts.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Topology g = testutil::random_disk_graph(8, 3.0, seed);
    ResolutionAssignment c;
    try {
      c = resolution_chordal(g);
    } catch (const NotChordal&) {
      continue;
    }
    const auto b = bounds_2d(g);
    for (StationId r = 0; r < g.size(); ++r) {
      CHECK(c[r] <= b.upper[r]);
      CHECK(c[r] >= ceil_log2(1 + g.one_hop(r).size()));
    }
  }
}

TEST_CASE("multicast bounds") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Topology g = testutil::random_disk_graph(12, 3.0, seed);
    // Stations with peers reproduce the broadcast bounds under the broadcast plan.
    const auto mb = bounds_multicast(g, MulticastPlan::broadcast(g));
    const auto bb = bounds_2d(g);
    for (StationId r = 0; r < g.size(); ++r)
      if (!g.one_hop(r).empty()) {
        CHECK(mb.lower[r] == bb.lower[r]);
        CHECK(mb.upper[r] == bb.upper[r]);
      }
    for (double q : {0.2, 0.8}) {
      const auto plan = MulticastPlan::random(g, q, seed);
      const auto b = bounds_multicast(g, plan);
      for (StationId r = 0; r < g.size(); ++r) {
        CHECK(b.lower[r] <= b.upper[r]);
        if (!plan.transmits(r)) CHECK(b.upper[r] == 0);
      }
    }
  }
}

TEST_CASE("multichannel bounds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Topology g = testutil::random_disk_graph(12, 3.0, seed);
    CHECK(bounds_multichannel(g, 1).lower.l == bounds_2d(g).lower.l);
    const auto b2 = bounds_multichannel(g, 2);
    const auto b4 = bounds_multichannel(g, 4);
    for (StationId r = 0; r < g.size(); ++r) {
      CHECK(b4.lower[r] <= b2.lower[r]);
      CHECK(b2.lower[r] <= bounds_2d(g).lower[r]);
      CHECK(b2.upper[r] == bounds_2d(g).upper[r]);
      // Smallest l with K 2^l >= K + n, n the largest |V| over N[r].
      std::size_t n = g.one_hop(r).size();
      for (StationId p : g.one_hop(r)) n = std::max(n, g.one_hop(p).size());
      unsigned expect = 0;
      while ((std::uint64_t{2} << expect) < 2 + n) ++expect;
      CHECK(b2.lower[r] == expect);
    }
  }
}

TEST_CASE("throughput of an assignment") {
  // Six-cycle, uniform l = 3: every station hears two peers for 1/8 each.
  const auto a = ResolutionAssignment::uniform(6, 3, ResolutionRule::upper2D);
  CHECK(throughput_of_assignment(cycle(6), a) == doctest::Approx(2.0 / 8.0));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Topology g = testutil::random_disk_graph(10, 3.0, seed);
    const auto b = bounds_2d(g);
    const auto rho = throughput_bounds(g, b.lower, b.upper);
    CHECK(rho.rho_min <= rho.rho_max);
    double direct = 0;
    for (StationId r = 0; r < g.size(); ++r) direct += g.one_hop(r).size() * std::ldexp(1.0, -int(b.upper[r]));
    CHECK(rho.rho_min == doctest::Approx(direct / g.size()));
  }
}

TEST_CASE("assignment CSV") {
  std::ostringstream out;
  write_assignment_csv(out, ResolutionAssignment::uniform(2, 3, ResolutionRule::chordalClique));
  CHECK(out.str().rfind("station,l,rule\n", 0) == 0);
  CHECK(out.str().find("1,3,") != std::string::npos);
}
