#include <doctest.h>

#include <sstream>

#include "mrmac/errors.hpp"
#include "mrmac/fixtures.hpp"
#include "mrmac/link_graph.hpp"
#include "mrmac/schedule_state.hpp"
#include "test_util.hpp"

using namespace mrmac;

TEST_CASE("slot state strings") {
  CHECK(SlotState(0b101, 3).to_string() == "101");
  CHECK(SlotState(0b1, 3).to_string() == "001");
  CHECK(SlotState(0, 0).to_string().empty());
  CHECK(SlotState::parse("0110") == SlotState(0b0110, 4));
  CHECK(SlotState::parse("") == SlotState(0, 0));
  CHECK_THROWS(SlotState::parse("012"));
  CHECK_THROWS(SlotState(4, 2));
  for (unsigned l = 0; l <= 5; ++l)
    for (std::uint64_t b = 0; b < (1u << l); ++b) CHECK(SlotState::parse(SlotState(b, l).to_string()) == SlotState(b, l));
}

TEST_CASE("overlap is the prefix relation and matches tick intervals") {
  std::vector<SlotState> all;
  for (unsigned l = 0; l <= 4; ++l)
    for (std::uint64_t b = 0; b < (1u << l); ++b) all.emplace_back(b, l);
  for (const auto& a : all)
    for (const auto& b : all) {
      CHECK(slots_overlap(a, b) == testutil::prefix_overlap(a, b));
      const bool ticks = a.start_tick() < b.end_tick() && b.start_tick() < a.end_tick();
      CHECK(slots_overlap(a, b) == ticks);
    }
  CHECK(slots_overlap(SlotState::parse("10"), SlotState::parse("101")));
  CHECK_FALSE(slots_overlap(SlotState::parse("11"), SlotState::parse("101")));
}

TEST_CASE("broadcast collisions match the pairwise definition") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Topology g = testutil::random_graph(9, 0.25, seed);
    const auto a = testutil::adjacency(g);
    const auto x = testutil::random_configuration(g.size(), 3, seed);
    const auto report = is_collision_free(g, x);
    std::vector<std::pair<StationId, StationId>> expect;
    for (StationId i = 0; i < g.size(); ++i) {
      const auto two = testutil::within(a, i, 2);
      for (StationId j = i + 1; j < g.size(); ++j) {
        const bool near = std::find(two.begin(), two.end(), j) != two.end();
        const bool hit = near && testutil::prefix_overlap(x[i], x[j]);
        CHECK(collides(g, x, i, j) == hit);
        if (hit) expect.push_back({i, j});
      }
    }
    CHECK(report.pairs == expect);
    CHECK(report.collision_free == expect.empty());
  }
  const Topology g = pentagon();
  CHECK_THROWS_AS(collides(g, testutil::random_configuration(5, 2, 1), 2, 2), PreconditionError);
}

TEST_CASE("multichannel collisions") {
  // Path 0-1-2: 0 and 1 are one-hop peers, 0 and 2 two-hop peers.
  const Topology g(1, {{0}, {1}, {2}}, {{0, 1}, {1, 2}});
  const auto m = InterferenceModel::broadcast(g, 2);
  const SlotState a(0, 1, 0), b(0, 1, 1);
  CHECK(m.collides(0, a, 1, b));   // a transmitting peer cannot listen on any channel
  CHECK_FALSE(m.collides(0, a, 2, b));
  CHECK(m.collides(0, a, 2, SlotState(0, 1, 0)));
  CHECK_FALSE(m.collides(0, a, 2, SlotState(1, 1, 0)));
}

TEST_CASE("multicast interference model") {
  const auto sc = multicast6();
  const auto m = InterferenceModel::multicast(sc.g, sc.plan);
  CHECK(m.is_multicast());
  CHECK(m.active(sc.tx));
  CHECK_FALSE(m.active(sc.rx));
  CHECK_FALSE(m.conflicting(sc.tx, sc.e));
  CHECK(InterferenceModel::broadcast(sc.g).conflicting(sc.tx, sc.e));
  // An inactive station never collides, whatever its state.
  std::vector<SlotState> s(sc.g.size(), SlotState(0, 1));
  const Configuration x(s);
  for (StationId r = 0; r < sc.g.size(); ++r)
    if (!m.active(r)) CHECK_FALSE(m.station_collides(x, r));

  // With the broadcast plan the multicast model reproduces broadcast conflicts.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Topology g = testutil::random_graph(8, 0.3, seed);
    const auto mb = InterferenceModel::multicast(g, MulticastPlan::broadcast(g));
    const auto bb = InterferenceModel::broadcast(g);
    for (StationId r = 0; r < g.size(); ++r)
      if (!g.one_hop(r).empty()) CHECK(mb.conflicts(r) == bb.conflicts(r));
  }
}

TEST_CASE("configuration CSV round-trip") {
  const auto x = testutil::random_configuration(12, 4, 3, 3);
  std::stringstream buf;
  write_configuration_csv(buf, x);
  const auto back = read_configuration_csv(buf);
  CHECK(back.same_states(x));
  std::istringstream bad("station,channel,length,bits\n0,0,2,7\n");
  CHECK_THROWS(read_configuration_csv(bad));
}
