#include <doctest.h>

#include "mrmac/chordal.hpp"
#include "mrmac/errors.hpp"
#include "mrmac/fixtures.hpp"
#include "mrmac/oracle.hpp"
#include "test_util.hpp"

using namespace mrmac;

namespace {

// Plain enumeration of every configuration at the given levels.
bool brute_force_exists(const Topology& g, const std::vector<unsigned>& l) {
  std::vector<std::uint64_t> digit(g.size(), 0);
  while (true) {
    std::vector<SlotState> s;
    for (StationId r = 0; r < g.size(); ++r) s.emplace_back(digit[r], l[r]);
    if (is_collision_free(g, Configuration(s)).collision_free) return true;
    std::size_t i = 0;
    while (i < g.size() && ++digit[i] == (std::uint64_t{1} << l[i])) digit[i++] = 0;
    if (i == g.size()) return false;
  }
}

}  // namespace

TEST_CASE("left-to-right order") {
  const Topology g(2, {{1, 0}, {0, 2}, {0, 1}, {1, 0}}, {});
  CHECK(left_to_right(g) == std::vector<StationId>{2, 1, 0, 3});
}

TEST_CASE("greedy succeeds in one dimension at the one-dimensional resolutions") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Topology g = generate_poisson_unit_disk(1, 20, 1 + seed % 6, 1, seed);
    const auto x = greedy_1d_schedule(g, resolution_1d(g));
    CHECK(is_collision_free(g, x).collision_free);
  }
  CHECK(is_collision_free(line6(), greedy_1d_schedule(line6(), resolution_1d(line6()))).collision_free);
}

TEST_CASE("elimination-order greedy on chordal squares") {
  int cases = 0;
  for (std::uint64_t seed = 0; cases < 30 && seed < 600; ++seed) {
    const Topology g = testutil::random_disk_graph(10, 3.0, seed);
    if (!chordality_and_peo(square_graph(g)).is_chordal) continue;
    ++cases;
    const auto x = greedy_peo_schedule(g);
    CHECK(is_collision_free(g, x).collision_free);
    const auto l = resolution_chordal(g);
    for (StationId r = 0; r < g.size(); ++r) CHECK(x[r].length == l[r]);
  }
  CHECK(cases >= 20);
}

TEST_CASE("exhaustive search agrees with plain enumeration") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Topology g = testutil::random_graph(6, 0.4, seed);
    for (unsigned level : {1u, 2u}) {
      const std::vector<unsigned> l(g.size(), level);
      const auto x = exhaustive_schedule(g, ResolutionAssignment(l, ResolutionRule::lower2D));
      CHECK(x.has_value() == brute_force_exists(g, l));
      if (x) CHECK(is_collision_free(g, *x).collision_free);
    }
  }
  const Topology g = pentagon();
  CHECK_FALSE(exhaustive_schedule(g, ResolutionAssignment::uniform(5, 2, ResolutionRule::lower2D)));
  CHECK(exhaustive_schedule(g, ResolutionAssignment::uniform(5, 3, ResolutionRule::upper2D)));
  CHECK_THROWS_AS(exhaustive_schedule(g, ResolutionAssignment::uniform(5, 2, ResolutionRule::lower2D), 1, 5),
                  BudgetExceeded);
}

TEST_CASE("exhaustive search with two channels") {
  // Pentagon at l=2 has no single-channel schedule. Two channels give every
  // two-hop pair room, but one-hop peers still may not share a slot.
  const auto x = exhaustive_schedule(pentagon(), ResolutionAssignment::uniform(5, 2, ResolutionRule::lower2D), 2);
  REQUIRE(x);
  CHECK(is_collision_free(InterferenceModel::broadcast(pentagon(), 2), *x).collision_free);
}

TEST_CASE("idle-slot reclaiming") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Topology g = generate_poisson_unit_disk(1, 15, 2, 1, seed);
    const auto x = greedy_1d_schedule(g, resolution_1d(g));
    const auto sets = reclaim_idle_slots(g, x);
    CHECK(slot_sets_collision_free(g, sets));
    for (StationId r = 0; r < g.size(); ++r) {
      REQUIRE_FALSE(sets[r].empty());
      CHECK(sets[r][0] == x[r]);
      const std::size_t peers = g.one_hop(r).size();
      if (peers == 0) {
        CHECK(sets[r].size() == 1);
        continue;
      }
      const std::uint64_t states = std::uint64_t{1} << x[r].length;
      CHECK(sets[r].size() - 1 <= (states + peers - 1) / peers - 1);
    }
  }
  // An isolated pair with a spare slot each: both at l=2, cap 3.
  const Topology pair(1, {{0}, {0.5}}, {{0, 1}});
  const Configuration x({SlotState(0, 2), SlotState(1, 2)});
  const auto sets = reclaim_idle_slots(pair, x);
  CHECK(sets[0].size() + sets[1].size() == 4);
  CHECK(slot_sets_collision_free(pair, sets));
  const Configuration bad({SlotState(0, 2), SlotState(0, 2)});
  CHECK_THROWS_AS(reclaim_idle_slots(pair, bad), NotCollisionFree);
}
