#ifndef MRMAC_ORACLE_HPP
#define MRMAC_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mrmac/resolution.hpp"
#include "mrmac/schedule_state.hpp"
#include "mrmac/topology.hpp"

namespace mrmac {

/// Visits stations in `order` and gives each the numerically smallest state
/// (then lowest channel) at its level that collides with no station already
/// placed. Stations the model marks inactive keep the empty state. Returns
/// nullopt when some station finds no free state.
std::optional<Configuration> greedy_schedule(const InterferenceModel& model, const ResolutionAssignment& levels,
                                             std::span<const StationId> order);

/// Left-to-right greedy. Throws Error if a station finds no free state, which
/// cannot happen on interval graphs with one-dimensional resolutions.
Configuration greedy_1d_schedule(const Topology& g, const ResolutionAssignment& levels);

/// Greedy in reverse perfect elimination order of G^2 at clique resolutions.
/// Throws NotChordal when G^2 is not chordal.
Configuration greedy_peo_schedule(const Topology& g);

/// Stations sorted by position (x, then y, then id).
std::vector<StationId> left_to_right(const Topology& g);

/// Backtracking search for a collision-free configuration at the given levels.
/// The budget counts visited search nodes; exceeding it throws BudgetExceeded.
std::optional<Configuration> exhaustive_schedule(const InterferenceModel& model, const ResolutionAssignment& levels,
                                                 std::uint64_t budget = 10'000'000);
std::optional<Configuration> exhaustive_schedule(const Topology& g, const ResolutionAssignment& levels, unsigned K = 1,
                                                 std::uint64_t budget = 10'000'000);

/// Slots held by each station: the owned state first, reclaimed ones after.
using SlotSets = std::vector<std::vector<SlotState>>;

/// Left-to-right pass in which station r takes up to ceil(2^l_r / |V_r|) - 1
/// further slots at its own resolution, in increasing bit order, each
/// overlapping nothing held by a station of V_r^2. Stations without peers
/// take nothing. Throws NotCollisionFree if x is not collision-free.
SlotSets reclaim_idle_slots(const Topology& g, const Configuration& x);

/// Pairwise check of slot sets between stations within two hops.
bool slot_sets_collision_free(const Topology& g, const SlotSets& sets);

}  // namespace mrmac

#endif  // MRMAC_ORACLE_HPP
