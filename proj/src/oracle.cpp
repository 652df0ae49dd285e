#include "mrmac/oracle.hpp"

#include <algorithm>

#include "mrmac/chordal.hpp"
#include "mrmac/errors.hpp"

namespace mrmac {
namespace {

bool fits(const InterferenceModel& model, const Configuration& x, const std::vector<bool>& placed, StationId r,
          const SlotState& s) {
  for (StationId j : model.conflicts(r))
    if (placed[j] && model.collides(r, s, j, x[j])) return false;
  return true;
}

// Most-constrained-first static order: repeatedly take the station with the
// most already-ordered conflicts, ties to more conflicts overall, then id.
std::vector<StationId> search_order(const InterferenceModel& model) {
  const std::size_t n = model.size();
  std::vector<StationId> order;
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> links_to_taken(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    StationId best = n;
    for (StationId r = 0; r < n; ++r) {
      if (taken[r]) continue;
      if (best == n || links_to_taken[r] > links_to_taken[best] ||
          (links_to_taken[r] == links_to_taken[best] && model.conflicts(r).size() > model.conflicts(best).size()))
        best = r;
    }
    taken[best] = true;
    order.push_back(best);
    for (StationId j : model.conflicts(best)) ++links_to_taken[j];
  }
  return order;
}

struct Search {
  const InterferenceModel& model;
  const ResolutionAssignment& levels;
  std::vector<StationId> order;
  Configuration x;
  std::vector<bool> placed;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  bool solve(std::size_t depth) {
    if (depth == order.size()) return true;
    const StationId r = order[depth];
    if (!model.active(r)) {
      placed[r] = true;
      if (solve(depth + 1)) return true;
      placed[r] = false;
      return false;
    }
    const unsigned l = levels[r];
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << l); ++s) {
      for (std::uint32_t w = 0; w < model.channels(); ++w) {
        if (++nodes > budget) throw BudgetExceeded("exhaustive search exceeded its node budget");
        const SlotState cand(s, l, w);
        if (!fits(model, x, placed, r, cand)) continue;
        x[r] = cand;
        placed[r] = true;
        if (solve(depth + 1)) return true;
        placed[r] = false;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Configuration> greedy_schedule(const InterferenceModel& model, const ResolutionAssignment& levels,
                                             std::span<const StationId> order) {
  if (levels.size() != model.size() || order.size() != model.size())
    throw PreconditionError("greedy schedule inputs differ in size");
  Configuration x(std::vector<SlotState>(model.size()));
  std::vector<bool> placed(model.size(), false);
  for (StationId r : order) {
    if (!model.active(r)) {
      placed[r] = true;
      continue;
    }
    const unsigned l = levels[r];
    bool done = false;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << l) && !done; ++s) {
      for (std::uint32_t w = 0; w < model.channels() && !done; ++w) {
        const SlotState cand(s, l, w);
        if (fits(model, x, placed, r, cand)) {
          x[r] = cand;
          done = true;
        }
      }
    }
    if (!done) return std::nullopt;
    placed[r] = true;
  }
  return x;
}

std::vector<StationId> left_to_right(const Topology& g) {
  std::vector<StationId> order(g.size());
  for (StationId r = 0; r < g.size(); ++r) order[r] = r;
  std::stable_sort(order.begin(), order.end(), [&](StationId a, StationId b) {
    const auto& pa = g.station(a).position;
    const auto& pb = g.station(b).position;
    return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
  });
  return order;
}

Configuration greedy_1d_schedule(const Topology& g, const ResolutionAssignment& levels) {
  const auto order = left_to_right(g);
  auto x = greedy_schedule(InterferenceModel::broadcast(g), levels, order);
  if (!x) throw Error("left-to-right greedy found no free state for some station");
  return *x;
}

Configuration greedy_peo_schedule(const Topology& g) {
  const Topology sq = square_graph(g);
  const auto result = chordality_and_peo(sq);
  if (!result.is_chordal) throw NotChordal(*result.witness);
  const auto sizes = max_clique_sizes(sq, *result.peo);
  std::vector<unsigned> l(g.size());
  for (StationId r = 0; r < g.size(); ++r) l[r] = ceil_log2(sizes[r]);
  std::vector<StationId> order(result.peo->rbegin(), result.peo->rend());
  auto x = greedy_schedule(InterferenceModel::broadcast(g), ResolutionAssignment(l, ResolutionRule::chordalClique),
                           order);
  if (!x) throw Error("reverse elimination order greedy found no free state for some station");
  return *x;
}

std::optional<Configuration> exhaustive_schedule(const InterferenceModel& model, const ResolutionAssignment& levels,
                                                 std::uint64_t budget) {
  if (levels.size() != model.size()) throw PreconditionError("assignment size does not match model");
  Search search{model, levels, search_order(model), Configuration(std::vector<SlotState>(model.size())),
                std::vector<bool>(model.size(), false), budget};
  if (!search.solve(0)) return std::nullopt;
  return search.x;
}

std::optional<Configuration> exhaustive_schedule(const Topology& g, const ResolutionAssignment& levels, unsigned K,
                                                 std::uint64_t budget) {
  return exhaustive_schedule(InterferenceModel::broadcast(g, K), levels, budget);
}

SlotSets reclaim_idle_slots(const Topology& g, const Configuration& x) {
  if (x.size() != g.size()) throw PreconditionError("configuration size does not match topology");
  if (!is_collision_free(g, x)) throw NotCollisionFree("idle-slot reclaiming needs a collision-free configuration");
  SlotSets sets(g.size());
  for (StationId r = 0; r < g.size(); ++r) sets[r] = {x[r]};
  for (StationId r : left_to_right(g)) {
    const std::size_t peers = g.one_hop(r).size();
    if (peers == 0) continue;
    const unsigned l = x[r].length;
    const std::uint64_t states = std::uint64_t{1} << l;
    const std::uint64_t cap = (states + peers - 1) / peers - 1;
    std::uint64_t taken = 0;
    for (std::uint64_t s = 0; s < states && taken < cap; ++s) {
      const SlotState cand(s, l);
      if (cand == x[r]) continue;
      bool free = true;
      for (StationId j : g.two_hop(r)) {
        for (const SlotState& held : sets[j]) {
          if (slots_overlap(cand, held)) {
            free = false;
            break;
          }
        }
        if (!free) break;
      }
      if (!free) continue;
      sets[r].push_back(cand);
      ++taken;
    }
  }
  return sets;
}

bool slot_sets_collision_free(const Topology& g, const SlotSets& sets) {
  if (sets.size() != g.size()) throw PreconditionError("slot sets size does not match topology");
  for (StationId i = 0; i < g.size(); ++i) {
    for (std::size_t a = 0; a < sets[i].size(); ++a)
      for (std::size_t b = a + 1; b < sets[i].size(); ++b)
        if (slots_overlap(sets[i][a], sets[i][b])) return false;
    for (StationId j : g.two_hop(i)) {
      if (j < i) continue;
      for (const auto& si : sets[i])
        for (const auto& sj : sets[j])
          if (slots_overlap(si, sj)) return false;
    }
  }
  return true;
}

}  // namespace mrmac
