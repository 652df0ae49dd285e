#ifndef MRMAC_CHORDAL_HPP
#define MRMAC_CHORDAL_HPP

#include <optional>
#include <span>
#include <vector>

#include "mrmac/topology.hpp"

namespace mrmac {

struct ChordalityResult {
  bool is_chordal = false;
  /// Perfect elimination ordering (first eliminated first); set iff chordal.
  std::optional<std::vector<StationId>> peo;
  /// Chordless cycle of length >= 4; set iff not chordal.
  std::optional<std::vector<StationId>> witness;
};

/// Maximum cardinality search, then a PEO check. On failure a chordless cycle
/// is extracted through the vertex where the check failed.
ChordalityResult chordality_and_peo(const Topology& g);

/// True iff, for every vertex, its neighbors later in `order` form a clique.
bool is_perfect_elimination_ordering(const Topology& g, std::span<const StationId> order);

/// True iff `cycle` is a cycle of g with no chord and length >= 4.
bool is_chordless_cycle(const Topology& g, std::span<const StationId> cycle);

struct Clique {
  std::vector<StationId> members;  // sorted
  std::size_t size() const { return members.size(); }
};

/// Largest clique of a chordal graph that contains `station`. Every maximal
/// clique of a chordal graph is {v} plus v's later neighbors for some v in the
/// PEO, so the scan is linear in the edge count. Throws PreconditionError if
/// `peo` is not a perfect elimination ordering of g.
Clique max_clique_containing(const Topology& g, std::span<const StationId> peo, StationId station);

/// |C_r| for every station in one pass over the PEO.
std::vector<std::size_t> max_clique_sizes(const Topology& g, std::span<const StationId> peo);

}  // namespace mrmac

#endif  // MRMAC_CHORDAL_HPP
