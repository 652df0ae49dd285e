#ifndef MRMAC_RESOLUTION_HPP
#define MRMAC_RESOLUTION_HPP

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "mrmac/link_graph.hpp"
#include "mrmac/topology.hpp"

namespace mrmac {

enum class ResolutionRule {
  oneD,
  lower2D,
  upper2D,
  chordalClique,
  multicastLower,
  multicastUpper,
  multichannelLower,
  multichannelUpper,
  refined,
};

std::string_view to_string(ResolutionRule rule);

/// Per-station resolution exponents l_r, each tagged with the rule that
/// produced it.
struct ResolutionAssignment {
  std::vector<unsigned> l;
  std::vector<ResolutionRule> rule;

  ResolutionAssignment() = default;
  ResolutionAssignment(std::vector<unsigned> levels, ResolutionRule tag)
      : l(std::move(levels)), rule(l.size(), tag) {}
  static ResolutionAssignment uniform(std::size_t n, unsigned level, ResolutionRule tag) {
    return ResolutionAssignment(std::vector<unsigned>(n, level), tag);
  }

  std::size_t size() const { return l.size(); }
  unsigned operator[](StationId r) const { return l[r]; }
  unsigned max_level() const;
};

struct ResolutionBounds {
  ResolutionAssignment lower;
  ResolutionAssignment upper;
};

/// Smallest l with 2^l >= n; n must be at least 1.
unsigned ceil_log2(std::uint64_t n);

/// l_r = ceil(log2 max over r' in V_r + {r} of (1 + |V_r'|)).
ResolutionAssignment resolution_1d(const Topology& g);

/// Lower bound as in the one-dimensional rule; upper bound with V^2 in place
/// of V in both the range of the max and the neighbor counts.
ResolutionBounds bounds_2d(const Topology& g);

/// l_r = ceil(log2 |C_r|), C_r the largest clique of G^2 containing r.
/// Throws NotChordal with a chordless cycle of G^2 when G^2 is not chordal.
ResolutionAssignment resolution_chordal(const Topology& g);

/// Session-based bounds for multicast. Stations without receivers get 0 in
/// both assignments.
ResolutionBounds bounds_multicast(const Topology& g, const MulticastPlan& plan);

/// K-channel bounds. The lower bound replaces each neighbor count n by n/K
/// before the ceiling, evaluated exactly as the smallest l with
/// 2^l * K >= K + n. The upper bound is the single-channel one.
ResolutionBounds bounds_multichannel(const Topology& g, unsigned K);
ResolutionBounds bounds_multichannel(const Topology& g, const MulticastPlan& plan, unsigned K);

/// (1/|V|) * sum over r of |V_r| * 2^-l_r, or |D_r| with a plan. No
/// collision check; the sum is accumulated exactly before the division.
double throughput_of_assignment(const Topology& g, const ResolutionAssignment& a,
                                const MulticastPlan* plan = nullptr);

struct ThroughputBounds {
  double rho_min = 0.0;
  double rho_max = 0.0;
};

/// Throughput at the upper assignment (rho_min) and the lower one (rho_max).
/// With a plan, |D_r| replaces |V_r|.
ThroughputBounds throughput_bounds(const Topology& g, const ResolutionAssignment& lower,
                                   const ResolutionAssignment& upper, const MulticastPlan* plan = nullptr);

/// CSV `station,l,rule` with a header row.
void write_assignment_csv(std::ostream& out, const ResolutionAssignment& a);

}  // namespace mrmac

#endif  // MRMAC_RESOLUTION_HPP
