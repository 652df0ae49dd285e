#ifndef MRMAC_VOTING_HPP
#define MRMAC_VOTING_HPP

#include <cstddef>
#include <vector>

#include "mrmac/link_graph.hpp"
#include "mrmac/random.hpp"
#include "mrmac/schedule_state.hpp"
#include "mrmac/topology.hpp"

namespace mrmac {

/// Accumulated weight per candidate state of the deciding station. Entry
/// ω * 2^length + s holds the weight of slot s on channel ω.
struct VoteTally {
  unsigned length = 0;
  unsigned channels = 1;
  std::vector<double> weight;
  std::size_t voters = 0;

  VoteTally() = default;
  VoteTally(unsigned l, unsigned k) : length(l), channels(k), weight(static_cast<std::size_t>(k) << l, 0.0) {}

  std::size_t size() const { return weight.size(); }
  std::size_t slots() const { return std::size_t{1} << length; }
  std::size_t index(const SlotState& s) const { return s.channel * slots() + s.bits; }
  SlotState state(std::size_t i) const {
    return SlotState(i % slots(), length, static_cast<std::uint32_t>(i / slots()));
  }
  double total() const;
};

/// One voter: `id` is the station whose radio the voter stands for (its slot
/// is treated as busy on every channel), `occupants` the stations whose states
/// the voter observes, the deciding station included.
struct Voter {
  StationId id = 0;
  std::vector<StationId> occupants;
  friend bool operator==(const Voter&, const Voter&) = default;
};

/// Broadcast voters of r: every r' in V_r + {r}, observing V_r' + {r'}.
std::vector<Voter> broadcast_voters(const Topology& g, StationId r);

/// Link voters of session r: every link a' in the union of L_a + {a} over
/// a in M_r, observing the sessions that use a link of L_a' + {a'}. Voters
/// with the same transmitter and the same occupants are merged, so a broadcast
/// plan yields exactly the broadcast voters. Empty for stations without
/// receivers.
std::vector<Voter> multicast_voters(const LinkGraph& lg, const MulticastPlan& plan, StationId r);

/// Core tally. Per voter: if r's state clashes with no other occupant, weight
/// 1 on r's current state; otherwise 1/(K n) on every channel of each of the n
/// time slots (at r's resolution) that are idle on all channels or hold two
/// mutually overlapping occupants on some channel.
VoteTally tally_votes(StationId r, const Configuration& x, const std::vector<Voter>& voters, unsigned channels);

VoteTally vote_broadcast(const Topology& g, const Configuration& x, StationId r);
VoteTally vote_multicast(const Topology& g, const MulticastPlan& plan, const Configuration& x, StationId r);
VoteTally vote_multichannel(const Topology& g, const Configuration& x, StationId r, unsigned K);

/// Post-adjustment selection probabilities: when at least two entries are
/// positive every entry gets +epsilon, then p_s is proportional to
/// exp(J n_s) over the positive entries. Throws Error on an all-zero tally.
std::vector<double> sampling_probabilities(const VoteTally& tally, double epsilon, double J);

/// Draws the next state with one uniform from rng.
SlotState apply_epsilon_and_sample(const VoteTally& tally, double epsilon, double J, Rng& rng);

}  // namespace mrmac

#endif  // MRMAC_VOTING_HPP
