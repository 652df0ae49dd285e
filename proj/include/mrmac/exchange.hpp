#ifndef MRMAC_EXCHANGE_HPP
#define MRMAC_EXCHANGE_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "mrmac/link_graph.hpp"
#include "mrmac/schedule_state.hpp"
#include "mrmac/topology.hpp"

namespace mrmac {

/// (station, state) pairs sorted by station id.
using StateInfo = std::vector<std::pair<StationId, SlotState>>;

/// What station r knows after the broadcast exchange: the states of
/// V_r^2 + {r}.
struct TwoHopView {
  StationId station = 0;
  StateInfo states;
};

std::vector<TwoHopView> exchange_states(const Topology& g, const Configuration& x);

/// Bits station r sends per cycle: its own state once per exchange step, plus
/// the states of its one-hop peers in the second step.
std::size_t exchange_bit_cost(const Topology& g, const Configuration& x, StationId r);
std::size_t exchange_bit_cost_total(const Topology& g, const Configuration& x);

/// Second-step message of station r in the multicast exchange. The common,
/// self and link-specific parts are pairwise disjoint.
struct ExchangeBundle {
  StationId station = 0;
  StateInfo common;                            // peers x with r in D_x
  StateInfo self;                              // {X_r}
  std::map<StationId, StateInfo> link_specific;  // per peer r': {X_r'} iff r not in D_r'
};

ExchangeBundle make_bundle(const Topology& g, const MulticastPlan& plan, const Configuration& x, StationId r);
std::vector<ExchangeBundle> exchange_bundles(const Topology& g, const MulticastPlan& plan, const Configuration& x);

/// State info of the one-hop link-neighborhood of link (r, r') as assembled
/// from r's own bundle.
StateInfo link_state_info(const LinkGraph& lg, const MulticastPlan& plan, const ExchangeBundle& bundle, LinkId a);

/// Links that vote on r's next state: the union of L_a + {a} over a in M_r.
std::vector<LinkId> voting_links(const LinkGraph& lg, const MulticastPlan& plan, StationId r);

/// Station r's reconstruction of the state info of every voting link, built
/// only from its own bundle and those of its one-hop peers.
std::map<LinkId, StateInfo> reconstruct_link_views(const Topology& g, const LinkGraph& lg, const MulticastPlan& plan,
                                                   const std::vector<ExchangeBundle>& bundles, StationId r);

/// Direct evaluation from the global configuration: the receiver of a plus
/// every session using a link of L_a + {a}.
StateInfo link_neighborhood_truth(const LinkGraph& lg, const MulticastPlan& plan, const Configuration& x, LinkId a);

}  // namespace mrmac

#endif  // MRMAC_EXCHANGE_HPP
