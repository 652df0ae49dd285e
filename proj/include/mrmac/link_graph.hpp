#ifndef MRMAC_LINK_GRAPH_HPP
#define MRMAC_LINK_GRAPH_HPP

#include <cstdint>
#include <vector>

#include "mrmac/topology.hpp"

namespace mrmac {

using LinkId = std::uint32_t;

struct DirectedLink {
  StationId tx = 0;
  StationId rx = 0;
  friend bool operator==(const DirectedLink&, const DirectedLink&) = default;
};

/// Per-station intended receiver sets D_r. Each set is sorted and contains
/// only one-hop peers of r.
class MulticastPlan {
 public:
  MulticastPlan() = default;
  /// Throws PreconditionError if some receiver is not a one-hop peer.
  MulticastPlan(const Topology& g, std::vector<std::vector<StationId>> receivers);

  /// D_r = V_r for every station.
  static MulticastPlan broadcast(const Topology& g);
  /// Every one-hop peer is an intended receiver independently with probability q.
  static MulticastPlan random(const Topology& g, double q, std::uint64_t seed);

  std::size_t size() const { return receivers_.size(); }
  const std::vector<StationId>& receivers(StationId r) const { return receivers_.at(r); }
  bool transmits(StationId r) const { return !receivers_.at(r).empty(); }
  bool is_receiver(StationId r, StationId of) const;

 private:
  std::vector<std::vector<StationId>> receivers_;
};

/// Auxiliary graph G^L. Vertices are the 2|A| directed links; two links are
/// one-hop link-peers iff the transmitter of one is the receiver of the other.
class LinkGraph {
 public:
  LinkGraph() = default;
  explicit LinkGraph(const Topology& g);

  std::size_t size() const { return links_.size(); }
  const DirectedLink& link(LinkId a) const { return links_.at(a); }
  LinkId id(StationId tx, StationId rx) const;

  /// Outgoing links of station r, in order of receiver id.
  std::vector<LinkId> outgoing(StationId r) const;

  /// L_a, sorted.
  const std::vector<LinkId>& peers(LinkId a) const { return peers_.at(a); }
  /// L_a^2 (one- or two-hop link-peers, a excluded), sorted. Computed on demand.
  std::vector<LinkId> two_hop_peers(LinkId a) const;
  bool are_peers(LinkId a, LinkId b) const;

  /// Edges {a, b} with a < b.
  std::vector<std::pair<LinkId, LinkId>> edges() const;

  /// M_r as link ids.
  std::vector<LinkId> session_links(const MulticastPlan& plan, StationId r) const;

 private:
  std::vector<DirectedLink> links_;
  std::vector<std::size_t> offset_;  // outgoing links of r are [offset_[r], offset_[r + 1])
  std::vector<std::vector<LinkId>> peers_;
};

LinkGraph auxiliary_link_graph(const Topology& g);

}  // namespace mrmac

#endif  // MRMAC_LINK_GRAPH_HPP
