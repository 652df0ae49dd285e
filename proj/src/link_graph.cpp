#include "mrmac/link_graph.hpp"

#include <algorithm>

#include "mrmac/errors.hpp"
#include "mrmac/random.hpp"

namespace mrmac {

MulticastPlan::MulticastPlan(const Topology& g, std::vector<std::vector<StationId>> receivers)
    : receivers_(std::move(receivers)) {
  if (receivers_.size() != g.size()) throw PreconditionError("plan size does not match topology");
  for (StationId r = 0; r < receivers_.size(); ++r) {
    auto& d = receivers_[r];
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    for (StationId p : d)
      if (!g.linked(r, p))
        throw PreconditionError("receiver " + std::to_string(p) + " is not a one-hop peer of " + std::to_string(r));
  }
}

MulticastPlan MulticastPlan::broadcast(const Topology& g) {
  std::vector<std::vector<StationId>> d(g.size());
  for (StationId r = 0; r < g.size(); ++r) d[r] = g.one_hop(r);
  return MulticastPlan(g, std::move(d));
}

MulticastPlan MulticastPlan::random(const Topology& g, double q, std::uint64_t seed) {
  if (q < 0.0 || q > 1.0) throw PreconditionError("membership probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::vector<StationId>> d(g.size());
  for (StationId r = 0; r < g.size(); ++r)
    for (StationId p : g.one_hop(r))
      if (uniform01(rng) < q) d[r].push_back(p);
  return MulticastPlan(g, std::move(d));
}

bool MulticastPlan::is_receiver(StationId r, StationId of) const {
  const auto& d = receivers_.at(of);
  return std::binary_search(d.begin(), d.end(), r);
}

LinkGraph::LinkGraph(const Topology& g) {
  offset_.assign(g.size() + 1, 0);
  for (StationId r = 0; r < g.size(); ++r) {
    offset_[r] = links_.size();
    for (StationId p : g.one_hop(r)) links_.push_back({r, p});
  }
  offset_[g.size()] = links_.size();

  peers_.assign(links_.size(), {});
  for (LinkId a = 0; a < links_.size(); ++a) {
    const auto [tx, rx] = links_[a];
    auto& peers = peers_[a];
    // Links leaving the receiver of a.
    for (std::size_t b = offset_[rx]; b < offset_[rx + 1]; ++b) peers.push_back(static_cast<LinkId>(b));
    // Links arriving at the transmitter of a.
    for (StationId x : g.one_hop(tx)) peers.push_back(id(x, tx));
    std::sort(peers.begin(), peers.end());
    peers.erase(std::unique(peers.begin(), peers.end()), peers.end());
  }
}

LinkId LinkGraph::id(StationId tx, StationId rx) const {
  if (tx + 1 >= offset_.size()) throw PreconditionError("no such link");
  const auto first = links_.begin() + static_cast<std::ptrdiff_t>(offset_[tx]);
  const auto last = links_.begin() + static_cast<std::ptrdiff_t>(offset_[tx + 1]);
  const auto it =
      std::lower_bound(first, last, rx, [](const DirectedLink& l, StationId v) { return l.rx < v; });
  if (it == last || it->rx != rx) throw PreconditionError("no such link");
  return static_cast<LinkId>(it - links_.begin());
}

std::vector<LinkId> LinkGraph::outgoing(StationId r) const {
  std::vector<LinkId> out;
  for (std::size_t b = offset_.at(r); b < offset_.at(r + 1); ++b) out.push_back(static_cast<LinkId>(b));
  return out;
}

std::vector<LinkId> LinkGraph::two_hop_peers(LinkId a) const {
  std::vector<LinkId> out = peers_.at(a);
  for (LinkId b : peers_[a]) out.insert(out.end(), peers_[b].begin(), peers_[b].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), a), out.end());
  return out;
}

bool LinkGraph::are_peers(LinkId a, LinkId b) const {
  const auto& p = peers_.at(a);
  return std::binary_search(p.begin(), p.end(), b);
}

std::vector<std::pair<LinkId, LinkId>> LinkGraph::edges() const {
  std::vector<std::pair<LinkId, LinkId>> out;
  for (LinkId a = 0; a < peers_.size(); ++a)
    for (LinkId b : peers_[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

std::vector<LinkId> LinkGraph::session_links(const MulticastPlan& plan, StationId r) const {
  std::vector<LinkId> out;
  for (StationId p : plan.receivers(r)) out.push_back(id(r, p));
  return out;
}

LinkGraph auxiliary_link_graph(const Topology& g) { return LinkGraph(g); }

}  // namespace mrmac
