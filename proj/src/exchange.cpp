#include "mrmac/exchange.hpp"

#include <algorithm>

#include "mrmac/errors.hpp"

namespace mrmac {
namespace {

void normalize(StateInfo& info) {
  std::sort(info.begin(), info.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  info.erase(std::unique(info.begin(), info.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
             info.end());
}

bool link_used(const LinkGraph& lg, const MulticastPlan& plan, LinkId b) {
  const auto& l = lg.link(b);
  return plan.is_receiver(l.rx, l.tx);
}

}  // namespace

std::vector<TwoHopView> exchange_states(const Topology& g, const Configuration& x) {
  if (x.size() != g.size()) throw PreconditionError("configuration size does not match topology");
  std::vector<TwoHopView> views(g.size());
  for (StationId r = 0; r < g.size(); ++r) {
    views[r].station = r;
    auto& s = views[r].states;
    s.emplace_back(r, x[r]);
    for (StationId p : g.two_hop(r)) s.emplace_back(p, x[p]);
    normalize(s);
  }
  return views;
}

std::size_t exchange_bit_cost(const Topology& g, const Configuration& x, StationId r) {
  std::size_t bits = 2 * static_cast<std::size_t>(x[r].length);
  for (StationId p : g.one_hop(r)) bits += x[p].length;
  return bits;
}

std::size_t exchange_bit_cost_total(const Topology& g, const Configuration& x) {
  std::size_t total = 0;
  for (StationId r = 0; r < g.size(); ++r) total += exchange_bit_cost(g, x, r);
  return total;
}

ExchangeBundle make_bundle(const Topology& g, const MulticastPlan& plan, const Configuration& x, StationId r) {
  ExchangeBundle b;
  b.station = r;
  b.self.emplace_back(r, x[r]);
  for (StationId p : g.one_hop(r)) {
    if (plan.is_receiver(r, p)) {
      b.common.emplace_back(p, x[p]);
      b.link_specific[p] = {};
    } else {
      b.link_specific[p] = {{p, x[p]}};
    }
  }
  return b;
}

std::vector<ExchangeBundle> exchange_bundles(const Topology& g, const MulticastPlan& plan, const Configuration& x) {
  if (x.size() != g.size() || plan.size() != g.size()) throw PreconditionError("size mismatch in exchange");
  std::vector<ExchangeBundle> out;
  out.reserve(g.size());
  for (StationId r = 0; r < g.size(); ++r) out.push_back(make_bundle(g, plan, x, r));
  return out;
}

StateInfo link_state_info(const LinkGraph& lg, const MulticastPlan& plan, const ExchangeBundle& bundle, LinkId a) {
  const auto& l = lg.link(a);
  if (l.tx != bundle.station) throw PreconditionError("bundle does not belong to the link's transmitter");
  StateInfo info = bundle.common;
  if (plan.is_receiver(l.rx, l.tx)) info.insert(info.end(), bundle.self.begin(), bundle.self.end());
  const auto it = bundle.link_specific.find(l.rx);
  if (it == bundle.link_specific.end()) throw PreconditionError("bundle has no entry for the link's receiver");
  info.insert(info.end(), it->second.begin(), it->second.end());
  normalize(info);
  return info;
}

std::vector<LinkId> voting_links(const LinkGraph& lg, const MulticastPlan& plan, StationId r) {
  std::vector<LinkId> out;
  for (LinkId a : lg.session_links(plan, r)) {
    out.push_back(a);
    out.insert(out.end(), lg.peers(a).begin(), lg.peers(a).end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<LinkId, StateInfo> reconstruct_link_views(const Topology& g, const LinkGraph& lg, const MulticastPlan& plan,
                                                   const std::vector<ExchangeBundle>& bundles, StationId r) {
  std::map<LinkId, StateInfo> out;
  for (LinkId a : voting_links(lg, plan, r)) {
    const StationId tx = lg.link(a).tx;
    if (tx != r && !g.linked(r, tx)) throw Error("voting link transmitter outside the one-hop neighborhood");
    out[a] = link_state_info(lg, plan, bundles.at(tx), a);
  }
  return out;
}

StateInfo link_neighborhood_truth(const LinkGraph& lg, const MulticastPlan& plan, const Configuration& x, LinkId a) {
  StateInfo info;
  const StationId rx = lg.link(a).rx;
  info.emplace_back(rx, x[rx]);
  auto add = [&](LinkId b) {
    if (link_used(lg, plan, b)) info.emplace_back(lg.link(b).tx, x[lg.link(b).tx]);
  };
  add(a);
  for (LinkId b : lg.peers(a)) add(b);
  normalize(info);
  return info;
}

}  // namespace mrmac
