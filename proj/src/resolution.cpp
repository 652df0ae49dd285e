#include "mrmac/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mrmac/chordal.hpp"
#include "mrmac/errors.hpp"
#include "mrmac/schedule_state.hpp"

namespace mrmac {
namespace {

// Smallest l with 2^l * K >= K + n, i.e. ceil(log2(1 + n/K)) without rounding.
unsigned diluted_level(std::uint64_t n, unsigned K) {
  unsigned l = 0;
  while ((std::uint64_t{K} << l) < std::uint64_t{K} + n) ++l;
  return l;
}

// max over r' in {r} + peers(r) of count[r'].
std::vector<std::size_t> neighborhood_max(const Topology& g, const std::vector<std::size_t>& count, bool two_hop) {
  std::vector<std::size_t> out(g.size());
  for (StationId r = 0; r < g.size(); ++r) {
    std::size_t m = count[r];
    for (StationId p : two_hop ? g.two_hop(r) : g.one_hop(r)) m = std::max(m, count[p]);
    out[r] = m;
  }
  return out;
}

std::vector<std::size_t> degrees(const Topology& g, bool two_hop) {
  std::vector<std::size_t> d(g.size());
  for (StationId r = 0; r < g.size(); ++r) d[r] = two_hop ? g.two_hop(r).size() : g.one_hop(r).size();
  return d;
}

ResolutionAssignment lower_rule(const Topology& g, unsigned K, ResolutionRule tag) {
  const auto m = neighborhood_max(g, degrees(g, false), false);
  std::vector<unsigned> l(g.size());
  for (StationId r = 0; r < g.size(); ++r) l[r] = diluted_level(m[r], K);
  return ResolutionAssignment(std::move(l), tag);
}

ResolutionAssignment upper_rule(const Topology& g, ResolutionRule tag) {
  const auto m = neighborhood_max(g, degrees(g, true), true);
  std::vector<unsigned> l(g.size());
  for (StationId r = 0; r < g.size(); ++r) l[r] = ceil_log2(1 + m[r]);
  return ResolutionAssignment(std::move(l), tag);
}

ResolutionAssignment multicast_lower(const Topology& g, const MulticastPlan& plan, unsigned K, ResolutionRule tag) {
  const LinkGraph lg(g);
  auto used = [&](LinkId b) {
    const auto& l = lg.link(b);
    return plan.is_receiver(l.rx, l.tx);
  };
  // |I_a|: sessions using a link in L_a + {a}.
  std::vector<std::size_t> sessions(lg.size(), 0);
  std::vector<StationId> tx;
  for (LinkId a = 0; a < lg.size(); ++a) {
    tx.clear();
    if (used(a)) tx.push_back(lg.link(a).tx);
    for (LinkId b : lg.peers(a))
      if (used(b)) tx.push_back(lg.link(b).tx);
    std::sort(tx.begin(), tx.end());
    sessions[a] = static_cast<std::size_t>(std::unique(tx.begin(), tx.end()) - tx.begin());
  }
  std::vector<unsigned> l(g.size(), 0);
  for (StationId r = 0; r < g.size(); ++r) {
    std::size_t m = 0;
    for (LinkId a : lg.session_links(plan, r)) {
      m = std::max(m, sessions[a]);
      for (LinkId b : lg.peers(a)) m = std::max(m, sessions[b]);
    }
    if (m > 0) l[r] = diluted_level(m - 1, K);
  }
  return ResolutionAssignment(std::move(l), tag);
}

ResolutionAssignment multicast_upper(const Topology& g, const MulticastPlan& plan, ResolutionRule tag) {
  const auto model = InterferenceModel::multicast(g, plan);
  std::vector<unsigned> l(g.size(), 0);
  for (StationId r = 0; r < g.size(); ++r) {
    if (!model.active(r)) continue;
    std::size_t m = 1 + model.conflicts(r).size();
    for (StationId p : model.conflicts(r)) m = std::max(m, 1 + model.conflicts(p).size());
    l[r] = ceil_log2(m);
  }
  return ResolutionAssignment(std::move(l), tag);
}

}  // namespace

std::string_view to_string(ResolutionRule rule) {
  switch (rule) {
    case ResolutionRule::oneD: return "oneD";
    case ResolutionRule::lower2D: return "lower2D";
    case ResolutionRule::upper2D: return "upper2D";
    case ResolutionRule::chordalClique: return "chordalClique";
    case ResolutionRule::multicastLower: return "multicastLower";
    case ResolutionRule::multicastUpper: return "multicastUpper";
    case ResolutionRule::multichannelLower: return "multichannelLower";
    case ResolutionRule::multichannelUpper: return "multichannelUpper";
    case ResolutionRule::refined: return "refined";
  }
  return "unknown";
}

unsigned ResolutionAssignment::max_level() const {
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end());
}

unsigned ceil_log2(std::uint64_t n) {
  if (n == 0) throw PreconditionError("ceil_log2 of zero");
  unsigned l = 0;
  while ((std::uint64_t{1} << l) < n) ++l;
  return l;
}

ResolutionAssignment resolution_1d(const Topology& g) { return lower_rule(g, 1, ResolutionRule::oneD); }

ResolutionBounds bounds_2d(const Topology& g) {
  return {lower_rule(g, 1, ResolutionRule::lower2D), upper_rule(g, ResolutionRule::upper2D)};
}

ResolutionAssignment resolution_chordal(const Topology& g) {
  const Topology sq = square_graph(g);
  const auto result = chordality_and_peo(sq);
  if (!result.is_chordal) throw NotChordal(*result.witness);
  const auto sizes = max_clique_sizes(sq, *result.peo);
  std::vector<unsigned> l(g.size());
  for (StationId r = 0; r < g.size(); ++r) l[r] = ceil_log2(sizes[r]);
  return ResolutionAssignment(std::move(l), ResolutionRule::chordalClique);
}

ResolutionBounds bounds_multicast(const Topology& g, const MulticastPlan& plan) {
  if (plan.size() != g.size()) throw PreconditionError("plan size does not match topology");
  return {multicast_lower(g, plan, 1, ResolutionRule::multicastLower),
          multicast_upper(g, plan, ResolutionRule::multicastUpper)};
}

ResolutionBounds bounds_multichannel(const Topology& g, unsigned K) {
  if (K == 0) throw PreconditionError("channel count must be at least 1");
  return {lower_rule(g, K, ResolutionRule::multichannelLower), upper_rule(g, ResolutionRule::multichannelUpper)};
}

ResolutionBounds bounds_multichannel(const Topology& g, const MulticastPlan& plan, unsigned K) {
  if (K == 0) throw PreconditionError("channel count must be at least 1");
  if (plan.size() != g.size()) throw PreconditionError("plan size does not match topology");
  return {multicast_lower(g, plan, K, ResolutionRule::multichannelLower),
          multicast_upper(g, plan, ResolutionRule::multichannelUpper)};
}

double throughput_of_assignment(const Topology& g, const ResolutionAssignment& a, const MulticastPlan* plan) {
  if (a.size() != g.size()) throw PreconditionError("assignment size does not match topology");
  if (g.empty()) return 0.0;
  const unsigned top = a.max_level();
  unsigned __int128 numerator = 0;
  for (StationId r = 0; r < g.size(); ++r) {
    const std::size_t w = plan ? plan->receivers(r).size() : g.one_hop(r).size();
    numerator += static_cast<unsigned __int128>(w) << (top - a[r]);
  }
  return std::ldexp(static_cast<long double>(numerator), -static_cast<int>(top)) / static_cast<long double>(g.size());
}

ThroughputBounds throughput_bounds(const Topology& g, const ResolutionAssignment& lower,
                                   const ResolutionAssignment& upper, const MulticastPlan* plan) {
  return {throughput_of_assignment(g, upper, plan), throughput_of_assignment(g, lower, plan)};
}

void write_assignment_csv(std::ostream& out, const ResolutionAssignment& a) {
  out << "station,l,rule\n";
  for (StationId r = 0; r < a.size(); ++r) out << r << ',' << a.l[r] << ',' << to_string(a.rule[r]) << '\n';
}

}  // namespace mrmac
