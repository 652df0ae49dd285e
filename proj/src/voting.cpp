#include "mrmac/voting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mrmac/errors.hpp"

namespace mrmac {
namespace {

constexpr std::uint32_t kAllChannels = UINT32_MAX;

struct Piece {
  std::uint64_t slot;
  std::uint64_t start;
  std::uint64_t end;
  std::uint32_t channel;  // kAllChannels for the voter's own radio
};

bool on_channel(const Piece& p, std::uint32_t w) { return p.channel == kAllChannels || p.channel == w; }

// Pieces [first, last) share one slot and are sorted by start.
bool has_overlapping_pair(const std::vector<Piece>& pieces, std::size_t first, std::size_t last, unsigned channels) {
  for (std::uint32_t w = 0; w < channels; ++w) {
    bool seen = false;
    std::uint64_t reach = 0;
    for (std::size_t i = first; i < last; ++i) {
      if (!on_channel(pieces[i], w)) continue;
      if (seen && pieces[i].start < reach) return true;
      reach = seen ? std::max(reach, pieces[i].end) : pieces[i].end;
      seen = true;
    }
  }
  return false;
}

void cast_vote(VoteTally& tally, StationId r, const Configuration& x, const Voter& v, std::vector<Piece>& pieces) {
  const SlotState& own = x[r];
  bool clash = false;
  for (StationId o : v.occupants) {
    if (o == r || !slots_overlap(own, x[o])) continue;
    if (x[o].channel == own.channel || o == v.id || r == v.id) {
      clash = true;
      break;
    }
  }
  if (!clash) {
    tally.weight[tally.index(own)] += 1.0;
    return;
  }

  const unsigned l = own.length;
  pieces.clear();
  for (StationId o : v.occupants) {
    const SlotState& s = x[o];
    const std::uint32_t ch = o == v.id ? kAllChannels : s.channel;
    if (s.length >= l) {
      pieces.push_back({s.bits >> (s.length - l), s.start_tick(), s.end_tick(), ch});
    } else {
      const std::uint64_t lo = s.bits << (l - s.length);
      const std::uint64_t hi = (s.bits + 1) << (l - s.length);
      for (std::uint64_t slot = lo; slot < hi; ++slot) pieces.push_back({slot, s.start_tick(), s.end_tick(), ch});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.slot != b.slot ? a.slot < b.slot : a.start < b.start;
  });

  std::vector<std::uint64_t> chosen;
  std::size_t i = 0;
  for (std::uint64_t slot = 0; slot < tally.slots(); ++slot) {
    const std::size_t first = i;
    while (i < pieces.size() && pieces[i].slot == slot) ++i;
    if (first == i || has_overlapping_pair(pieces, first, i, tally.channels)) chosen.push_back(slot);
  }
  // r's own slot always qualifies when it clashes; guard anyway.
  if (chosen.empty()) throw Error("vote found a clash but no idle or colliding slot");
  const double share = 1.0 / (static_cast<double>(tally.channels) * static_cast<double>(chosen.size()));
  for (std::uint32_t w = 0; w < tally.channels; ++w)
    for (std::uint64_t slot : chosen) tally.weight[w * tally.slots() + slot] += share;
}

}  // namespace

double VoteTally::total() const { return std::accumulate(weight.begin(), weight.end(), 0.0); }

std::vector<Voter> broadcast_voters(const Topology& g, StationId r) {
  std::vector<StationId> ids = g.one_hop(r);
  ids.insert(std::lower_bound(ids.begin(), ids.end(), r), r);
  std::vector<Voter> voters;
  voters.reserve(ids.size());
  for (StationId v : ids) {
    Voter voter{v, g.one_hop(v)};
    voter.occupants.insert(std::lower_bound(voter.occupants.begin(), voter.occupants.end(), v), v);
    voters.push_back(std::move(voter));
  }
  return voters;
}

std::vector<Voter> multicast_voters(const LinkGraph& lg, const MulticastPlan& plan, StationId r) {
  std::vector<Voter> voters;
  if (!plan.transmits(r)) return voters;
  std::vector<LinkId> links;
  for (LinkId a : lg.session_links(plan, r)) {
    links.push_back(a);
    links.insert(links.end(), lg.peers(a).begin(), lg.peers(a).end());
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  auto used = [&](LinkId b) { return plan.is_receiver(lg.link(b).rx, lg.link(b).tx); };
  for (LinkId a : links) {
    Voter v{lg.link(a).tx, {}};
    if (used(a)) v.occupants.push_back(lg.link(a).tx);
    for (LinkId b : lg.peers(a))
      if (used(b)) v.occupants.push_back(lg.link(b).tx);
    std::sort(v.occupants.begin(), v.occupants.end());
    v.occupants.erase(std::unique(v.occupants.begin(), v.occupants.end()), v.occupants.end());
    voters.push_back(std::move(v));
  }
  std::sort(voters.begin(), voters.end(), [](const Voter& a, const Voter& b) {
    return a.id != b.id ? a.id < b.id : a.occupants < b.occupants;
  });
  voters.erase(std::unique(voters.begin(), voters.end()), voters.end());
  return voters;
}

VoteTally tally_votes(StationId r, const Configuration& x, const std::vector<Voter>& voters, unsigned channels) {
  if (channels == 0) throw PreconditionError("channel count must be at least 1");
  if (x[r].channel >= channels) throw PreconditionError("state channel out of range");
  VoteTally tally(x[r].length, channels);
  tally.voters = voters.size();
  std::vector<Piece> pieces;
  for (const Voter& v : voters) cast_vote(tally, r, x, v, pieces);
  return tally;
}

VoteTally vote_broadcast(const Topology& g, const Configuration& x, StationId r) {
  return tally_votes(r, x, broadcast_voters(g, r), 1);
}

VoteTally vote_multicast(const Topology& g, const MulticastPlan& plan, const Configuration& x, StationId r) {
  const LinkGraph lg(g);
  return tally_votes(r, x, multicast_voters(lg, plan, r), 1);
}

VoteTally vote_multichannel(const Topology& g, const Configuration& x, StationId r, unsigned K) {
  return tally_votes(r, x, broadcast_voters(g, r), K);
}

std::vector<double> sampling_probabilities(const VoteTally& tally, double epsilon, double J) {
  std::vector<double> n = tally.weight;
  const auto positive = std::count_if(n.begin(), n.end(), [](double w) { return w > 0.0; });
  if (positive == 0) throw Error("vote tally has no positive entry");
  if (positive >= 2)
    for (double& w : n) w += epsilon;
  double top = -INFINITY;
  for (double w : n)
    if (w > 0.0) top = std::max(top, J * w);
  std::vector<double> p(n.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] > 0.0) {
      p[i] = std::exp(J * n[i] - top);
      sum += p[i];
    }
  }
  for (double& v : p) v /= sum;
  return p;
}

SlotState apply_epsilon_and_sample(const VoteTally& tally, double epsilon, double J, Rng& rng) {
  const auto p = sampling_probabilities(tally, epsilon, J);
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last = i;
    if (u < acc) return tally.state(i);
  }
  return tally.state(last);
}

}  // namespace mrmac
