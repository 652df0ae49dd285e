#include "mrmac/chordal.hpp"

#include <algorithm>
#include <deque>

#include "mrmac/errors.hpp"

namespace mrmac {
namespace {

std::vector<std::size_t> positions_of(std::span<const StationId> order, std::size_t n) {
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < order.size(); ++i) pos.at(order[i]) = i;
  return pos;
}

// Reverse of the maximum cardinality search visit order.
std::vector<StationId> mcs_order(const Topology& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> done(n, false);
  // Bucket queue keyed by weight; stale entries are skipped lazily.
  std::vector<std::vector<StationId>> buckets(n + 1);
  for (StationId v = n; v-- > 0;) buckets[0].push_back(v);
  std::size_t top = 0;
  std::vector<StationId> visit;
  visit.reserve(n);
  while (visit.size() < n) {
    StationId v = n;
    while (v == n) {
      while (buckets[top].empty()) --top;
      const StationId cand = buckets[top].back();
      buckets[top].pop_back();
      if (!done[cand] && weight[cand] == top) v = cand;
    }
    done[v] = true;
    visit.push_back(v);
    for (StationId u : g.one_hop(v)) {
      if (done[u]) continue;
      ++weight[u];
      buckets[weight[u]].push_back(u);
      top = std::max(top, weight[u]);
    }
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

struct Violation {
  StationId v, a, b;  // a, b: non-adjacent later neighbors of v
};

std::optional<Violation> find_violation(const Topology& g, std::span<const StationId> order) {
  const auto pos = positions_of(order, g.size());
  for (StationId v : order) {
    StationId follower = g.size();
    for (StationId u : g.one_hop(v))
      if (pos[u] > pos[v] && (follower == g.size() || pos[u] < pos[follower])) follower = u;
    if (follower == g.size()) continue;
    for (StationId u : g.one_hop(v))
      if (pos[u] > pos[v] && u != follower && !g.linked(u, follower)) return Violation{v, follower, u};
  }
  return std::nullopt;
}

// Shortest a-b path avoiding v and every other neighbor of v; closing it
// through v gives a chordless cycle.
std::optional<std::vector<StationId>> cycle_through(const Topology& g, StationId v, StationId a, StationId b) {
  const std::size_t n = g.size();
  std::vector<bool> blocked(n, false);
  blocked[v] = true;
  for (StationId u : g.one_hop(v))
    if (u != a && u != b) blocked[u] = true;
  std::vector<StationId> parent(n, n);
  std::deque<StationId> queue{a};
  parent[a] = a;
  while (!queue.empty()) {
    const StationId x = queue.front();
    queue.pop_front();
    if (x == b) break;
    for (StationId y : g.one_hop(x)) {
      if (blocked[y] || parent[y] != n) continue;
      parent[y] = x;
      queue.push_back(y);
    }
  }
  if (parent[b] == n) return std::nullopt;
  std::vector<StationId> path;
  for (StationId x = b; x != a; x = parent[x]) path.push_back(x);
  path.push_back(a);
  std::reverse(path.begin(), path.end());
  path.insert(path.begin(), v);
  return path;
}

std::vector<StationId> find_witness(const Topology& g, const Violation& hint) {
  if (auto c = cycle_through(g, hint.v, hint.a, hint.b)) return *c;
  for (StationId v = 0; v < g.size(); ++v) {
    const auto& nb = g.one_hop(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!g.linked(nb[i], nb[j]))
          if (auto c = cycle_through(g, v, nb[i], nb[j])) return *c;
  }
  throw Error("PEO check failed but no chordless cycle was found");
}

}  // namespace

bool is_perfect_elimination_ordering(const Topology& g, std::span<const StationId> order) {
  if (order.size() != g.size()) return false;
  const auto pos = positions_of(order, g.size());
  if (std::find(pos.begin(), pos.end(), g.size()) != pos.end()) return false;
  for (StationId v : order) {
    std::vector<StationId> later;
    for (StationId u : g.one_hop(v))
      if (pos[u] > pos[v]) later.push_back(u);
    for (std::size_t i = 0; i < later.size(); ++i)
      for (std::size_t j = i + 1; j < later.size(); ++j)
        if (!g.linked(later[i], later[j])) return false;
  }
  return true;
}

bool is_chordless_cycle(const Topology& g, std::span<const StationId> cycle) {
  const std::size_t k = cycle.size();
  if (k < 4) return false;
  std::vector<StationId> sorted(cycle.begin(), cycle.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
      if (g.linked(cycle[i], cycle[j]) != consecutive) return false;
    }
  }
  return true;
}

ChordalityResult chordality_and_peo(const Topology& g) {
  ChordalityResult result;
  auto order = mcs_order(g);
  if (const auto violation = find_violation(g, order)) {
    result.witness = find_witness(g, *violation);
  } else {
    result.is_chordal = true;
    result.peo = std::move(order);
  }
  return result;
}

Clique max_clique_containing(const Topology& g, std::span<const StationId> peo, StationId station) {
  if (station >= g.size()) throw PreconditionError("station out of range");
  if (!is_perfect_elimination_ordering(g, peo)) throw PreconditionError("ordering is not a perfect elimination ordering");
  const auto pos = positions_of(peo, g.size());
  Clique best;
  for (StationId v : peo) {
    if (pos[v] > pos[station]) break;
    std::vector<StationId> members{v};
    for (StationId u : g.one_hop(v))
      if (pos[u] > pos[v]) members.push_back(u);
    if (v != station && std::find(members.begin(), members.end(), station) == members.end()) continue;
    if (members.size() > best.members.size()) best.members = std::move(members);
  }
  std::sort(best.members.begin(), best.members.end());
  return best;
}

std::vector<std::size_t> max_clique_sizes(const Topology& g, std::span<const StationId> peo) {
  if (!is_perfect_elimination_ordering(g, peo)) throw PreconditionError("ordering is not a perfect elimination ordering");
  const auto pos = positions_of(peo, g.size());
  std::vector<std::size_t> best(g.size(), 0);
  for (StationId v : peo) {
    std::vector<StationId> members{v};
    for (StationId u : g.one_hop(v))
      if (pos[u] > pos[v]) members.push_back(u);
    for (StationId u : members) best[u] = std::max(best[u], members.size());
  }
  return best;
}

}  // namespace mrmac
