#include "mrmac/topology.hpp"

#include <algorithm>
#include <cmath>

#include "mrmac/errors.hpp"
#include "mrmac/random.hpp"

namespace mrmac {

Topology::Topology(int dimension, std::vector<Position> positions, const std::vector<Link>& links)
    : dimension_(dimension) {
  if (dimension != 1 && dimension != 2) throw PreconditionError("dimension must be 1 or 2");
  const std::size_t n = positions.size();
  stations_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Position& p = positions[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw PreconditionError("non-finite station position");
    stations_.push_back(Station{i, p});
  }

  one_hop_.assign(n, {});
  for (const auto& [i, j] : links) {
    if (i >= n || j >= n) throw PreconditionError("link endpoint out of range");
    if (i == j) throw PreconditionError("self-link on station " + std::to_string(i));
    one_hop_[i].push_back(j);
    one_hop_[j].push_back(i);
  }
  for (auto& peers : one_hop_) {
    std::sort(peers.begin(), peers.end());
    peers.erase(std::unique(peers.begin(), peers.end()), peers.end());
    link_count_ += peers.size();
  }
  link_count_ /= 2;

  two_hop_.assign(n, {});
  for (StationId r = 0; r < n; ++r) {
    auto& reach = two_hop_[r];
    for (StationId p : one_hop_[r]) {
      reach.push_back(p);
      reach.insert(reach.end(), one_hop_[p].begin(), one_hop_[p].end());
    }
    std::sort(reach.begin(), reach.end());
    reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
    reach.erase(std::remove(reach.begin(), reach.end(), r), reach.end());
  }
}

Topology Topology::unit_disk(int dimension, std::vector<Position> positions, double range) {
  std::vector<Link> links;
  const double r2 = range * range;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const double dx = positions[i].x - positions[j].x;
      const double dy = dimension == 1 ? 0.0 : positions[i].y - positions[j].y;
      if (dx * dx + dy * dy <= r2) links.emplace_back(i, j);
    }
  }
  return Topology(dimension, std::move(positions), links);
}

bool Topology::linked(StationId i, StationId j) const {
  const auto& peers = one_hop_.at(i);
  return std::binary_search(peers.begin(), peers.end(), j);
}

bool Topology::within_two_hops(StationId i, StationId j) const {
  const auto& reach = two_hop_.at(i);
  return std::binary_search(reach.begin(), reach.end(), j);
}

std::vector<Link> Topology::links() const {
  std::vector<Link> out;
  out.reserve(link_count_);
  for (StationId i = 0; i < size(); ++i)
    for (StationId j : one_hop_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

bool Topology::has_interval_property() const {
  if (dimension_ != 1) return true;
  for (StationId i = 0; i < size(); ++i) {
    for (StationId j : one_hop_[i]) {
      if (j < i) continue;
      const double lo = std::min(stations_[i].position.x, stations_[j].position.x);
      const double hi = std::max(stations_[i].position.x, stations_[j].position.x);
      for (StationId k = 0; k < size(); ++k) {
        if (k == i || k == j) continue;
        const double x = stations_[k].position.x;
        if (x > lo && x < hi && (!linked(k, i) || !linked(k, j))) return false;
      }
    }
  }
  return true;
}

std::size_t poisson_inverse_cdf(double mean, double u) {
  if (mean <= 0.0) return 0;
  // Log-space pmf recursion so that exp(-mean) underflow does not stall the sum.
  double log_pmf = -mean;
  double cdf = std::exp(log_pmf);
  std::size_t k = 0;
  const auto cap = static_cast<std::size_t>(mean + 40.0 * std::sqrt(mean) + 100.0);
  while (cdf <= u && k < cap) {
    ++k;
    log_pmf += std::log(mean / static_cast<double>(k));
    cdf += std::exp(log_pmf);
  }
  return k;
}

Topology generate_poisson_unit_disk(int dimension, double extent, double intensity, double range,
                                    std::uint64_t seed) {
  if (!(intensity > 0.0) || !(range > 0.0) || !(extent > 0.0))
    throw PreconditionError("intensity, range and extent must be positive");
  if (dimension != 1 && dimension != 2) throw PreconditionError("dimension must be 1 or 2");
  Rng rng(seed);
  const double measure = dimension == 1 ? extent : extent * extent;
  const std::size_t count = poisson_inverse_cdf(intensity * measure, uniform01(rng));
  std::vector<Position> positions(count);
  for (auto& p : positions) {
    p.x = extent * uniform01(rng);
    if (dimension == 2) p.y = extent * uniform01(rng);
  }
  // Index stations left to right (then bottom to top) so ids follow geometry.
  std::sort(positions.begin(), positions.end(),
            [](const Position& a, const Position& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  return Topology::unit_disk(dimension, std::move(positions), range);
}

Topology square_graph(const Topology& g) {
  std::vector<Position> positions;
  positions.reserve(g.size());
  for (const auto& s : g.stations()) positions.push_back(s.position);
  std::vector<Link> links;
  for (StationId i = 0; i < g.size(); ++i)
    for (StationId j : g.two_hop(i))
      if (i < j) links.emplace_back(i, j);
  return Topology(g.dimension(), std::move(positions), links);
}

}  // namespace mrmac
