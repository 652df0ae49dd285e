#ifndef MRMAC_TOPOLOGY_HPP
#define MRMAC_TOPOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace mrmac {

using StationId = std::size_t;
using Link = std::pair<StationId, StationId>;

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct Station {
  StationId id = 0;
  Position position;
};

/// Immutable station graph. One-hop (V_r) and two-hop (V_r^2) peer sets are
/// computed at construction; both are sorted and never contain r itself.
class Topology {
 public:
  Topology() = default;

  /// Links are undirected; duplicates are merged. Throws PreconditionError on
  /// self-links, out-of-range ids, non-finite positions or a dimension other
  /// than 1 or 2.
  Topology(int dimension, std::vector<Position> positions, const std::vector<Link>& links);

  /// Unit-disk graph: i and j are linked iff their Euclidean distance is <= range.
  /// Collocated stations (distance 0) are linked.
  static Topology unit_disk(int dimension, std::vector<Position> positions, double range);

  std::size_t size() const { return stations_.size(); }
  bool empty() const { return stations_.empty(); }
  int dimension() const { return dimension_; }

  const std::vector<Station>& stations() const { return stations_; }
  const Station& station(StationId r) const { return stations_.at(r); }

  const std::vector<StationId>& one_hop(StationId r) const { return one_hop_.at(r); }
  const std::vector<StationId>& two_hop(StationId r) const { return two_hop_.at(r); }

  bool linked(StationId i, StationId j) const;
  bool within_two_hops(StationId i, StationId j) const;

  /// Undirected links as (i, j) with i < j, lexicographically sorted.
  std::vector<Link> links() const;
  std::size_t link_count() const { return link_count_; }

  /// For every link (i, j), every station positioned strictly between i and j
  /// is linked to both. Only meaningful for dimension 1; returns true for 2D.
  bool has_interval_property() const;

 private:
  int dimension_ = 1;
  std::vector<Station> stations_;
  std::vector<std::vector<StationId>> one_hop_;
  std::vector<std::vector<StationId>> two_hop_;
  std::size_t link_count_ = 0;
};

/// Poisson point process on [0, extent] (1D) or [0, extent]^2 (2D) with the
/// given intensity, linked as a unit-disk graph. The station count is drawn by
/// CDF inversion from the first engine output, positions follow. Deterministic
/// in seed.
Topology generate_poisson_unit_disk(int dimension, double extent, double intensity, double range,
                                    std::uint64_t seed);

/// Inverse Poisson CDF at u in [0, 1).
std::size_t poisson_inverse_cdf(double mean, double u);

/// G^2: same stations, linked iff one-hop or two-hop peers in g.
Topology square_graph(const Topology& g);

}  // namespace mrmac

#endif  // MRMAC_TOPOLOGY_HPP
