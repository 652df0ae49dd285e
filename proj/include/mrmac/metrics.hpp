#ifndef MRMAC_METRICS_HPP
#define MRMAC_METRICS_HPP

#include <cstddef>
#include <span>

#include "mrmac/engine.hpp"
#include "mrmac/link_graph.hpp"
#include "mrmac/oracle.hpp"
#include "mrmac/schedule_state.hpp"
#include "mrmac/topology.hpp"

namespace mrmac {

/// Both sides of the throughput sum as integers over 2^exponent. The
/// transmitter side weights each station's airtime by its receiver count, the
/// receiver side adds, per station, the airtime of every transmitter it is an
/// intended receiver of.
struct ExactThroughput {
  unsigned __int128 transmitter_side = 0;
  unsigned __int128 receiver_side = 0;
  unsigned exponent = 0;
  std::size_t stations = 0;

  /// transmitter_side / 2^exponent / stations; 0 for an empty network.
  double value() const;
};

/// No collision check. With a plan, D_r replaces V_r.
ExactThroughput throughput_sides(const Topology& g, const SlotSets& sets, const MulticastPlan* plan = nullptr);
ExactThroughput throughput_sides(const Topology& g, const Configuration& x, const MulticastPlan* plan = nullptr);

/// Mean fraction of the cycle a station spends receiving. Throw
/// NotCollisionFree unless the input is collision-free.
double throughput_broadcast(const Topology& g, const Configuration& x);
double throughput_broadcast(const Topology& g, const SlotSets& sets);
double throughput_multicast(const Topology& g, const MulticastPlan& plan, const Configuration& x);

struct AlohaBaseline {
  double p_opt = 0.5;
  double rho = 0.0;
};

/// rho(p) = x p (1 - p) exp(-x p) with x = 2 lambda R.
double aloha_throughput(double x, double p);
/// Closed-form maximizer p = 2 / (2 + x + sqrt(4 + x^2)) and its value.
AlohaBaseline aloha_baseline(double lambda, double R);

struct ConvergenceStats {
  std::size_t time = 0;     // cycle after which the configuration never changed
  double percentage = 0.0;  // transmitting stations without a collision, in percent
  bool collision_free = false;
};

/// A run with no transmitting stations reports 100%.
ConvergenceStats convergence_stats(const RunResult& run);

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for fewer than two values
};

/// NaN entries are skipped.
SampleSummary summarize(std::span<const double> values);
/// Median of the non-NaN entries; NaN when there are none.
double median(std::span<const double> values);

}  // namespace mrmac

#endif  // MRMAC_METRICS_HPP
