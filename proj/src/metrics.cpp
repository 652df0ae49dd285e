#include "mrmac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mrmac/errors.hpp"

namespace mrmac {

double ExactThroughput::value() const {
  if (stations == 0) return 0.0;
  return static_cast<double>(std::ldexp(static_cast<long double>(transmitter_side), -static_cast<int>(exponent)) /
                             static_cast<long double>(stations));
}

ExactThroughput throughput_sides(const Topology& g, const SlotSets& sets, const MulticastPlan* plan) {
  if (sets.size() != g.size()) throw PreconditionError("slot sets size does not match topology");
  if (plan && plan->size() != g.size()) throw PreconditionError("plan size does not match topology");
  ExactThroughput t;
  t.stations = g.size();
  for (const auto& held : sets)
    for (const auto& s : held) t.exponent = std::max(t.exponent, s.length);
  std::vector<unsigned __int128> airtime(g.size(), 0);
  for (StationId r = 0; r < g.size(); ++r)
    for (const auto& s : sets[r]) airtime[r] += static_cast<unsigned __int128>(1) << (t.exponent - s.length);

  auto receivers = [&](StationId r) -> const std::vector<StationId>& {
    return plan ? plan->receivers(r) : g.one_hop(r);
  };
  for (StationId r = 0; r < g.size(); ++r) t.transmitter_side += airtime[r] * receivers(r).size();
  for (StationId y = 0; y < g.size(); ++y)
    for (StationId x : g.one_hop(y))
      if (!plan || plan->is_receiver(y, x)) t.receiver_side += airtime[x];
  return t;
}

ExactThroughput throughput_sides(const Topology& g, const Configuration& x, const MulticastPlan* plan) {
  SlotSets sets(x.size());
  for (StationId r = 0; r < x.size(); ++r) sets[r] = {x[r]};
  return throughput_sides(g, sets, plan);
}

double throughput_broadcast(const Topology& g, const Configuration& x) {
  if (!is_collision_free(g, x)) throw NotCollisionFree("throughput requires a collision-free configuration");
  return throughput_sides(g, x).value();
}

double throughput_broadcast(const Topology& g, const SlotSets& sets) {
  if (!slot_sets_collision_free(g, sets)) throw NotCollisionFree("throughput requires collision-free slot sets");
  return throughput_sides(g, sets).value();
}

double throughput_multicast(const Topology& g, const MulticastPlan& plan, const Configuration& x) {
  if (!is_collision_free(InterferenceModel::multicast(g, plan), x))
    throw NotCollisionFree("throughput requires a collision-free configuration");
  // Silent stations contribute nothing whatever their nominal state.
  return throughput_sides(g, x, &plan).value();
}

double aloha_throughput(double x, double p) { return x * p * (1.0 - p) * std::exp(-x * p); }

AlohaBaseline aloha_baseline(double lambda, double R) {
  if (!(lambda >= 0.0)) throw PreconditionError("lambda must be >= 0");
  if (!(R > 0.0)) throw PreconditionError("range must be positive");
  const double x = lambda * 2.0 * R;
  AlohaBaseline b;
  b.p_opt = 2.0 / (2.0 + x + std::sqrt(4.0 + x * x));
  b.rho = aloha_throughput(x, b.p_opt);
  return b;
}

ConvergenceStats convergence_stats(const RunResult& run) {
  ConvergenceStats s;
  s.time = run.last_change;
  s.collision_free = run.collision_free;
  std::size_t active = 0, ok = 0;
  for (std::size_t r = 0; r < run.collided.size(); ++r) {
    const bool acts = run.active.empty() || run.active[r];
    if (!acts) continue;
    ++active;
    if (!run.collided[r]) ++ok;
  }
  s.percentage = active == 0 ? 100.0 : 100.0 * static_cast<double>(ok) / static_cast<double>(active);
  return s;
}

SampleSummary summarize(std::span<const double> values) {
  SampleSummary s;
  double sum = 0.0;
  for (double v : values)
    if (!std::isnan(v)) {
      sum += v;
      ++s.count;
    }
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count < 2) return s;
  double sq = 0.0;
  for (double v : values)
    if (!std::isnan(v)) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(s.count - 1));
  return s;
}

double median(std::span<const double> values) {
  std::vector<double> v;
  for (double x : values)
    if (!std::isnan(x)) v.push_back(x);
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace mrmac
