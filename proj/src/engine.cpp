#include "mrmac/engine.hpp"

#include <algorithm>
#include <cmath>

#include "mrmac/errors.hpp"
#include "mrmac/exchange.hpp"

namespace mrmac {

void ProtocolParams::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw PreconditionError("epsilon must be finite and >= 0");
  if (!(J0 > 0.0) || !std::isfinite(J0)) throw PreconditionError("J0 must be positive");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw PreconditionError("gamma must be >= 1");
  if (stable_window < 1) throw PreconditionError("stable_window must be >= 1");
  if (K < 1) throw PreconditionError("K must be >= 1");
}

World::World(Topology g, const ResolutionAssignment& initial, ProtocolParams params, std::uint64_t master_seed,
             std::optional<ResolutionAssignment> ceiling)
    : g_(std::move(g)), params_(params) {
  params_.validate();
  model_ = InterferenceModel::broadcast(g_, params_.K);
  voters_.resize(g_.size());
  for (StationId r = 0; r < g_.size(); ++r) voters_[r] = broadcast_voters(g_, r);
  init(initial, std::move(ceiling), master_seed);
}

World::World(Topology g, MulticastPlan plan, const ResolutionAssignment& initial, ProtocolParams params,
             std::uint64_t master_seed, std::optional<ResolutionAssignment> ceiling)
    : g_(std::move(g)), plan_(std::move(plan)), multicast_(true), params_(params) {
  params_.validate();
  if (params_.K != 1) throw PreconditionError("multichannel operation is only defined for broadcast traffic");
  if (plan_.size() != g_.size()) throw PreconditionError("plan size does not match topology");
  model_ = InterferenceModel::multicast(g_, plan_);
  const LinkGraph lg(g_);
  voters_.resize(g_.size());
  for (StationId r = 0; r < g_.size(); ++r) voters_[r] = multicast_voters(lg, plan_, r);
  init(initial, std::move(ceiling), master_seed);
}

void World::init(const ResolutionAssignment& initial, std::optional<ResolutionAssignment> ceiling,
                 std::uint64_t seed) {
  const std::size_t n = g_.size();
  if (initial.size() != n) throw PreconditionError("initial assignment size does not match topology");
  if (ceiling && ceiling->size() != n) throw PreconditionError("ceiling assignment size does not match topology");
  rt_.assign(n, {});
  rules_ = initial.rule;
  refined_.assign(n, false);
  changed_.assign(n, false);
  rng_.clear();
  rng_.reserve(n);
  x_ = Configuration(std::vector<SlotState>(n));
  for (StationId r = 0; r < n; ++r) {
    rng_.push_back(make_stream(seed, r));
    auto& rt = rt_[r];
    rt.J = params_.J0;
    const bool acts = model_.active(r);
    rt.level = acts ? initial[r] : 0;
    rt.ceiling = acts ? std::max(rt.level, ceiling ? (*ceiling)[r] : rt.level) : 0;
    if (rt.level > SlotState::kMaxLength) throw PreconditionError("resolution exceeds the supported maximum");
    Rng init_rng = make_stream(seed, r, 1);
    const std::uint64_t count = std::uint64_t{params_.K} << rt.level;
    const std::uint64_t i = acts ? uniform_index(init_rng, count) : 0;
    rt.state = SlotState(i & ((std::uint64_t{1} << rt.level) - 1), rt.level,
                         static_cast<std::uint32_t>(i >> rt.level));
    x_[r] = rt.state;
  }
}

ResolutionAssignment World::levels() const {
  ResolutionAssignment a;
  for (StationId r = 0; r < rt_.size(); ++r) {
    a.l.push_back(rt_[r].level);
    a.rule.push_back(refined_[r] ? ResolutionRule::refined : rules_[r]);
  }
  return a;
}

void World::set_configuration(const Configuration& x) {
  if (x.size() != g_.size()) throw PreconditionError("configuration size does not match topology");
  for (StationId r = 0; r < x.size(); ++r) {
    if (x[r].channel >= params_.K) throw PreconditionError("channel index out of range");
    if (model_.active(r) && x[r].length > rt_[r].ceiling)
      throw PreconditionError("state length exceeds the station's ceiling");
  }
  x_ = x;
  for (StationId r = 0; r < x.size(); ++r) {
    if (!model_.active(r)) {
      x_[r] = SlotState();
    }
    rt_[r].state = x_[r];
    rt_[r].level = x_[r].length;
    rt_[r].stable_count = 0;
  }
  std::fill(changed_.begin(), changed_.end(), false);
}

SlotState World::random_state(StationId r, unsigned level) {
  const std::uint64_t i = uniform_index(rng_[r], std::uint64_t{params_.K} << level);
  return SlotState(i & ((std::uint64_t{1} << level) - 1), level, static_cast<std::uint32_t>(i >> level));
}

std::optional<SlotState> World::refine(StationId r, const Configuration& prev) {
  auto& rt = rt_[r];
  const unsigned l = rt.level;
  std::vector<SlotState> idle;
  for (std::uint32_t w = 0; w < params_.K; ++w) {
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << l); ++s) {
      const SlotState cand(s, l, w);
      bool free = true;
      for (StationId j : model_.conflicts(r)) {
        if (model_.collides(r, cand, j, prev[j])) {
          free = false;
          break;
        }
      }
      if (free) idle.push_back(cand);
    }
  }
  if (!idle.empty()) return idle[uniform_index(rng_[r], idle.size())];
  if (l < rt.ceiling) {
    rt.level = l + 1;
    rt.J = params_.J0;
    refined_[r] = true;
    return random_state(r, rt.level);
  }
  return std::nullopt;
}

void World::step(std::span<const StationId> order) {
  const std::size_t n = g_.size();
  if (!order.empty()) {
    if (order.size() != n) throw PreconditionError("update order must be a permutation of all stations");
    std::vector<bool> seen(n, false);
    for (StationId r : order) {
      if (r >= n || seen[r]) throw PreconditionError("update order must be a permutation of all stations");
      seen[r] = true;
    }
  }
  const Configuration prev = x_;
  bits_exchanged_ += exchange_bit_cost_total(g_, prev);

  std::vector<bool> local_changed(n, false);
  for (StationId r = 0; r < n; ++r) {
    bool c = changed_[r];
    for (StationId j : model_.conflicts(r)) c = c || changed_[j];
    local_changed[r] = c;
  }

  Configuration next = prev;
  next.cycle = prev.cycle + 1;
  std::vector<bool> reset(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const StationId r = order.empty() ? k : order[k];
    if (!model_.active(r)) continue;
    auto& rt = rt_[r];
    rt.stable_count = (prev.cycle > 0 && !local_changed[r]) ? rt.stable_count + 1 : 0;
    if (params_.refine && rt.stable_count >= params_.stable_window && model_.station_collides(prev, r)) {
      rt.stable_count = 0;
      const unsigned before = rt.level;
      if (const auto s = refine(r, prev)) {
        next[r] = *s;
        reset[r] = rt.level != before;
        continue;
      }
    }
    const VoteTally tally = tally_votes(r, prev, voters_[r], params_.K);
    next[r] = apply_epsilon_and_sample(tally, params_.epsilon, rt.J, rng_[r]);
  }

  for (StationId r = 0; r < n; ++r) {
    if (!reset[r]) rt_[r].J *= params_.gamma;
    rt_[r].state = next[r];
    changed_[r] = !(next[r] == prev[r]);
  }
  x_ = std::move(next);
}

RunResult run(World& world, const CycleObserver& observer) {
  if (observer) observer(world);
  RunResult result;
  result.last_change = world.cycle();
  std::size_t steps = 0;
  while (true) {
    if (world.params().stop_when_collision_free && world.collision_free()) break;
    if (steps == world.params().max_cycles) break;
    const Configuration before = world.configuration();
    world.step();
    ++steps;
    if (!world.configuration().same_states(before)) result.last_change = world.cycle();
    if (observer) observer(world);
  }
  result.cycles = steps;
  result.final_configuration = world.configuration();
  result.final_levels = world.levels();
  result.collided = colliding_stations(world.model(), world.configuration());
  for (StationId r = 0; r < world.topology().size(); ++r) result.active.push_back(world.model().active(r));
  result.collision_free = std::none_of(result.collided.begin(), result.collided.end(), [](bool b) { return b; });
  result.bits_exchanged = world.bits_exchanged();
  return result;
}

}  // namespace mrmac
