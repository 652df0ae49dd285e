#ifndef MRMAC_ENGINE_HPP
#define MRMAC_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mrmac/link_graph.hpp"
#include "mrmac/random.hpp"
#include "mrmac/resolution.hpp"
#include "mrmac/schedule_state.hpp"
#include "mrmac/topology.hpp"
#include "mrmac/voting.hpp"

namespace mrmac {

struct ProtocolParams {
  double epsilon = 0.1;
  double J0 = 1.0;
  double gamma = 1.0;
  std::size_t max_cycles = 2000;
  std::size_t stable_window = 10;
  unsigned K = 1;
  /// Allow persistently colliding stations to look for idle states and to
  /// double their state space up to their ceiling.
  bool refine = false;
  /// Stop as soon as the configuration is collision-free. When false the run
  /// always lasts max_cycles.
  bool stop_when_collision_free = true;

  /// Throws PreconditionError when a field is out of range.
  void validate() const;
};

struct StationRuntime {
  SlotState state;
  unsigned level = 0;
  double J = 1.0;
  std::size_t stable_count = 0;
  unsigned ceiling = 0;
};

/// Everything a synchronous run needs: topology, traffic plan, interference
/// model, precomputed voters and per-station runtime with its own RNG stream.
class World {
 public:
  /// Broadcast world (K channels per params). `ceiling` bounds refinement and
  /// defaults to the initial levels.
  World(Topology g, const ResolutionAssignment& initial, ProtocolParams params, std::uint64_t master_seed,
        std::optional<ResolutionAssignment> ceiling = std::nullopt);
  /// Multicast world. Stations without receivers stay at level 0 and never
  /// act. Multichannel multicast is rejected.
  World(Topology g, MulticastPlan plan, const ResolutionAssignment& initial, ProtocolParams params,
        std::uint64_t master_seed, std::optional<ResolutionAssignment> ceiling = std::nullopt);

  const Topology& topology() const { return g_; }
  const InterferenceModel& model() const { return model_; }
  const ProtocolParams& params() const { return params_; }
  const Configuration& configuration() const { return x_; }
  const StationRuntime& runtime(StationId r) const { return rt_.at(r); }
  const std::vector<Voter>& voters(StationId r) const { return voters_.at(r); }
  std::size_t cycle() const { return x_.cycle; }
  bool is_multicast() const { return multicast_; }
  const MulticastPlan& plan() const { return plan_; }

  /// Current levels with refined stations tagged as such.
  ResolutionAssignment levels() const;

  /// Replace the current states. Levels follow the given states; throws
  /// PreconditionError if a level exceeds its ceiling or a channel is out of
  /// range.
  void set_configuration(const Configuration& x);

  /// One cycle. Every station decides from the previous configuration only;
  /// `order` permutes the visiting order, which cannot change the outcome.
  void step(std::span<const StationId> order = {});

  bool collision_free() const { return is_collision_free(model_, x_).collision_free; }

  /// Bits exchanged so far, summed over stations and cycles.
  std::uint64_t bits_exchanged() const { return bits_exchanged_; }

 private:
  void init(const ResolutionAssignment& initial, std::optional<ResolutionAssignment> ceiling, std::uint64_t seed);
  SlotState random_state(StationId r, unsigned level);
  std::optional<SlotState> refine(StationId r, const Configuration& prev);

  Topology g_;
  MulticastPlan plan_;
  bool multicast_ = false;
  ProtocolParams params_;
  InterferenceModel model_;
  std::vector<std::vector<Voter>> voters_;
  Configuration x_;
  std::vector<StationRuntime> rt_;
  std::vector<ResolutionRule> rules_;
  std::vector<bool> refined_;
  std::vector<bool> changed_;  // stations whose state changed in the last cycle
  std::vector<Rng> rng_;
  std::uint64_t bits_exchanged_ = 0;
};

struct RunResult {
  Configuration final_configuration;
  ResolutionAssignment final_levels;
  std::size_t cycles = 0;       // steps executed
  std::size_t last_change = 0;  // cycle at which the final configuration first appeared
  bool collision_free = false;
  std::vector<bool> collided;   // per station, in the final configuration
  std::vector<bool> active;     // stations that transmit (all of them for broadcast)
  std::uint64_t bits_exchanged = 0;
};

/// Called with the world at cycle 0 and after every step.
using CycleObserver = std::function<void(const World&)>;

RunResult run(World& world, const CycleObserver& observer = {});

}  // namespace mrmac

#endif  // MRMAC_ENGINE_HPP
