#ifndef MRMAC_SCHEDULE_STATE_HPP
#define MRMAC_SCHEDULE_STATE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mrmac/link_graph.hpp"
#include "mrmac/topology.hpp"

namespace mrmac {

/// One slot of the cycle at resolution `length`: the cycle is cut into
/// 2^length equal slots and `bits` indexes one of them, most significant bit
/// first. Length 0 is the whole cycle. Single-channel runs keep channel 0.
struct SlotState {
  static constexpr unsigned kMaxLength = 48;

  std::uint64_t bits = 0;
  unsigned length = 0;
  std::uint32_t channel = 0;

  SlotState() = default;
  /// Throws PreconditionError unless length <= kMaxLength and bits < 2^length.
  SlotState(std::uint64_t bits, unsigned length, std::uint32_t channel = 0);

  /// Binary string of `length` characters; empty for length 0.
  std::string to_string() const;
  /// Inverse of to_string.
  static SlotState parse(const std::string& binary, std::uint32_t channel = 0);

  /// Half-open interval of the cycle covered by this slot, on a grid of
  /// 2^kMaxLength ticks.
  std::uint64_t start_tick() const { return bits << (kMaxLength - length); }
  std::uint64_t end_tick() const { return (bits + 1) << (kMaxLength - length); }

  friend bool operator==(const SlotState&, const SlotState&) = default;
};

/// Time overlap only: the shorter string is a prefix of the longer one.
/// Channels are ignored here.
bool slots_overlap(const SlotState& a, const SlotState& b);

struct Configuration {
  std::size_t cycle = 0;
  std::vector<SlotState> states;

  Configuration() = default;
  explicit Configuration(std::vector<SlotState> s, std::size_t t = 0) : cycle(t), states(std::move(s)) {}

  std::size_t size() const { return states.size(); }
  const SlotState& operator[](StationId r) const { return states[r]; }
  SlotState& operator[](StationId r) { return states[r]; }

  /// Compares states only, not the cycle index.
  bool same_states(const Configuration& other) const { return states == other.states; }
};

/// Which station pairs can interfere, and how.
///
/// Broadcast: conflicts(r) = V_r^2. Multicast: conflicts(r) holds the active
/// sessions r' != r having a link within two link-hops of some link of r;
/// inactive stations (no receivers) never collide. A pair collides when it
/// conflicts, the slots overlap in time, and either the channels match or the
/// two stations are one-hop peers (a transmitting station cannot listen on any
/// channel during its own slot).
class InterferenceModel {
 public:
  InterferenceModel() = default;

  static InterferenceModel broadcast(const Topology& g, unsigned channels = 1);
  static InterferenceModel multicast(const Topology& g, const MulticastPlan& plan);

  std::size_t size() const { return conflicts_.size(); }
  unsigned channels() const { return channels_; }
  bool is_multicast() const { return multicast_; }
  bool active(StationId r) const { return active_.at(r); }
  const std::vector<StationId>& conflicts(StationId r) const { return conflicts_.at(r); }
  bool conflicting(StationId i, StationId j) const;

  bool collides(StationId i, const SlotState& si, StationId j, const SlotState& sj) const;
  bool collides(const Configuration& x, StationId i, StationId j) const { return collides(i, x[i], j, x[j]); }
  /// True iff r collides with some station in x.
  bool station_collides(const Configuration& x, StationId r) const;

 private:
  unsigned channels_ = 1;
  bool multicast_ = false;
  std::vector<bool> active_;
  std::vector<std::vector<StationId>> conflicts_;
  std::vector<std::vector<StationId>> one_hop_;
};

/// Single-channel broadcast collision: j in V_i^2 and the slots overlap.
/// Throws PreconditionError if i == j.
bool collides(const Topology& g, const Configuration& x, StationId i, StationId j);

struct CollisionReport {
  bool collision_free = true;
  std::vector<std::pair<StationId, StationId>> pairs;  // i < j
  explicit operator bool() const { return collision_free; }
};

CollisionReport is_collision_free(const InterferenceModel& model, const Configuration& x);
CollisionReport is_collision_free(const Topology& g, const Configuration& x);

/// Per-station collided flags under the model.
std::vector<bool> colliding_stations(const InterferenceModel& model, const Configuration& x);

/// CSV `station,channel,length,bits` with a header row.
void write_configuration_csv(std::ostream& out, const Configuration& x);
Configuration read_configuration_csv(std::istream& in);

}  // namespace mrmac

#endif  // MRMAC_SCHEDULE_STATE_HPP
