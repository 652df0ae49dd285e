#include "mrmac/schedule_state.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "mrmac/errors.hpp"

namespace mrmac {

SlotState::SlotState(std::uint64_t b, unsigned len, std::uint32_t ch) : bits(b), length(len), channel(ch) {
  if (len > kMaxLength) throw PreconditionError("slot length exceeds " + std::to_string(kMaxLength));
  if (b >> len != 0) throw PreconditionError("slot bits do not fit in the given length");
}

std::string SlotState::to_string() const {
  std::string s(length, '0');
  for (unsigned i = 0; i < length; ++i)
    if ((bits >> (length - 1 - i)) & 1u) s[i] = '1';
  return s;
}

SlotState SlotState::parse(const std::string& binary, std::uint32_t ch) {
  if (binary.size() > kMaxLength) throw PreconditionError("slot string too long");
  std::uint64_t b = 0;
  for (char c : binary) {
    if (c != '0' && c != '1') throw PreconditionError("slot string must contain only 0 and 1");
    b = (b << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return SlotState(b, static_cast<unsigned>(binary.size()), ch);
}

bool slots_overlap(const SlotState& a, const SlotState& b) {
  if (a.length <= b.length) return (b.bits >> (b.length - a.length)) == a.bits;
  return (a.bits >> (a.length - b.length)) == b.bits;
}

InterferenceModel InterferenceModel::broadcast(const Topology& g, unsigned channels) {
  if (channels == 0) throw PreconditionError("channel count must be at least 1");
  InterferenceModel m;
  m.channels_ = channels;
  m.active_.assign(g.size(), true);
  m.conflicts_.resize(g.size());
  m.one_hop_.resize(g.size());
  for (StationId r = 0; r < g.size(); ++r) {
    m.conflicts_[r] = g.two_hop(r);
    m.one_hop_[r] = g.one_hop(r);
  }
  return m;
}

InterferenceModel InterferenceModel::multicast(const Topology& g, const MulticastPlan& plan) {
  if (plan.size() != g.size()) throw PreconditionError("plan size does not match topology");
  const LinkGraph lg(g);
  InterferenceModel m;
  m.multicast_ = true;
  m.active_.resize(g.size());
  m.conflicts_.resize(g.size());
  m.one_hop_.resize(g.size());
  for (StationId r = 0; r < g.size(); ++r) {
    m.active_[r] = plan.transmits(r);
    m.one_hop_[r] = g.one_hop(r);
  }
  for (StationId r = 0; r < g.size(); ++r) {
    if (!m.active_[r]) continue;
    std::vector<StationId> sessions;
    for (LinkId a : lg.session_links(plan, r)) {
      for (LinkId b : lg.two_hop_peers(a)) {
        const auto& l = lg.link(b);
        if (l.tx != r && plan.is_receiver(l.rx, l.tx)) sessions.push_back(l.tx);
      }
    }
    std::sort(sessions.begin(), sessions.end());
    sessions.erase(std::unique(sessions.begin(), sessions.end()), sessions.end());
    m.conflicts_[r] = std::move(sessions);
  }
  return m;
}

bool InterferenceModel::conflicting(StationId i, StationId j) const {
  const auto& c = conflicts_.at(i);
  return std::binary_search(c.begin(), c.end(), j);
}

bool InterferenceModel::collides(StationId i, const SlotState& si, StationId j, const SlotState& sj) const {
  if (i == j || !conflicting(i, j) || !slots_overlap(si, sj)) return false;
  if (si.channel == sj.channel) return true;
  const auto& nb = one_hop_[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

bool InterferenceModel::station_collides(const Configuration& x, StationId r) const {
  for (StationId j : conflicts_.at(r))
    if (collides(r, x[r], j, x[j])) return true;
  return false;
}

bool collides(const Topology& g, const Configuration& x, StationId i, StationId j) {
  if (i == j) throw PreconditionError("collision test needs two distinct stations");
  return g.within_two_hops(i, j) && slots_overlap(x[i], x[j]);
}

CollisionReport is_collision_free(const InterferenceModel& model, const Configuration& x) {
  if (x.size() != model.size()) throw PreconditionError("configuration size does not match model");
  CollisionReport report;
  for (StationId i = 0; i < x.size(); ++i)
    for (StationId j : model.conflicts(i))
      if (i < j && model.collides(x, i, j)) report.pairs.emplace_back(i, j);
  report.collision_free = report.pairs.empty();
  return report;
}

CollisionReport is_collision_free(const Topology& g, const Configuration& x) {
  return is_collision_free(InterferenceModel::broadcast(g), x);
}

std::vector<bool> colliding_stations(const InterferenceModel& model, const Configuration& x) {
  std::vector<bool> out(x.size(), false);
  for (StationId r = 0; r < x.size(); ++r) out[r] = model.station_collides(x, r);
  return out;
}

void write_configuration_csv(std::ostream& out, const Configuration& x) {
  out << "station,channel,length,bits\n";
  for (StationId r = 0; r < x.size(); ++r)
    out << r << ',' << x[r].channel << ',' << x[r].length << ',' << x[r].to_string() << '\n';
}

Configuration read_configuration_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  Configuration x;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("station", 0) == 0) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 4) throw ParseError(lineno, "row", "expected station,channel,length,bits");
    try {
      const auto station = std::stoull(fields[0]);
      const auto channel = static_cast<std::uint32_t>(std::stoul(fields[1]));
      const auto length = std::stoul(fields[2]);
      if (station != x.size()) throw ParseError(lineno, "station", "rows must be in station order");
      const SlotState s = SlotState::parse(fields[3], channel);
      if (s.length != length) throw ParseError(lineno, "length", "length does not match bit string");
      x.states.push_back(s);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(lineno, "row", e.what());
    }
  }
  return x;
}

}  // namespace mrmac
