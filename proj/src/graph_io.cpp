#include "mrmac/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "mrmac/errors.hpp"

namespace mrmac {
namespace {

bool is_skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::size_t parse_id(const std::string& token, std::size_t line, const std::string& field) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size() || v < 0) throw std::invalid_argument(token);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(line, field, "expected a non-negative integer, got '" + token + "'");
  }
}

double parse_coordinate(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "coordinate", "expected a number, got '" + token + "'");
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

Topology read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  int dim = 0;
  bool have_header = false;
  std::vector<Position> positions;
  std::vector<Link> links;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_skippable(line)) continue;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "stations" || tok[2] != "dim")
        throw ParseError(lineno, "header", "expected 'stations N dim D'");
      n = parse_id(tok[1], lineno, "stations");
      const std::size_t d = parse_id(tok[3], lineno, "dim");
      if (d != 1 && d != 2) throw ParseError(lineno, "dim", "dimension must be 1 or 2");
      dim = static_cast<int>(d);
      have_header = true;
      continue;
    }
    if (positions.size() < n) {
      const std::size_t expected = dim == 1 ? 2 : 3;
      if (tok.size() != expected && !(dim == 1 && tok.size() == 3))
        throw ParseError(lineno, "station", "expected 'id x" + std::string(dim == 2 ? " y'" : " [y]'"));
      const std::size_t id = parse_id(tok[0], lineno, "id");
      if (id != positions.size())
        throw ParseError(lineno, "id", "station ids must be listed in order 0..N-1");
      Position p;
      p.x = parse_coordinate(tok[1], lineno);
      if (tok.size() == 3) p.y = parse_coordinate(tok[2], lineno);
      positions.push_back(p);
      continue;
    }
    if (tok.size() != 3 || tok[0] != "edge") throw ParseError(lineno, "edge", "expected 'edge i j'");
    const std::size_t i = parse_id(tok[1], lineno, "edge");
    const std::size_t j = parse_id(tok[2], lineno, "edge");
    if (i >= n || j >= n) throw ParseError(lineno, "edge", "endpoint out of range");
    if (i == j) throw ParseError(lineno, "edge", "self-link");
    links.emplace_back(i, j);
  }
  if (!have_header) throw ParseError(lineno, "header", "missing 'stations N dim D' header");
  if (positions.size() != n) throw ParseError(lineno, "station", "fewer station lines than declared");
  return Topology(dim, std::move(positions), links);
}

Topology read_graph_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Topology& g) {
  out << "stations " << g.size() << " dim " << g.dimension() << '\n';
  out << std::setprecision(17);
  for (const auto& s : g.stations()) {
    out << s.id << ' ' << s.position.x;
    if (g.dimension() == 2) out << ' ' << s.position.y;
    out << '\n';
  }
  for (const auto& [i, j] : g.links()) out << "edge " << i << ' ' << j << '\n';
}

MulticastPlan read_plan(std::istream& in, const Topology& g) {
  std::vector<std::vector<StationId>> receivers(g.size());
  std::vector<bool> seen(g.size(), false);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_skippable(line)) continue;
    const auto arrow = line.find("->");
    std::istringstream head(line.substr(0, arrow == std::string::npos ? line.size() : arrow));
    std::string kw, station;
    head >> kw >> station;
    std::string rest;
    head >> rest;
    if (arrow == std::string::npos || kw != "recv" || station.empty() || !rest.empty())
      throw ParseError(lineno, "recv", "expected 'recv r -> r1,r2,...'");
    const std::size_t r = parse_id(station, lineno, "recv");
    if (r >= g.size()) throw ParseError(lineno, "recv", "station out of range");
    if (seen[r]) throw ParseError(lineno, "recv", "duplicate plan line for station " + station);
    seen[r] = true;
    std::string list = line.substr(arrow + 2);
    std::istringstream ls(list);
    for (std::string item; std::getline(ls, item, ',');) {
      const auto b = item.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      const auto e = item.find_last_not_of(" \t\r");
      const std::size_t p = parse_id(item.substr(b, e - b + 1), lineno, "receiver");
      if (p >= g.size() || !g.linked(r, p))
        throw ParseError(lineno, "receiver", "station " + std::to_string(p) + " is not a one-hop peer of " + station);
      receivers[r].push_back(p);
    }
  }
  return MulticastPlan(g, std::move(receivers));
}

MulticastPlan read_plan_file(const std::string& path, const Topology& g) {
  auto in = open_or_throw(path);
  return read_plan(in, g);
}

void write_plan(std::ostream& out, const MulticastPlan& plan) {
  for (StationId r = 0; r < plan.size(); ++r) {
    out << "recv " << r << " ->";
    const auto& d = plan.receivers(r);
    for (std::size_t i = 0; i < d.size(); ++i) out << (i == 0 ? " " : ",") << d[i];
    out << '\n';
  }
}

}  // namespace mrmac
