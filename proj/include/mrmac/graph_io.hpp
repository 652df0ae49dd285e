#ifndef MRMAC_GRAPH_IO_HPP
#define MRMAC_GRAPH_IO_HPP

#include <iosfwd>
#include <string>

#include "mrmac/link_graph.hpp"
#include "mrmac/topology.hpp"

namespace mrmac {

// Graph file:
//   stations N dim D
//   id x [y]          (N lines, ids 0..N-1 in order)
//   edge i j          (any number)
// Plan file:
//   recv r -> r1,r2,...
// Blank lines and lines starting with '#' are ignored. Parse failures throw
// ParseError with the offending line number.

Topology read_graph(std::istream& in);
Topology read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Topology& g);

/// Stations without a `recv` line get an empty receiver set.
MulticastPlan read_plan(std::istream& in, const Topology& g);
MulticastPlan read_plan_file(const std::string& path, const Topology& g);
void write_plan(std::ostream& out, const MulticastPlan& plan);

}  // namespace mrmac

#endif  // MRMAC_GRAPH_IO_HPP
