#ifndef ROTSET_GRAPH_IO_HPP
#define ROTSET_GRAPH_IO_HPP

#include "rotset/chain_engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace rotset {

// Binary adjacency format, all little-endian:
//
//   offset  size  field
//   0       4     magic "RSGD"
//   4       4     uint32 grid resolution N
//   8       8     float64 epsilon (IEEE 754)
//   16      8     uint64 edge count E
//   24      12*E  edges: uint32 source, uint32 target, int16 dx, int16 dy
//
// Edges appear grouped by source cell, each group sorted by target.

class GraphFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawGraphEdge {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::int16_t dx = 0;
  std::int16_t dy = 0;
  friend bool operator==(const RawGraphEdge&, const RawGraphEdge&) = default;
};

struct RawGraph {
  std::uint32_t resolution = 0;
  double epsilon = 0.0;
  std::vector<RawGraphEdge> edges;
};

/// Throws GraphFormatError if a displacement does not fit in int16.
void write_graph_binary(std::ostream& os, const GridDigraph& g);
RawGraph read_graph_binary(std::istream& is);
GridDigraph to_digraph(const RawGraph& raw);

}  // namespace rotset

#endif  // ROTSET_GRAPH_IO_HPP
