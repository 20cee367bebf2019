#include "rotset/graph_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

namespace rotset {

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  using U = std::make_unsigned_t<T>;
  U u;
  std::memcpy(&u, &value, sizeof(T));
  std::array<char, sizeof(T)> buf;
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((u >> (8 * i)) & 0xFF);
  os.write(buf.data(), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> buf;
  if (!is.read(reinterpret_cast<char*>(buf.data()), sizeof(T)))
    throw GraphFormatError("graph file truncated");
  using U = std::make_unsigned_t<T>;
  U u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(static_cast<U>(buf[i]) << (8 * i));
  T value;
  std::memcpy(&value, &u, sizeof(T));
  return value;
}

std::int16_t narrow16(std::int64_t v) {
  if (v < std::numeric_limits<std::int16_t>::min() || v > std::numeric_limits<std::int16_t>::max())
    throw GraphFormatError("edge displacement does not fit in 16 bits");
  return static_cast<std::int16_t>(v);
}

}  // namespace

void write_graph_binary(std::ostream& os, const GridDigraph& g) {
  os.write("RSGD", 4);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.grid().resolution()));
  put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(g.epsilon()));
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(g.edge_count()));
  for (int c = 0; c < g.grid().cell_count(); ++c) {
    for (const ChainEdge* e = g.begin(c); e != g.end(c); ++e) {
      put_le<std::uint32_t>(os, static_cast<std::uint32_t>(c));
      put_le<std::uint32_t>(os, static_cast<std::uint32_t>(e->target));
      put_le<std::int16_t>(os, narrow16(e->displacement.x()));
      put_le<std::int16_t>(os, narrow16(e->displacement.y()));
    }
  }
  if (!os) throw GraphFormatError("failed writing graph");
}

RawGraph read_graph_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "RSGD", 4) != 0) throw GraphFormatError("bad magic");
  RawGraph g;
  g.resolution = get_le<std::uint32_t>(is);
  g.epsilon = std::bit_cast<double>(get_le<std::uint64_t>(is));
  const auto count = get_le<std::uint64_t>(is);
  const std::uint64_t cells = static_cast<std::uint64_t>(g.resolution) * g.resolution;
  if (g.resolution < 2 || count > cells * cells) throw GraphFormatError("implausible header");
  g.edges.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    RawGraphEdge e;
    e.source = get_le<std::uint32_t>(is);
    e.target = get_le<std::uint32_t>(is);
    e.dx = get_le<std::int16_t>(is);
    e.dy = get_le<std::int16_t>(is);
    if (e.source >= cells || e.target >= cells) throw GraphFormatError("cell id out of range");
    g.edges.push_back(e);
  }
  return g;
}

GridDigraph to_digraph(const RawGraph& raw) {
  const Grid grid(static_cast<int>(raw.resolution));
  const auto cells = static_cast<std::size_t>(grid.cell_count());
  std::vector<std::size_t> offsets(cells + 1, 0);
  for (std::size_t i = 0; i < raw.edges.size(); ++i) {
    if (i > 0 && raw.edges[i].source < raw.edges[i - 1].source)
      throw GraphFormatError("edges not grouped by source");
    ++offsets[raw.edges[i].source + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) offsets[c + 1] += offsets[c];
  std::vector<ChainEdge> edges;
  edges.reserve(raw.edges.size());
  for (const auto& e : raw.edges) edges.push_back({static_cast<int>(e.target), LatticeVec(e.dx, e.dy)});
  return GridDigraph(grid, raw.epsilon, std::move(offsets), std::move(edges));
}

}  // namespace rotset
