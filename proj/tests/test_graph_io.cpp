#include "rotset/graph_io.hpp"
#include "rotset/zoo.hpp"

#include <doctest.h>

#include <cstring>
#include <sstream>

using namespace rotset;

TEST_CASE("binary graph round trip") {
  const auto g = build_chain_graph(sine_shear_h(0.25, 0.5), 16, 0.1);
  std::stringstream buf;
  write_graph_binary(buf, g);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 4) == "RSGD");
  CHECK(bytes.size() == 4 + 4 + 8 + 8 + g.edge_count() * 12);

  std::istringstream in(bytes);
  const RawGraph raw = read_graph_binary(in);
  CHECK(raw.resolution == 16);
  CHECK(raw.epsilon == 0.1);
  CHECK(raw.edges.size() == g.edge_count());

  const GridDigraph back = to_digraph(raw);
  CHECK(back.offsets() == g.offsets());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    CHECK(back.edges()[e].target == g.edges()[e].target);
    CHECK(back.edges()[e].displacement == g.edges()[e].displacement);
  }
}

TEST_CASE("header fields are little-endian") {
  const auto g = build_chain_graph(identity_map(), 2, 0.75);
  std::stringstream buf;
  write_graph_binary(buf, g);
  const std::string b = buf.str();
  CHECK(static_cast<unsigned char>(b[4]) == 2);
  CHECK(b[5] == 0);
  double eps = 0;
  std::memcpy(&eps, b.data() + 8, 8);
  CHECK(eps == 0.75);
}

TEST_CASE("malformed graph files are rejected") {
  std::istringstream bad_magic("XXXX");
  CHECK_THROWS_AS(read_graph_binary(bad_magic), GraphFormatError);

  const auto g = build_chain_graph(identity_map(), 4, 0.3);
  std::stringstream buf;
  write_graph_binary(buf, g);
  std::string bytes = buf.str();
  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_graph_binary(truncated), GraphFormatError);

  // point the first edge's target past the last cell
  bytes[24 + 4] = '\xff';
  bytes[24 + 5] = '\xff';
  std::istringstream out_of_range(bytes);
  CHECK_THROWS_AS(read_graph_binary(out_of_range), GraphFormatError);
}
