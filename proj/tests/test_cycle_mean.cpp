#include "oracles.hpp"
#include "rotset/cycle_mean.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace rotset;

TEST_CASE("tarjan finds components of a small graph") {
  // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 4 -> 3, 5 isolated
  const std::vector<Arc> arcs = {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 3}};
  auto comps = strongly_connected_components(6, arcs);
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end());
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<int>{0, 1, 2});
  CHECK(comps[1] == std::vector<int>{3, 4});
  CHECK(comps[2] == std::vector<int>{5});
  CHECK_FALSE(component_has_cycle({5}, arcs));
  CHECK(component_has_cycle({5}, {{5, 5}}));
}

TEST_CASE("tarjan survives a long path without recursion") {
  const int n = 200000;
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1});
  arcs.push_back({n - 1, 0});
  const auto comps = strongly_connected_components(n, arcs);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].size() == static_cast<std::size_t>(n));
}

TEST_CASE("karp on hand-made graphs") {
  // two cycles: 0<->1 with weights 3 and -1 (mean 1), self-loop on 2 with weight 2
  const std::vector<Arc> arcs = {{0, 1}, {1, 0}, {1, 2}, {2, 2}};
  const std::vector<Rational> w = {3, -1, 100, 2};
  CHECK(karp_max_cycle_mean<Rational>(3, arcs, w) == Rational(2));
  const std::vector<Rational> w2 = {3, 2, 0, 2};
  CHECK(karp_max_cycle_mean<Rational>(3, arcs, w2) == Rational(5, 2));
  CHECK_FALSE(karp_max_cycle_mean<Rational>(3, {{0, 1}, {1, 2}}, std::vector<Rational>{1, 1}).has_value());
}

TEST_CASE("karp matches exhaustive cycle enumeration") {
  std::mt19937_64 rng(2718);
  const std::vector<LatticeVec> dirs = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {2, -1}, {-3, 1}};
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_digraph(rng, 8, 3);
    for (const auto& d : dirs) {
      std::vector<std::int64_t> wi;
      std::vector<Rational> wr;
      for (const auto& w : g.weights) {
        wi.push_back(w.dot(d));
        wr.emplace_back(w.dot(d));
      }
      const auto expect = oracle::max_simple_cycle_mean(g.n, g.arcs, wi);
      const auto got = karp_max_cycle_mean<Rational>(g.n, g.arcs, wr);
      REQUIRE(expect.has_value() == got.has_value());
      if (expect) CHECK(*expect == *got);
    }
  }
}

TEST_CASE("howard agrees with karp on random graphs") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 40)(rng);
    std::vector<Arc> arcs;
    std::vector<double> w;
    for (int v = 0; v < n; ++v) {
      const int k = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int j = 0; j < k; ++j) {
        arcs.push_back({v, std::uniform_int_distribution<int>(0, n - 1)(rng)});
        w.push_back(u(rng));
      }
    }
    const auto karp = karp_max_cycle_mean<double>(n, arcs, w);
    const auto howard = howard_max_cycle_mean(n, arcs, w);
    REQUIRE(karp.has_value());
    REQUIRE(howard.has_value());
    CHECK(std::abs(*karp - *howard) < 1e-9);
  }
}

TEST_CASE("component cycle means with every method") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::random_digraph(rng, 8, 3);
    std::vector<double> w;
    std::vector<std::int64_t> wi;
    for (const auto& x : g.weights) {
      w.push_back(static_cast<double>(x.x()));
      wi.push_back(x.x());
    }
    const auto expect = oracle::max_simple_cycle_mean(g.n, g.arcs, wi);
    for (auto method : {CycleMeanMethod::karp, CycleMeanMethod::howard, CycleMeanMethod::automatic}) {
      const ComponentCycleMeans cm(g.n, g.arcs, method);
      const auto got = cm.max_mean(w);
      REQUIRE(expect.has_value() == got.has_value());
      if (expect) CHECK(std::abs(expect->to_double() - *got) < 1e-9);
    }
  }
}
