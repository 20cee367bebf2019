#include "rotset/periodic_finder.hpp"
#include "rotset/zoo.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rotset;

namespace {

// Fixed points at (0,0), (1/2,0), (0,1/2), (1/2,1/2), all nondegenerate.
LiftMap isolated_zero_map() { return compose(vshear(0.1, 0.0), hshear(0.1, 0.0)); }

// The same map conjugated by a translation, moving the zeros off dyadic box
// edges: they sit at (0.9,0.8), (0.4,0.8), (0.9,0.3), (0.4,0.3).
LiftMap shifted_zero_map() {
  const Vec2 c(0.1, 0.2);
  return compose(translate(-c), compose(isolated_zero_map(), translate(c)));
}

Box around(const Vec2& c, double r) { return {c.x() - r, c.y() - r, c.x() + r, c.y() + r}; }

}  // namespace

TEST_CASE("rational vectors are reduced") {
  const RationalVector a(2, 4, 1);
  CHECK(a.p() == 2);
  CHECK(a.q() == 4);
  CHECK(a.r() == 1);
  const RationalVector b(2, 4, 2);
  CHECK(b.p() == 1);
  CHECK(b.q() == 2);
  CHECK(b.r() == 1);
  const RationalVector c(3, -6, 0);
  CHECK(c.p() == -1);
  CHECK(c.q() == 2);
  CHECK_THROWS(RationalVector(1, 0, 1));

  const auto d = RationalVector::parse("2/4,1/4");
  CHECK(d.p() == 2);
  CHECK(d.q() == 4);
  CHECK(d.r() == 1);
  const auto e = RationalVector::parse("1/3,0");
  CHECK(e.p() == 1);
  CHECK(e.q() == 3);
  CHECK(e.r() == 0);
  CHECK(RationalVector::parse("1,0").q() == 1);
  CHECK(RationalVector::parse(" 3/4 , 0 ").to_string() == "3/4,0");
  CHECK_THROWS(RationalVector::parse("1/0,1"));
  CHECK_THROWS(RationalVector::parse("half,0"));
  CHECK_THROWS(RationalVector::parse("1/2"));
}

TEST_CASE("reduction to a fixed point problem") {
  const LiftMap g = reduce_to_fixed_point_problem(translation({0.5, 0.25}), RationalVector(2, 4, 1));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Vec2 x(u(rng), u(rng));
    CHECK((g(x) - x).norm() < 1e-12);
  }
  const LiftMap f = sine_shear_h(0.25, 0.5);
  const LiftMap same = reduce_to_fixed_point_problem(f, RationalVector(0, 1, 0));
  CHECK((same(Vec2(0.3, 0.7)) - f(Vec2(0.3, 0.7))).norm() == 0.0);
}

TEST_CASE("reduced map has zero rotation on the target row") {
  // sin 2 pi y = 1 at y = 1/4: row rotation 3/4
  const LiftMap g = reduce_to_fixed_point_problem(sine_shear_h(0.25, 0.5), RationalVector(3, 4, 0));
  const Vec2 x(0.17, 0.25);
  CHECK((iterate(g, x, 20) - x).norm() < 1e-12);
}

TEST_CASE("winding numbers") {
  const LiftMap drift = translation({0.1, 0.0});
  CHECK(winding_number(drift, Box{0.2, 0.2, 0.4, 0.4}, 16) == 0);

  // Reference: independent Python angle-sum at 400 samples per edge.
  const LiftMap g = isolated_zero_map();
  CHECK(winding_number(g, around({0.0, 0.5}, 0.05), 32) == 1);
  CHECK(winding_number(g, around({0.5, 0.0}, 0.05), 32) == 1);
  CHECK(winding_number(g, around({0.0, 0.0}, 0.05), 32) == -1);
  CHECK(winding_number(g, around({0.5, 0.5}, 0.05), 32) == -1);
  CHECK(winding_number(g, around({0.25, 0.25}, 0.05), 32) == 0);

  // zero on the left edge
  CHECK_FALSE(winding_number(g, Box{0.0, 0.45, 0.1, 0.55}, 32).has_value());
}

TEST_CASE("determinate winding numbers survive refinement") {
  const LiftMap g = isolated_zero_map();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    const Box b = around({u(rng), u(rng)}, 0.02 + 0.1 * u(rng));
    const auto w = winding_number(g, b, 16);
    if (!w) continue;
    CHECK(winding_number(g, b, 32) == w);
    CHECK(winding_number(g, b, 64) == w);
  }
}

TEST_CASE("locate_fixed_points on an identity is a continuum") {
  const auto s = locate_fixed_points(identity_map(), 4, 1e-9);
  CHECK(s.degenerate_continuum);
  CHECK_FALSE(s.candidates.empty());
  for (const auto& c : s.candidates) CHECK(c.residual == 0.0);
}

TEST_CASE("fixed-point-free map yields nothing") {
  const auto s = locate_fixed_points(translation({0.1, 0.0}), 8, 1e-9);
  CHECK(s.candidates.empty());
  CHECK_FALSE(s.degenerate_continuum);
}

TEST_CASE("isolated zeros are index certified") {
  const auto s = locate_fixed_points(shifted_zero_map(), 6, 1e-9);
  CHECK_FALSE(s.degenerate_continuum);
  int index_certified = 0;
  for (const auto& c : s.candidates) {
    CHECK(c.residual <= 1e-9);
    if (c.kind == CertificateKind::index) {
      ++index_certified;
      CHECK(c.index != 0);
    }
  }
  CHECK(index_certified >= 4);
  for (const Vec2 z : {Vec2(0.9, 0.8), Vec2(0.4, 0.8), Vec2(0.9, 0.3), Vec2(0.4, 0.3)}) {
    bool hit = false;
    for (const auto& c : s.candidates) hit = hit || torus_distance(c.refined_point, z) < 1e-6;
    CHECK(hit);
  }
}

TEST_CASE("fixed row of the reduced sine shear") {
  const int depth = 8;
  const LiftMap g = reduce_to_fixed_point_problem(sine_shear_h(0.25, 0.5), RationalVector(3, 4, 0));
  const auto s = locate_fixed_points(g, depth, 1e-9);
  CHECK(s.degenerate_continuum);
  const double side = std::ldexp(1.0, -depth);
  std::size_t on_row = 0;
  for (const auto& c : s.candidates) {
    CHECK(std::abs(torus_distance(Vec2(0, c.refined_point.y()), Vec2(0, 0.25))) <= side);
    if (c.kind == CertificateKind::residual && c.box.y0 <= 0.25 + side && c.box.y1 >= 0.25 - side) ++on_row;
  }
  CHECK(on_row >= (std::size_t{1} << depth) / 2);
}

TEST_CASE("realize rational vectors") {
  const auto t = realize_rational_vector(translation({0.5, 0.25}), RationalVector(2, 4, 1));
  REQUIRE(t.has_value());
  CHECK(t->period == 4);
  CHECK(t->minimal);
  CHECK((t->rotation_vector - Vec2(0.5, 0.25)).norm() < 1e-12);

  const LiftMap f = sine_shear_h(0.25, 0.5);
  const auto h = realize_rational_vector(f, RationalVector(1, 2, 0));
  REQUIRE(h.has_value());
  CHECK(h->period == 2);
  CHECK(h->minimal);
  const double y = h->point.v;
  CHECK(std::min({std::abs(y), std::abs(y - 0.5), std::abs(y - 1.0)}) < 1e-6);
  CHECK(h->residual <= 1e-9);
  CHECK((iterate(f, h->lift, 2) - h->lift - Vec2(1, 0)).norm() <= 1e-9);

  CHECK_FALSE(realize_rational_vector(f, RationalVector(1, 1, 0)).has_value());
}

TEST_CASE("prime periods are not fixed points of F") {
  const LiftMap f = sine_shear_h(0.25, 0.5);
  for (auto nu : {RationalVector(1, 2, 0), RationalVector(1, 3, 0)}) {
    const auto r = realize_rational_vector(f, nu);
    REQUIRE(r.has_value());
    CHECK(r->minimal);
    const Vec2 d = f(r->lift) - r->lift;
    CHECK((d - d.array().round().matrix()).norm() > 1e-6);
  }
}
