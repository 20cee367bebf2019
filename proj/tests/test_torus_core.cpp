#include "rotset/lift_map.hpp"
#include "rotset/rational.hpp"
#include "rotset/zoo.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rotset;

namespace {

std::vector<Vec2> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(u(rng), u(rng));
  return out;
}

}  // namespace

TEST_CASE("wrap_unit and project stay in [0,1)") {
  CHECK(wrap_unit(0.25) == 0.25);
  CHECK(wrap_unit(-0.25) == 0.75);
  CHECK(wrap_unit(3.0) == 0.0);
  CHECK(wrap_unit(-1e-300) < 1.0);
  const TorusPoint t = project(Vec2(-2.5, 7.125));
  CHECK(t.u == 0.5);
  CHECK(t.v == 0.125);
}

TEST_CASE("lattice part and lift_near") {
  const Vec2 x(-2.5, 7.125);
  CHECK(lattice_part(x) == LatticeVec(-3, 7));
  CHECK((project(x).as_vec() + to_real(lattice_part(x)) - x).norm() == 0.0);
  const Vec2 y = lift_near(project(x), Vec2(-3.0, 7.0));
  CHECK((y - x).norm() < 1e-15);
  CHECK(torus_distance(Vec2(0.99, 0.0), Vec2(0.01, 0.0)) == doctest::Approx(0.02));
}

TEST_CASE("rational arithmetic is exact and normalized") {
  const Rational a(1, 3), b(-2, 6);
  CHECK(a + b == Rational(0));
  CHECK(b.num() == -1);
  CHECK(b.den() == 3);
  CHECK(a * Rational(3) == Rational(1));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(a / Rational(0));
}

TEST_CASE("primitives evaluate to their formulas") {
  const Vec2 x(0.3, 0.8);
  CHECK((translate({0.5, 0.25})(x) - Vec2(0.8, 1.05)).norm() < 1e-15);
  const Vec2 h = hshear(0.25, 0.5)(x);
  CHECK(h.x() == doctest::Approx(0.3 + 0.5 + 0.25 * std::sin(2 * M_PI * 0.8)));
  CHECK(h.y() == 0.8);
  const Vec2 v = vshear(0.3, 0.1)(x);
  CHECK(v.x() == 0.3);
  CHECK(v.y() == doctest::Approx(0.8 + 0.1 + 0.3 * std::sin(2 * M_PI * 0.3)));
}

TEST_CASE("compose applies the inner map first") {
  const LiftMap f = compose(vshear(0.3, 0.0), hshear(0.2, 0.0));
  const Vec2 x(0.1, 0.2);
  const Vec2 inner = hshear(0.2, 0.0)(x);
  CHECK((f(x) - vshear(0.3, 0.0)(inner)).norm() == 0.0);
}

TEST_CASE("power, shift and power_shift") {
  const LiftMap f = hshear(0.25, 0.5);
  const Vec2 x(0.2, 0.7);
  CHECK((power(f, 3)(x) - iterate(f, x, 3)).norm() < 1e-14);
  CHECK((shift(f, {2, -1})(x) - f(x) - Vec2(2, -1)).norm() < 1e-15);
  CHECK((power_shift(f, 4, {3, 0})(x) - (iterate(f, x, 4) - Vec2(3, 0))).norm() < 1e-14);
  CHECK_THROWS_AS(power_shift(f, 0, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(power(f, -2), MapSpecError);
}

TEST_CASE("every zoo map is equivariant under integer translations") {
  const auto pts = random_points(200, 11);
  for (const auto& e : zoo_entries()) {
    CAPTURE(e.name);
    for (const auto& x : pts) {
      for (const LatticeVec m : {LatticeVec(1, 0), LatticeVec(0, 1), LatticeVec(-3, 2)}) {
        const Vec2 lhs = e.map(x + to_real(m));
        const Vec2 rhs = e.map(x) + to_real(m);
        CHECK((lhs - rhs).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("parse_map round-trips through spec") {
  const char* specs[] = {
      "translate(0.5,0.25)",
      "hshear(0.25,0.5)",
      "compose(vshear(0.3,0.1),hshear(0.25,0.5))",
      "shift(pow(hshear(0.25,0.5),4),-3,0)",
      "pow(translate(0.1,0.2),3)",
  };
  const auto pts = random_points(50, 3);
  for (const char* s : specs) {
    CAPTURE(s);
    const LiftMap f = parse_map(s);
    const LiftMap g = parse_map(f.spec());
    CHECK(f.spec() == g.spec());
    for (const auto& x : pts) CHECK((f(x) - g(x)).norm() == 0.0);
  }
  CHECK(parse_map(" hshear( 0.25 , 0.5 ) ").spec() == "hshear(0.25,0.5)");
  CHECK(parse_map("identity")(Vec2(0.3, 0.4)) == Vec2(0.3, 0.4));
}

TEST_CASE("parse_map rejects malformed input") {
  for (const char* bad : {"", "hshear(0.25)", "hshear(0.25,0.5", "wobble(1,2)", "pow(hshear(1,2),0)",
                          "translate(a,b)", "shift(hshear(1,2),0.5,0)", "hshear(1,2)x", "translate(nan,0)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_map(bad), MapSpecError);
  }
}
