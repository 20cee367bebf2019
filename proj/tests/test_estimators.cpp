#include "rotset/estimators.hpp"
#include "rotset/geometry.hpp"
#include "rotset/zoo.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace rotset;

TEST_CASE("birkhoff rotation vector of rigid maps") {
  const auto t = birkhoff_rotation_vector(translation({0.5, 0.25}), {0.3, 0.9}, 37);
  CHECK(std::abs(t.vector.x() - 0.5) < 1e-15);
  CHECK(std::abs(t.vector.y() - 0.25) < 1e-15);
  CHECK(t.tail_variation < 1e-14);

  const auto row = birkhoff_rotation_vector(sine_shear_h(0.25, 0.5), {0.0, 0.25}, 100);
  CHECK(std::abs(row.vector.x() - 0.75) < 1e-12);
  CHECK(row.vector.y() == 0.0);

  const auto id = birkhoff_rotation_vector(identity_map(), {0.1, 0.2}, 10);
  CHECK(id.vector == Vec2(0, 0));
}

TEST_CASE("telescoping gap is at roundoff") {
  for (const auto& e : zoo_entries()) {
    CAPTURE(e.name);
    const auto r = birkhoff_rotation_vector(e.map, {0.123, 0.456}, 200);
    CHECK(r.telescoping_gap < 1e-9);
    CHECK(r.tail_variation >= 0.0);
  }
}

TEST_CASE("sampler is reproducible and in the unit square") {
  UniformSquareSampler a(42), b(42), c(43);
  const auto xs = a.take(1000);
  const auto ys = b.take(1000);
  CHECK(xs == ys);
  CHECK(c.take(1000) != xs);
  for (const auto& x : xs) {
    CHECK(x.x() >= 0.0);
    CHECK(x.x() < 1.0);
    CHECK(x.y() >= 0.0);
    CHECK(x.y() < 1.0);
  }
}

TEST_CASE("sample_rotation_set on a translation gives one vertex") {
  const auto est = sample_rotation_set(translation({0.5, 0.25}), 100, 50, 1);
  REQUIRE(est.hull_vertices.size() == 1);
  CHECK((est.hull_vertices[0] - Vec2(0.5, 0.25)).norm() < 1e-12);
  CHECK(est.kind == EstimateKind::sampled_inner);
}

TEST_CASE("sampled hull for sine_shear_h is close to its segment") {
  const auto est = sample_rotation_set(sine_shear_h(0.25, 0.5), 1000, 1000, 2024);
  const Polygon<double> seg = {{0.25, 0.0}, {0.75, 0.0}};
  CHECK(hausdorff_convex(est.hull_vertices, seg) < 0.05);
  for (const auto& s : est.samples) CHECK(convex_contains(est.hull_vertices, s, 1e-12));
  for (const auto& sv : est.support) {
    const Vec2 d(std::cos(sv.theta), std::sin(sv.theta));
    CHECK(std::abs(sv.value - support(est.hull_vertices, d)) < 1e-9);
  }
}

TEST_CASE("more samples from the same stream only grow the hull") {
  const LiftMap f = two_shear(0.3, 0.0, 0.3, 0.0);
  const auto small = sample_rotation_set(f, 1000, 200, 8);
  const auto big = sample_rotation_set(f, 2000, 200, 8);
  CHECK(convex_contains_all(big.hull_vertices, small.hull_vertices, 1e-12));
}

TEST_CASE("mean rotation vector") {
  const auto t = mean_rotation_vector(translation({0.5, 0.25}), 1000, 3);
  CHECK((t.vector - Vec2(0.5, 0.25)).norm() < 1e-15);
  CHECK(t.standard_error.norm() < 1e-15);

  const auto h = mean_rotation_vector(sine_shear_h(0.25, 0.5), 100000, 4);
  CHECK(std::abs(h.vector.x() - 0.5) < 3 * h.standard_error.x());
  CHECK(h.vector.y() == 0.0);

  // Additive means: (0.2, 0) from the horizontal shear plus (0, 0.1) from the vertical one.
  const auto two = mean_rotation_vector(two_shear(0.3, 0.2, 0.3, 0.1), 100000, 5);
  CHECK(std::abs(two.vector.x() - 0.2) < 3 * two.standard_error.x());
  CHECK(std::abs(two.vector.y() - 0.1) < 3 * two.standard_error.y());
}

TEST_CASE("additivity checks") {
  const auto tt = check_additivity(translation({0.1, 0.3}), translation({0.25, -0.5}), 1000, 1);
  CHECK(tt.discrepancy == 0.0);
  CHECK(tt.pass);
  const auto inv = check_additivity(translation({0.25, 0.5}), translation({-0.25, -0.5}), 1000, 1);
  CHECK(inv.composite.vector.norm() == 0.0);
  const auto hv = check_additivity(hshear(0.25, 0.5), vshear(0.3, 0.1), 100000, 77);
  CHECK(hv.pass);
  CHECK(hv.discrepancy < hv.tolerance);
}

TEST_CASE("mean lies in the sampled hull inflated by three standard errors") {
  const LiftMap f = two_shear(0.3, 0.2, 0.3, 0.1);
  const auto est = sample_rotation_set(f, 1000, 500, 10);
  const auto m = mean_rotation_vector(f, 100000, 11);
  CHECK(convex_contains(est.hull_vertices, m.vector, 3 * m.standard_error.norm()));
}

TEST_CASE("hull_with_ball") {
  RotationSetEstimate seg;
  seg.hull_vertices = {{0.25, 0.0}, {0.75, 0.0}};
  const auto same = hull_with_ball(seg, {0.5, 0.0}, 0.0);
  CHECK(same.hull_vertices.size() == 2);
  const auto stadium = hull_with_ball(seg, {0.5, 0.0}, 0.1);
  CHECK(convex_contains(stadium.hull_vertices, Vec2(0.5, 0.09), 0.0));
  CHECK(polygon_area(stadium.hull_vertices) > 0.0);
  CHECK_THROWS(hull_with_ball(seg, {0.5, 0.0}, -0.1));
}

TEST_CASE("results do not depend on the worker count") {
  const LiftMap f = two_shear(0.3, 0.2, 0.3, 0.1);
  ::setenv("ROTSET_THREADS", "1", 1);
  const auto a = sample_rotation_set(f, 500, 100, 12);
  const auto ma = mean_rotation_vector(f, 10000, 12);
  ::setenv("ROTSET_THREADS", "5", 1);
  const auto b = sample_rotation_set(f, 500, 100, 12);
  const auto mb = mean_rotation_vector(f, 10000, 12);
  ::unsetenv("ROTSET_THREADS");
  CHECK(a.samples == b.samples);
  CHECK(a.hull_vertices == b.hull_vertices);
  CHECK(ma.vector == mb.vector);
  CHECK(ma.standard_error == mb.standard_error);
}
