#include "rotset/estimators.hpp"

#include "rotset/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace rotset {

const char* to_string(EstimateKind k) {
  return k == EstimateKind::sampled_inner ? "sampled-inner" : "graph-outer";
}

UniformSquareSampler::UniformSquareSampler(std::uint64_t seed) : engine_(seed) {}

double UniformSquareSampler::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Vec2 UniformSquareSampler::next() {
  const double u = unit();
  const double v = unit();
  return {u, v};
}

std::vector<Vec2> UniformSquareSampler::take(std::size_t count) {
  std::vector<Vec2> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(next());
  return out;
}

BirkhoffResult birkhoff_rotation_vector(const LiftMap& f, const Vec2& x, long n) {
  if (n < 1) throw std::invalid_argument("birkhoff_rotation_vector: n must be >= 1");
  BirkhoffResult res;
  res.n = n;
  const long tail_start = std::max(1L, n - n / 10);
  std::vector<Vec2> tail;
  tail.reserve(static_cast<std::size_t>(n - tail_start + 1));

  // phi is summed at the torus representative of each iterate, which is
  // where a torus-side Birkhoff sum would evaluate it.
  Vec2 phi_sum = Vec2::Zero();
  Vec2 y = x;
  for (long k = 1; k <= n; ++k) {
    const Vec2 rep = y - to_real(lattice_part(y));
    phi_sum += displacement(f, rep);
    y = f.evaluate(y);
    if (k >= tail_start) tail.push_back((y - x) / static_cast<double>(k));
  }
  res.vector = (y - x) / static_cast<double>(n);
  for (const auto& v : tail) res.tail_variation = std::max(res.tail_variation, (v - res.vector).norm());
  res.telescoping_gap = (phi_sum / static_cast<double>(n) - res.vector).norm();
  return res;
}

RotationSetEstimate hull_estimate(const std::vector<Vec2>& vectors, int directions) {
  RotationSetEstimate est;
  est.kind = EstimateKind::sampled_inner;
  est.samples = vectors;
  est.hull_vertices = convex_hull(vectors);
  const auto dirs = unit_directions<double>(directions);
  est.support.reserve(dirs.size());
  for (int j = 0; j < directions; ++j) {
    const double th = 2.0 * std::numbers::pi * j / directions;
    est.support.push_back({th, support(est.hull_vertices, dirs[static_cast<std::size_t>(j)])});
  }
  return est;
}

RotationSetEstimate sample_rotation_set(const LiftMap& f, long num_points, long n,
                                        std::uint64_t seed, int directions) {
  if (num_points < 1) throw std::invalid_argument("sample_rotation_set: num_points must be >= 1");
  if (n < 1) throw std::invalid_argument("sample_rotation_set: n must be >= 1");
  UniformSquareSampler sampler(seed);
  const auto seeds = sampler.take(static_cast<std::size_t>(num_points));
  std::vector<Vec2> vectors(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    vectors[i] = (iterate(f, seeds[i], n) - seeds[i]) / static_cast<double>(n);
  });
  return hull_estimate(vectors, directions);
}

MeanRotationResult mean_rotation_vector(const LiftMap& f, long num_samples, std::uint64_t seed) {
  if (num_samples < 2) throw std::invalid_argument("mean_rotation_vector: num_samples must be >= 2");
  UniformSquareSampler sampler(seed);
  const auto pts = sampler.take(static_cast<std::size_t>(num_samples));
  std::vector<Vec2> phi(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { phi[i] = displacement(f, pts[i]); });

  // Fixed reduction order. Summing offsets from the first sample keeps a
  // constant integrand exact and steadies the variance.
  const Vec2 base = phi.front();
  Vec2 sum = Vec2::Zero();
  for (const auto& d : phi) sum += d - base;
  const double m = static_cast<double>(num_samples);
  const Vec2 shift = sum / m;
  const Vec2 mean = base + shift;
  Vec2 ss = Vec2::Zero();
  for (const auto& d : phi) ss += (d - base - shift).cwiseAbs2();
  MeanRotationResult res;
  res.vector = mean;
  res.sample_count = num_samples;
  res.standard_error = (ss / (m - 1.0) / m).cwiseSqrt();
  return res;
}

AdditivityReport check_additivity(const LiftMap& f, const LiftMap& g, long num_samples,
                                  std::uint64_t seed) {
  AdditivityReport rep;
  rep.composite = mean_rotation_vector(compose(f, g), num_samples, seed);
  rep.first = mean_rotation_vector(f, num_samples, seed + 1);
  rep.second = mean_rotation_vector(g, num_samples, seed + 2);
  rep.discrepancy = (rep.composite.vector - (rep.first.vector + rep.second.vector)).norm();
  const Vec2 var = rep.composite.standard_error.cwiseAbs2() + rep.first.standard_error.cwiseAbs2() +
                   rep.second.standard_error.cwiseAbs2();
  rep.tolerance = 3.0 * std::sqrt(var.sum());
  rep.pass = rep.discrepancy <= rep.tolerance;
  return rep;
}

RotationSetEstimate hull_with_ball(const RotationSetEstimate& estimate, const Vec2& center,
                                   double radius, int num_arc_points) {
  if (!(radius >= 0.0)) throw std::invalid_argument("hull_with_ball: radius must be >= 0");
  if (num_arc_points < 3) throw std::invalid_argument("hull_with_ball: need >= 3 arc points");
  std::vector<Vec2> pts = estimate.hull_vertices;
  if (radius == 0.0) {
    pts.push_back(center);
  } else {
    const auto ball = regular_polygon(center, radius, num_arc_points);
    pts.insert(pts.end(), ball.begin(), ball.end());
  }
  RotationSetEstimate out = hull_estimate(pts, static_cast<int>(estimate.support.empty()
                                                                     ? kDefaultDirections
                                                                     : estimate.support.size()));
  out.samples.clear();
  out.kind = estimate.kind;
  return out;
}

}  // namespace rotset
