#ifndef ROTSET_ESTIMATORS_HPP
#define ROTSET_ESTIMATORS_HPP

#include "rotset/geometry.hpp"
#include "rotset/lift_map.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace rotset {

struct BirkhoffResult {
  Vec2 vector = Vec2::Zero();
  long n = 0;
  /// max |(F^k(x)-x)/k - vector| over the last 10% of k.
  double tail_variation = 0.0;
  /// |(F^n(x)-x)/n - (1/n) sum phi(F^k x)|, the telescoping check.
  double telescoping_gap = 0.0;
};

enum class EstimateKind { sampled_inner, graph_outer };

const char* to_string(EstimateKind k);

struct SupportValue {
  double theta = 0.0;
  double value = 0.0;
};

struct RotationSetEstimate {
  Polygon<double> hull_vertices;  // counterclockwise, strictly convex
  std::vector<SupportValue> support;
  EstimateKind kind = EstimateKind::sampled_inner;
  /// sampled-inner only: the individual rotation vectors, in sample order.
  std::vector<Vec2> samples;
};

struct MeanRotationResult {
  Vec2 vector = Vec2::Zero();
  long sample_count = 0;
  Vec2 standard_error = Vec2::Zero();
};

struct AdditivityReport {
  MeanRotationResult composite;  // rho_mu(F o G)
  MeanRotationResult first;      // rho_mu(F)
  MeanRotationResult second;     // rho_mu(G)
  double discrepancy = 0.0;
  double tolerance = 0.0;  // 3 combined standard errors
  bool pass = false;
};

/// Seeded stream of uniform points in [0,1)^2. Uses the top 53 bits of
/// mt19937_64 so the stream is identical on every platform.
class UniformSquareSampler {
 public:
  explicit UniformSquareSampler(std::uint64_t seed);
  Vec2 next();
  std::vector<Vec2> take(std::size_t count);

 private:
  double unit();
  std::mt19937_64 engine_;
};

BirkhoffResult birkhoff_rotation_vector(const LiftMap& f, const Vec2& x, long n);

/// Default number of support directions reported with a hull.
inline constexpr int kDefaultDirections = 64;

RotationSetEstimate sample_rotation_set(const LiftMap& f, long num_points, long n,
                                        std::uint64_t seed, int directions = kDefaultDirections);

/// Hull + support table from an explicit set of rotation vectors.
RotationSetEstimate hull_estimate(const std::vector<Vec2>& vectors, int directions = kDefaultDirections);

/// Monte-Carlo mean of the displacement over Lebesgue measure on the
/// fundamental domain, which equals the mean rotation vector.
MeanRotationResult mean_rotation_vector(const LiftMap& f, long num_samples, std::uint64_t seed);

/// Compares rho_mu(F o G) with rho_mu(F) + rho_mu(G). The three estimates use
/// the seeds seed, seed+1, seed+2.
AdditivityReport check_additivity(const LiftMap& f, const LiftMap& g, long num_samples,
                                  std::uint64_t seed);

/// Convex hull of the estimate and a regular num_arc_points-gon inscribed in
/// the ball (center, radius). Throws std::invalid_argument for radius < 0.
RotationSetEstimate hull_with_ball(const RotationSetEstimate& estimate, const Vec2& center,
                                   double radius, int num_arc_points = kDefaultDirections);

}  // namespace rotset

#endif  // ROTSET_ESTIMATORS_HPP
