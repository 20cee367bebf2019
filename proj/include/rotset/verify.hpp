#ifndef ROTSET_VERIFY_HPP
#define ROTSET_VERIFY_HPP

#include "rotset/chain_engine.hpp"
#include "rotset/estimators.hpp"
#include "rotset/periodic_finder.hpp"
#include "rotset/report.hpp"

#include <optional>
#include <string>

namespace rotset {

struct VerifyTheoremConfig {
  std::string map_spec;
  RationalVector nu{0, 1, 0};
  std::uint64_t seed = 0;
  long num_points = 1000;
  long iterates = 1000;
  long mean_samples = 100000;
  int grid = 64;
  double epsilon = 0.05;
  int directions = kDefaultDirections;
  int depth = kDefaultDepth;
  double tol = kDefaultResidualTol;
  /// nu counts as inside the sampled hull within this distance; sampled
  /// extremes approach the true endpoints from inside.
  double member_tol = 1e-3;
  /// When set, also test nu against the hull of the inner estimate and the
  /// ball of this radius around the mean rotation vector.
  std::optional<double> keps;
  bool outer = true;
};

struct VerifyTheoremReport {
  std::string map_spec;
  RationalVector nu{0, 1, 0};
  RotationSetEstimate inner;
  std::optional<RotationSetEstimate> outer;
  double outer_slack = 0.0;  // epsilon + h sqrt 2
  MeanRotationResult mean;
  double distance_to_inner = 0.0;
  bool inside_inner = false;
  std::optional<bool> inside_keps;
  std::string inner_shape;  // point, segment or polygon
  std::optional<PeriodicOrbitReport> orbit;
  bool pass = false;
};

/// Runs the whole pipeline for one map and one rational vector: sampled
/// inner hull, graph outer bound, mean rotation vector, membership of nu,
/// then realization of nu by a periodic orbit. Passes when nu is in the
/// inner hull and an orbit of least period q is found.
VerifyTheoremReport verify_theorem(const VerifyTheoremConfig& config);

json to_json(const VerifyTheoremConfig& c);
json to_json(const VerifyTheoremReport& r);

}  // namespace rotset

#endif  // ROTSET_VERIFY_HPP
