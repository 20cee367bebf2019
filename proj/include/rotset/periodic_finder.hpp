#ifndef ROTSET_PERIODIC_FINDER_HPP
#define ROTSET_PERIODIC_FINDER_HPP

#include "rotset/lift_map.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotset {

/// (p/q, r/q) with q > 0 and gcd(p, q, r) = 1; reduced at construction.
class RationalVector {
 public:
  /// Throws std::invalid_argument for q == 0.
  RationalVector(std::int64_t p, std::int64_t q, std::int64_t r);

  /// Parses "a/b,c/d" (either component may be a bare integer) and brings
  /// both onto the least common denominator.
  static RationalVector parse(std::string_view text);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  std::int64_t r() const { return r_; }
  LatticeVec numerators() const { return {p_, r_}; }
  Vec2 value() const { return {static_cast<double>(p_) / q_, static_cast<double>(r_) / q_}; }
  std::string to_string() const;

  friend bool operator==(const RationalVector&, const RationalVector&) = default;

 private:
  std::int64_t p_, q_, r_;
};

struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diameter() const;
  Vec2 center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
  bool contains(const Vec2& p, double pad = 0.0) const {
    return p.x() >= x0 - pad && p.x() <= x1 + pad && p.y() >= y0 - pad && p.y() <= y1 + pad;
  }
};

/// G = F^q - (p, r); a fixed point z of G has rotation vector nu under F.
LiftMap reduce_to_fixed_point_problem(const LiftMap& f, const RationalVector& nu);

/// Winding number of x -> G(x) - x around the counterclockwise boundary of
/// the box, from samples_per_edge samples per side. Empty (indeterminate)
/// when an angle step exceeds pi/2 or the field nearly vanishes on the
/// boundary. Throws std::invalid_argument for samples_per_edge < 8.
std::optional<int> winding_number(const LiftMap& g, const Box& box, int samples_per_edge);

enum class CertificateKind { index, residual };

const char* to_string(CertificateKind k);

struct FixedPointCandidate {
  Box box;
  CertificateKind kind = CertificateKind::residual;
  int index = 0;          // winding number; nonzero for kind == index
  double residual = 0.0;  // |G(z) - z| at refined_point
  Vec2 refined_point = Vec2::Zero();
  bool certified = false;  // index != 0 and stable under doubled boundary sampling
};

struct FixedPointSearch {
  std::vector<FixedPointCandidate> candidates;
  /// Many residual-certified boxes: fixed points form a curve or region
  /// rather than isolated points.
  bool degenerate_continuum = false;
  std::size_t leaves_examined = 0;
};

inline constexpr int kDefaultDepth = 8;
inline constexpr double kDefaultResidualTol = 1e-9;

/// Quadtree search of [0,1)^2 to the given depth. A box is pruned when its
/// sampled residual minimum exceeds residual_tol + diameter * L, with L twice
/// the sampled Lipschitz estimate of G - id on the box. Surviving leaves get
/// winding-number certification, else residual certification by local
/// minimisation of |G(x) - x|. Candidates closer than half a leaf side are
/// merged, keeping the first in row-major box order.
FixedPointSearch locate_fixed_points(const LiftMap& g, int depth = kDefaultDepth,
                                     double residual_tol = kDefaultResidualTol);

struct PeriodicOrbitReport {
  TorusPoint point;
  Vec2 lift = Vec2::Zero();
  int period = 0;
  Vec2 rotation_vector = Vec2::Zero();
  RationalVector target{0, 1, 0};
  bool minimal = false;
  double residual = 0.0;  // |F^q(z) - z - (p, r)| on replay
  CertificateKind certificate = CertificateKind::residual;
  int index = 0;
  bool certified = false;
  bool degenerate_continuum = false;
  std::size_t candidate_count = 0;
};

/// Locates fixed points of F^q - (p, r), replays the best one through F and
/// reports its least period. Empty if no candidate replays within
/// residual_tol.
std::optional<PeriodicOrbitReport> realize_rational_vector(const LiftMap& f, const RationalVector& nu,
                                                           int depth = kDefaultDepth,
                                                           double residual_tol = kDefaultResidualTol);

}  // namespace rotset

#endif  // ROTSET_PERIODIC_FINDER_HPP
