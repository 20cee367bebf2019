#ifndef ROTSET_TYPES_HPP
#define ROTSET_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>

namespace rotset {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Vec2 = Point2<double>;
using LatticeVec = Point2<std::int64_t>;

/// A point of the torus R^2/Z^2 with both coordinates in [0,1).
struct TorusPoint {
  double u = 0.0;
  double v = 0.0;

  Vec2 as_vec() const { return {u, v}; }
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// Reduces a real into [0,1). A result that rounds up to 1.0 snaps to 0.0.
template <typename Scalar>
Scalar wrap_unit(Scalar s) {
  Scalar r = s - std::floor(s);
  if (r >= Scalar(1)) r = Scalar(0);
  return r;
}

inline TorusPoint project(const Vec2& x) {
  return {wrap_unit(x.x()), wrap_unit(x.y())};
}

/// The lift of `t` lying in [anchor.x, anchor.x+1) x [anchor.y, anchor.y+1).
inline Vec2 lift_near(const TorusPoint& t, const Vec2& anchor) {
  Vec2 out;
  out.x() = anchor.x() + wrap_unit(t.u - anchor.x());
  out.y() = anchor.y() + wrap_unit(t.v - anchor.y());
  return out;
}

/// Integer part of a lift: x = project(x) + lattice_part(x).
inline LatticeVec lattice_part(const Vec2& x) {
  return {static_cast<std::int64_t>(std::floor(x.x())),
          static_cast<std::int64_t>(std::floor(x.y()))};
}

inline Vec2 to_real(const LatticeVec& m) {
  return m.cast<double>();
}

/// Distance on the torus between two points given by arbitrary lifts.
inline double torus_distance(const Vec2& a, const Vec2& b) {
  Vec2 d = a - b;
  d.x() -= std::round(d.x());
  d.y() -= std::round(d.y());
  return d.norm();
}

}  // namespace rotset

#endif  // ROTSET_TYPES_HPP
