#ifndef ROTSET_GEOMETRY_HPP
#define ROTSET_GEOMETRY_HPP

#include "rotset/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace rotset {

template <typename Scalar>
using Polygon = std::vector<Point2<Scalar>>;

/// Twice the signed area of (o, a, b); positive for a left turn.
template <typename Scalar>
Scalar orient(const Point2<Scalar>& o, const Point2<Scalar>& a, const Point2<Scalar>& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Convex hull by Andrew's monotone chain. Output is counterclockwise and
/// strictly convex (collinear points dropped), starting at the lowest-x,
/// lowest-y vertex. Degenerate inputs give one vertex (a point) or two
/// (a segment). Points closer than `dedup_tol` in both coordinates merge.
template <typename Scalar>
Polygon<Scalar> convex_hull(Polygon<Scalar> pts, Scalar dedup_tol = Scalar(1e-12)) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  Polygon<Scalar> uniq;
  uniq.reserve(pts.size());
  for (const auto& p : pts) {
    bool dup = false;
    // sorted by x, so only the tail can be within tolerance
    for (auto it = uniq.rbegin(); it != uniq.rend() && p.x() - it->x() <= dedup_tol; ++it) {
      if (std::abs(p.y() - it->y()) <= dedup_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() <= 2) return uniq;

  Polygon<Scalar> hull(2 * uniq.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], uniq[i]) <= 0) --k;
    hull[k++] = uniq[i];
  }
  for (std::size_t i = uniq.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], uniq[i]) <= 0) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// h(d) = max over vertices of <v, d>.
template <typename Scalar>
Scalar support(const Polygon<Scalar>& poly, const Point2<Scalar>& dir) {
  Scalar best = -std::numeric_limits<Scalar>::infinity();
  for (const auto& v : poly) best = std::max(best, v.dot(dir));
  return best;
}

template <typename Scalar>
Scalar point_segment_distance(const Point2<Scalar>& p, const Point2<Scalar>& a,
                              const Point2<Scalar>& b) {
  const Point2<Scalar> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  if (len2 == Scalar(0)) return (p - a).norm();
  const Scalar t = std::clamp((p - a).dot(ab) / len2, Scalar(0), Scalar(1));
  return (p - (a + t * ab)).norm();
}

/// Euclidean distance from p to a convex polygon (0 inside).
template <typename Scalar>
Scalar distance_to_convex(const Polygon<Scalar>& poly, const Point2<Scalar>& p) {
  if (poly.empty()) return std::numeric_limits<Scalar>::infinity();
  if (poly.size() == 1) return (p - poly[0]).norm();
  if (poly.size() == 2) return point_segment_distance(p, poly[0], poly[1]);
  bool inside = true;
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    if (orient(a, b, p) < 0) inside = false;
    best = std::min(best, point_segment_distance(p, a, b));
  }
  return inside ? Scalar(0) : best;
}

template <typename Scalar>
bool convex_contains(const Polygon<Scalar>& poly, const Point2<Scalar>& p, Scalar tol) {
  return distance_to_convex(poly, p) <= tol;
}

/// Every vertex of `inner` lies within tol of `outer`.
template <typename Scalar>
bool convex_contains_all(const Polygon<Scalar>& outer, const Polygon<Scalar>& inner, Scalar tol) {
  return std::all_of(inner.begin(), inner.end(),
                     [&](const auto& v) { return convex_contains(outer, v, tol); });
}

template <typename Scalar>
Scalar polygon_area(const Polygon<Scalar>& poly) {
  Scalar a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return a / 2;
}

/// Hausdorff distance between two convex sets given by their vertices. The
/// distance function to a convex set is convex, so vertices suffice.
template <typename Scalar>
Scalar hausdorff_convex(const Polygon<Scalar>& a, const Polygon<Scalar>& b) {
  Scalar d = 0;
  for (const auto& v : a) d = std::max(d, distance_to_convex(b, v));
  for (const auto& v : b) d = std::max(d, distance_to_convex(a, v));
  return d;
}

/// Sutherland-Hodgman clip of a convex polygon to {x : <x, n> <= h}.
template <typename Scalar>
Polygon<Scalar> clip_halfplane(const Polygon<Scalar>& poly, const Point2<Scalar>& n, Scalar h) {
  Polygon<Scalar> out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % m];
    const Scalar sp = p.dot(n) - h;
    const Scalar sq = q.dot(n) - h;
    if (sp <= 0) out.push_back(p);
    if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) {
      const Scalar t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

/// Vertices of a regular k-gon inscribed in the circle (center, radius).
template <typename Scalar>
Polygon<Scalar> regular_polygon(const Point2<Scalar>& center, Scalar radius, int k) {
  Polygon<Scalar> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const Scalar th = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(i) / Scalar(k);
    out.emplace_back(center.x() + radius * std::cos(th), center.y() + radius * std::sin(th));
  }
  return out;
}

/// k unit directions at angles 2 pi j / k.
template <typename Scalar>
std::vector<Point2<Scalar>> unit_directions(int k) {
  return regular_polygon<Scalar>(Point2<Scalar>::Zero(), Scalar(1), k);
}

}  // namespace rotset

#endif  // ROTSET_GEOMETRY_HPP
