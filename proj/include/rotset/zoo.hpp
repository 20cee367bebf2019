#ifndef ROTSET_ZOO_HPP
#define ROTSET_ZOO_HPP

#include "rotset/lift_map.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rotset {

// Closed-form rotation sets, stored symbolically.
struct PointSet { Vec2 point; };
struct SegmentSet { Vec2 a; Vec2 b; };
struct UnknownSet {};
using ExpectedRotationSet = std::variant<PointSet, SegmentSet, UnknownSet>;

struct ZooEntry {
  std::string name;
  std::vector<double> params;
  ExpectedRotationSet expected_rotation_set;
  std::string notes;
  bool area_preserving = true;
  LiftMap map;
};

LiftMap translation(const Vec2& v);
/// (x, y) -> (x + beta + alpha sin 2 pi y, y). Rotation set [beta-|alpha|, beta+|alpha|] x {0}.
LiftMap sine_shear_h(double alpha, double beta);
/// (x, y) -> (x, y + delta + gamma sin 2 pi x).
LiftMap sine_shear_v(double gamma, double delta);
/// sine_shear_v(gamma, delta) after sine_shear_h(alpha, beta).
LiftMap two_shear(double alpha, double beta, double gamma, double delta);

ExpectedRotationSet expected_translation(const Vec2& v);
ExpectedRotationSet expected_sine_shear_h(double alpha, double beta);
ExpectedRotationSet expected_sine_shear_v(double gamma, double delta);

/// Builds an entry by name ("translation", "sine_shear_h", "sine_shear_v",
/// "two_shear"). Throws MapSpecError on unknown name or wrong arity.
ZooEntry make_zoo_entry(const std::string& name, const std::vector<double>& params);

/// The standard specimens used by the test and acceptance suites.
std::vector<ZooEntry> zoo_entries();

/// Expected set if `f` is structurally a zoo primitive (translate, hshear,
/// vshear); UnknownSet otherwise.
ExpectedRotationSet expected_rotation_set_of(const LiftMap& f);

}  // namespace rotset

#endif  // ROTSET_ZOO_HPP
