#include "rotset/zoo.hpp"

#include <cmath>
#include <numbers>

namespace rotset {

LiftMap translation(const Vec2& v) { return translate(v); }

LiftMap sine_shear_h(double alpha, double beta) { return hshear(alpha, beta); }

LiftMap sine_shear_v(double gamma, double delta) { return vshear(gamma, delta); }

LiftMap two_shear(double alpha, double beta, double gamma, double delta) {
  return compose(vshear(gamma, delta), hshear(alpha, beta));
}

ExpectedRotationSet expected_translation(const Vec2& v) { return PointSet{v}; }

ExpectedRotationSet expected_sine_shear_h(double alpha, double beta) {
  // Every row y is invariant and rotates rigidly by beta + alpha sin 2 pi y.
  const double a = std::abs(alpha);
  if (a == 0.0) return PointSet{{beta, 0.0}};
  return SegmentSet{{beta - a, 0.0}, {beta + a, 0.0}};
}

ExpectedRotationSet expected_sine_shear_v(double gamma, double delta) {
  const double g = std::abs(gamma);
  if (g == 0.0) return PointSet{{0.0, delta}};
  return SegmentSet{{0.0, delta - g}, {0.0, delta + g}};
}

ZooEntry make_zoo_entry(const std::string& name, const std::vector<double>& params) {
  auto arity = [&](std::size_t n) {
    if (params.size() != n)
      throw MapSpecError("zoo entry '" + name + "' takes " + std::to_string(n) + " parameters");
  };
  ZooEntry e;
  e.name = name;
  e.params = params;
  if (name == "translation") {
    arity(2);
    e.map = translation({params[0], params[1]});
    e.expected_rotation_set = expected_translation({params[0], params[1]});
    e.notes = "rigid translation; every orbit has rotation vector v";
  } else if (name == "sine_shear_h") {
    arity(2);
    e.map = sine_shear_h(params[0], params[1]);
    e.expected_rotation_set = expected_sine_shear_h(params[0], params[1]);
    e.notes = "horizontal sine shear; rows invariant, rigid row rotation";
  } else if (name == "sine_shear_v") {
    arity(2);
    e.map = sine_shear_v(params[0], params[1]);
    e.expected_rotation_set = expected_sine_shear_v(params[0], params[1]);
    e.notes = "vertical sine shear; columns invariant, rigid column rotation";
  } else if (name == "two_shear") {
    arity(4);
    e.map = two_shear(params[0], params[1], params[2], params[3]);
    if (params[0] == 0.0 && params[2] == 0.0)
      e.expected_rotation_set = expected_translation({params[1], params[3]});
    else if (params[2] == 0.0)
      e.expected_rotation_set = [&]() -> ExpectedRotationSet {
        auto s = expected_sine_shear_h(params[0], params[1]);
        // vertical translation by delta moves the segment up
        if (auto* seg = std::get_if<SegmentSet>(&s)) {
          seg->a.y() += params[3];
          seg->b.y() += params[3];
        }
        return s;
      }();
    else
      e.expected_rotation_set = UnknownSet{};
    e.notes = "vertical shear after horizontal shear; rotation set generally two-dimensional";
  } else {
    throw MapSpecError("unknown zoo entry '" + name + "'");
  }
  return e;
}

std::vector<ZooEntry> zoo_entries() {
  const double s2 = std::numbers::sqrt2;
  return {
      make_zoo_entry("translation", {0.0, 0.0}),
      make_zoo_entry("translation", {0.5, 0.25}),
      make_zoo_entry("translation", {s2 - 1.0, 0.0}),
      make_zoo_entry("translation", {0.3 + s2 / 10.0, 0.0}),
      make_zoo_entry("sine_shear_h", {0.25, 0.5}),
      make_zoo_entry("sine_shear_v", {0.3, 0.1}),
      make_zoo_entry("two_shear", {0.3, 0.0, 0.3, 0.0}),
      make_zoo_entry("two_shear", {0.3, 0.2, 0.3, 0.1}),
  };
}

ExpectedRotationSet expected_rotation_set_of(const LiftMap& f) {
  const auto& r = f.root();
  if (auto* t = std::get_if<node::Translate>(&r)) return expected_translation(t->v);
  if (auto* h = std::get_if<node::HShear>(&r)) return expected_sine_shear_h(h->alpha, h->beta);
  if (auto* v = std::get_if<node::VShear>(&r)) return expected_sine_shear_v(v->gamma, v->delta);
  return UnknownSet{};
}

}  // namespace rotset
