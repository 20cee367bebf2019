#ifndef ROTSET_LIFT_MAP_HPP
#define ROTSET_LIFT_MAP_HPP

#include "rotset/types.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace rotset {

/// Raised for malformed map expressions, at construction or parse time.
class MapSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LiftMap;

namespace node {
struct Translate { Vec2 v; };
/// (x, y) -> (x + beta + alpha sin 2 pi y, y)
struct HShear { double alpha; double beta; };
/// (x, y) -> (x, y + delta + gamma sin 2 pi x)
struct VShear { double gamma; double delta; };
struct Compose;
struct Power;
struct Shift;
}  // namespace node

/// Lift F: R^2 -> R^2 of a torus homeomorphism homotopic to the identity,
/// held as an immutable expression tree. Every primitive has Z^2-periodic
/// displacement, so F(x + m) = F(x) + m holds for every tree.
///
/// Copies share the tree; evaluation is const and thread-safe.
class LiftMap {
 public:
  using Node = std::variant<node::Translate, node::HShear, node::VShear, node::Compose,
                            node::Power, node::Shift>;

  /// The identity lift.
  LiftMap();

  Vec2 operator()(const Vec2& x) const { return evaluate(x); }
  Vec2 evaluate(const Vec2& x) const;

  /// phi(x) = F(x) - x, accumulated node by node rather than by subtracting
  /// x at the end: translations give exactly their vector, and no precision
  /// is lost far from the fundamental domain.
  Vec2 displacement(const Vec2& x) const;

  /// Canonical expression in the map mini-language; parse(spec()) rebuilds
  /// an equal map.
  std::string spec() const;

  const Node& root() const;

  static LiftMap from_node(Node&& n);

 private:
  // image and displacement together, for the recursion through compositions
  std::pair<Vec2, Vec2> step(const Vec2& x) const;

  explicit LiftMap(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

namespace node {
/// outer after inner
struct Compose { LiftMap outer; LiftMap inner; };
struct Power { LiftMap base; int q; };
/// base(x) + offset
struct Shift { LiftMap base; LatticeVec offset; };
}  // namespace node

inline const LiftMap::Node& LiftMap::root() const { return *root_; }

inline Vec2 evaluate(const LiftMap& f, const Vec2& x) { return f.evaluate(x); }

/// phi(x) = F(x) - x; Z^2-periodic.
inline Vec2 displacement(const LiftMap& f, const Vec2& x) { return f.displacement(x); }

LiftMap identity_map();
LiftMap translate(const Vec2& v);
LiftMap hshear(double alpha, double beta);
LiftMap vshear(double gamma, double delta);
/// outer after inner.
LiftMap compose(const LiftMap& outer, const LiftMap& inner);
/// q-fold composition, q >= 1.
LiftMap power(const LiftMap& f, int q);
/// x -> f(x) + offset.
LiftMap shift(const LiftMap& f, const LatticeVec& offset);

/// G = F^q - w. Throws std::invalid_argument for q < 1.
LiftMap power_shift(const LiftMap& f, int q, const LatticeVec& w);

/// F^n(x) by repeated evaluation.
Vec2 iterate(const LiftMap& f, const Vec2& x, long n);

/// Parses the map mini-language:
///   translate(vx,vy) hshear(alpha,beta) vshear(gamma,delta)
///   compose(A,B)  pow(A,q)  shift(A,m,n)  identity
/// Whitespace is ignored. Throws MapSpecError.
LiftMap parse_map(std::string_view text);

}  // namespace rotset

#endif  // ROTSET_LIFT_MAP_HPP
