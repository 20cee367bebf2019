#include "rotset/verify.hpp"

namespace rotset {

VerifyTheoremReport verify_theorem(const VerifyTheoremConfig& config) {
  const LiftMap f = parse_map(config.map_spec);
  VerifyTheoremReport rep;
  rep.map_spec = f.spec();
  rep.nu = config.nu;

  rep.inner = sample_rotation_set(f, config.num_points, config.iterates, config.seed, config.directions);
  rep.inner.samples.clear();
  rep.inner_shape = rep.inner.hull_vertices.size() == 1   ? "point"
                    : rep.inner.hull_vertices.size() == 2 ? "segment"
                                                          : "polygon";
  if (config.outer) {
    const GridDigraph g = build_chain_graph(f, config.grid, config.epsilon);
    rep.outer = rotation_set_outer(g, config.directions);
    rep.outer_slack = g.effective_epsilon();
  }
  rep.mean = mean_rotation_vector(f, config.mean_samples, config.seed);

  const Vec2 target = config.nu.value();
  rep.distance_to_inner = distance_to_convex(rep.inner.hull_vertices, target);
  rep.inside_inner = rep.distance_to_inner <= config.member_tol;
  if (config.keps) {
    const auto k = hull_with_ball(rep.inner, rep.mean.vector, *config.keps, config.directions);
    rep.inside_keps = convex_contains(k.hull_vertices, target, config.member_tol);
  }

  rep.orbit = realize_rational_vector(f, config.nu, config.depth, config.tol);
  rep.pass = rep.inside_inner && rep.orbit && rep.orbit->minimal && rep.orbit->period == config.nu.q();
  return rep;
}

json to_json(const VerifyTheoremConfig& c) {
  return {{"map", c.map_spec},     {"vector", c.nu.to_string()},   {"seed", c.seed},
          {"points", c.num_points}, {"iterates", c.iterates},       {"samples", c.mean_samples},
          {"grid", c.grid},         {"epsilon", c.epsilon},         {"directions", c.directions},
          {"depth", c.depth},       {"tol", c.tol},                 {"member_tol", c.member_tol},
          {"keps", c.keps ? json(*c.keps) : json(nullptr)},         {"outer", c.outer}};
}

json to_json(const VerifyTheoremReport& r) {
  json membership = {{"distance_to_inner", r.distance_to_inner},
                     {"inside_inner", r.inside_inner},
                     {"inside_keps", r.inside_keps ? json(*r.inside_keps) : json(nullptr)}};
  json evidence = {{"inner", to_json(r.inner)},
                   {"inner_shape", r.inner_shape},
                   {"outer", r.outer ? to_json(*r.outer) : json(nullptr)},
                   {"outer_slack", r.outer_slack},
                   {"mean_rotation", to_json(r.mean)}};
  return {{"map", r.map_spec},
          {"nu", to_json(r.nu)},
          {"evidence", evidence},
          {"membership", membership},
          {"orbit", r.orbit ? to_json(*r.orbit) : json(nullptr)},
          {"pass", r.pass}};
}

}  // namespace rotset
