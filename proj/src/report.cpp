#include "rotset/report.hpp"

#include "rotset/cycle_mean.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rotset {

json to_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

json to_json(const LatticeVec& v) { return json::array({v.x(), v.y()}); }

json to_json(const Polygon<double>& poly) {
  json out = json::array();
  for (const auto& v : poly) out.push_back(to_json(v));
  return out;
}

json to_json(const BirkhoffResult& r) {
  return {{"vector", to_json(r.vector)},
          {"n", r.n},
          {"tail_variation", r.tail_variation},
          {"telescoping_gap", r.telescoping_gap}};
}

json to_json(const RotationSetEstimate& e) {
  json support = json::array();
  for (const auto& s : e.support) support.push_back({{"theta", s.theta}, {"value", s.value}});
  return {{"kind", to_string(e.kind)}, {"hull_vertices", to_json(e.hull_vertices)}, {"support", support}};
}

json to_json(const MeanRotationResult& r) {
  return {{"vector", to_json(r.vector)},
          {"sample_count", r.sample_count},
          {"standard_error", to_json(r.standard_error)}};
}

json to_json(const AdditivityReport& r) {
  return {{"composite", to_json(r.composite)}, {"first", to_json(r.first)},  {"second", to_json(r.second)},
          {"discrepancy", r.discrepancy},       {"tolerance", r.tolerance},   {"pass", r.pass}};
}

json to_json(const ExpectedRotationSet& s) {
  if (auto* p = std::get_if<PointSet>(&s)) return {{"type", "point"}, {"point", to_json(p->point)}};
  if (auto* g = std::get_if<SegmentSet>(&s))
    return {{"type", "segment"}, {"endpoints", json::array({to_json(g->a), to_json(g->b)})}};
  return {{"type", "unknown"}};
}

json to_json(const ZooEntry& e) {
  return {{"name", e.name},
          {"params", e.params},
          {"expected_rotation_set", to_json(e.expected_rotation_set)},
          {"notes", e.notes},
          {"area_preserving", e.area_preserving},
          {"map", e.map.spec()}};
}

json to_json(const Chain& c, const Grid& grid) {
  json cells = json::array();
  for (int id : c.cells) cells.push_back({{"id", id}, {"i", grid.column(id)}, {"j", grid.row(id)}});
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(to_json(s));
  return {{"cells", cells},
          {"steps", steps},
          {"length", c.length()},
          {"displacement", to_json(c.displacement)},
          {"epsilon", c.epsilon},
          {"periodic", c.periodic()}};
}

json to_json(const RationalVector& nu) {
  return {{"p", nu.p()}, {"q", nu.q()}, {"r", nu.r()}, {"text", nu.to_string()}, {"value", to_json(nu.value())}};
}

json to_json(const Box& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); }

json to_json(const FixedPointCandidate& c) {
  return {{"box", to_json(c.box)},
          {"certificate", to_string(c.kind)},
          {"index", c.index},
          {"residual", c.residual},
          {"refined_point", to_json(c.refined_point)},
          {"certified", c.certified}};
}

json to_json(const PeriodicOrbitReport& r) {
  return {{"point", to_json(r.point.as_vec())},
          {"lift", to_json(r.lift)},
          {"period", r.period},
          {"rotation_vector", to_json(r.rotation_vector)},
          {"target", to_json(r.target)},
          {"minimal", r.minimal},
          {"residual", r.residual},
          {"certificate", to_string(r.certificate)},
          {"index", r.index},
          {"certified", r.certified},
          {"degenerate_continuum", r.degenerate_continuum},
          {"candidate_count", r.candidate_count}};
}

json graph_summary(const GridDigraph& g) {
  std::size_t min_deg = g.edge_count(), max_deg = 0;
  for (int c = 0; c < g.grid().cell_count(); ++c) {
    min_deg = std::min(min_deg, g.out_degree(c));
    max_deg = std::max(max_deg, g.out_degree(c));
  }
  const auto sccs = strongly_connected_components(g.grid().cell_count(), g.arcs());
  std::size_t largest = 0;
  for (const auto& c : sccs) largest = std::max(largest, c.size());
  return {{"grid", g.grid().resolution()},
          {"epsilon", g.epsilon()},
          {"effective_epsilon", g.effective_epsilon()},
          {"cell_count", g.grid().cell_count()},
          {"edge_count", g.edge_count()},
          {"min_out_degree", min_deg},
          {"max_out_degree", max_deg},
          {"max_step", g.max_step()},
          {"scc_count", sccs.size()},
          {"largest_scc", largest}};
}

json make_report(const std::string& map_spec, const std::string& estimator, json params,
                 std::optional<std::uint64_t> seed, json result, json diagnostics) {
  json out;
  out["schema"] = kSchema;
  out["map"] = map_spec;
  out["estimator"] = estimator;
  out["params"] = std::move(params);
  out["seed"] = seed ? json(*seed) : json(nullptr);
  out["result"] = std::move(result);
  out["diagnostics"] = std::move(diagnostics);
  return out;
}

std::string render_svg(const std::vector<Vec2>& points, const std::vector<SvgLayer>& layers) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  auto grow = [&](const Vec2& p) {
    if (!any) {
      xmin = xmax = p.x();
      ymin = ymax = p.y();
      any = true;
    }
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  };
  for (const auto& p : points) grow(p);
  for (const auto& l : layers)
    for (const auto& p : l.polygon) grow(p);
  // Square data window, so lengths are not distorted.
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-3}) * 1.2;
  const double cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
  auto sx = [&](double x) { return (x - (cx - span / 2)) / span * 800.0; };
  auto sy = [&](double y) { return 800.0 - (y - (cy - span / 2)) / span * 800.0; };

  std::ostringstream os;
  char buf[128];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const auto& l : layers) {
    if (l.polygon.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i <= l.polygon.size(); ++i) {
      const auto& p = l.polygon[i % l.polygon.size()];
      std::snprintf(buf, sizeof(buf), "%s%.3f,%.3f", i ? " " : "", sx(p.x()), sy(p.y()));
      os << buf;
    }
    os << "\"/>\n";
  }
  for (const auto& p : points) {
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.5\" fill=\"black\"/>\n", sx(p.x()),
                  sy(p.y()));
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rotset
