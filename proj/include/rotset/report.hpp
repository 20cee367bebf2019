#ifndef ROTSET_REPORT_HPP
#define ROTSET_REPORT_HPP

#include "rotset/chain_engine.hpp"
#include "rotset/estimators.hpp"
#include "rotset/periodic_finder.hpp"
#include "rotset/zoo.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rotset {

using json = nlohmann::json;

inline constexpr const char* kSchema = "rotset/1";

json to_json(const Vec2& v);
json to_json(const LatticeVec& v);
json to_json(const Polygon<double>& poly);
json to_json(const BirkhoffResult& r);
json to_json(const RotationSetEstimate& e);
json to_json(const MeanRotationResult& r);
json to_json(const AdditivityReport& r);
json to_json(const ExpectedRotationSet& s);
json to_json(const ZooEntry& e);
json to_json(const Chain& c, const Grid& grid);
json to_json(const RationalVector& nu);
json to_json(const Box& b);
json to_json(const FixedPointCandidate& c);
json to_json(const PeriodicOrbitReport& r);

/// Shape and size statistics of a chain graph.
json graph_summary(const GridDigraph& g);

/// {schema, map, estimator, params, seed, result, diagnostics}. `seed` is
/// null for deterministic estimators.
json make_report(const std::string& map_spec, const std::string& estimator, json params,
                 std::optional<std::uint64_t> seed, json result, json diagnostics);

/// 800x800 SVG: rotation vectors as r=1.5 circles, each polygon as a closed
/// polyline. The view box covers all inputs with a 10% margin.
struct SvgLayer {
  Polygon<double> polygon;
  std::string stroke;
};
std::string render_svg(const std::vector<Vec2>& points, const std::vector<SvgLayer>& layers);

}  // namespace rotset

#endif  // ROTSET_REPORT_HPP
