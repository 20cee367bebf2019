#include "rotset/chain_engine.hpp"

#include "rotset/geometry.hpp"
#include "rotset/parallel.hpp"
#include "rotset/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace rotset {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace

Grid::Grid(int resolution) : n_(resolution) {
  if (resolution < 2) throw std::invalid_argument("Grid: resolution must be >= 2");
}

int Grid::cell_of(const Vec2& x) const {
  const TorusPoint t = project(x);
  const int i = std::min(n_ - 1, static_cast<int>(t.u * n_));
  const int j = std::min(n_ - 1, static_cast<int>(t.v * n_));
  return id(i, j);
}

GridDigraph::GridDigraph(Grid grid, double epsilon, std::vector<std::size_t> offsets,
                         std::vector<ChainEdge> edges)
    : grid_(grid), epsilon_(epsilon), offsets_(std::move(offsets)), edges_(std::move(edges)) {
  for (const auto& e : edges_)
    max_step_ = std::max({max_step_, std::abs(e.displacement.x()), std::abs(e.displacement.y())});
}

double GridDigraph::effective_epsilon() const { return epsilon_ + grid_.side() * std::numbers::sqrt2; }

std::size_t GridDigraph::out_degree(int cell) const {
  return offsets_[static_cast<std::size_t>(cell) + 1] - offsets_[static_cast<std::size_t>(cell)];
}

std::vector<Arc> GridDigraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(edges_.size());
  for (int c = 0; c < grid_.cell_count(); ++c)
    for (const ChainEdge* e = begin(c); e != end(c); ++e) out.push_back({c, e->target});
  return out;
}

GridDigraph build_chain_graph(const LiftMap& f, int resolution, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("build_chain_graph: epsilon must be > 0");
  const Grid grid(resolution);
  const int n = grid.resolution();
  const auto cells = static_cast<std::size_t>(grid.cell_count());
  const int reach = static_cast<int>(std::ceil(epsilon * n)) + 1;

  std::vector<std::vector<ChainEdge>> per_cell(cells);
  parallel_for(cells, [&](std::size_t c) {
    const Vec2 image = f.evaluate(grid.center(static_cast<int>(c)));
    // Lifted cell indices near the image; lifted cell L has center (L+0.5)/N.
    const auto li = static_cast<std::int64_t>(std::floor(image.x() * n));
    const auto lj = static_cast<std::int64_t>(std::floor(image.y() * n));
    std::unordered_map<int, std::pair<double, ChainEdge>> best;
    for (int dj = -reach; dj <= reach; ++dj) {
      for (int di = -reach; di <= reach; ++di) {
        const std::int64_t Li = li + di;
        const std::int64_t Lj = lj + dj;
        const Vec2 lifted_center((static_cast<double>(Li) + 0.5) / n, (static_cast<double>(Lj) + 0.5) / n);
        const double dist = (image - lifted_center).norm();
        if (!(dist < epsilon)) continue;
        const int target = grid.id(static_cast<int>(floor_mod(Li, n)), static_cast<int>(floor_mod(Lj, n)));
        const ChainEdge edge{target, LatticeVec(floor_div(Li, n), floor_div(Lj, n))};
        auto it = best.find(target);
        if (it == best.end() || dist < it->second.first) best[target] = {dist, edge};
      }
    }
    auto& out = per_cell[c];
    out.reserve(best.size());
    for (const auto& [t, entry] : best) out.push_back(entry.second);
    std::sort(out.begin(), out.end(), [](const ChainEdge& a, const ChainEdge& b) { return a.target < b.target; });
  });

  std::vector<std::size_t> offsets(cells + 1, 0);
  for (std::size_t c = 0; c < cells; ++c) offsets[c + 1] = offsets[c] + per_cell[c].size();
  std::vector<ChainEdge> edges;
  edges.reserve(offsets.back());
  for (auto& v : per_cell) edges.insert(edges.end(), v.begin(), v.end());
  return GridDigraph(grid, epsilon, std::move(offsets), std::move(edges));
}

Chain trivial_chain(int cell, double epsilon) {
  Chain c;
  c.cells = {cell};
  c.epsilon = epsilon;
  return c;
}

namespace {

// Breadth-first search over (cell, displacement) states.
struct StateSearch {
  const GridDigraph& g;
  std::int64_t window;  // D
  std::int64_t width;   // 2D+1

  std::uint64_t key(int cell, std::int64_t dx, std::int64_t dy) const {
    return (static_cast<std::uint64_t>(cell) * static_cast<std::uint64_t>(width) +
            static_cast<std::uint64_t>(dx + window)) *
               static_cast<std::uint64_t>(width) +
           static_cast<std::uint64_t>(dy + window);
  }
  int cell_of(std::uint64_t k) const {
    return static_cast<int>(k / static_cast<std::uint64_t>(width * width));
  }
  LatticeVec disp_of(std::uint64_t k) const {
    const auto w = static_cast<std::uint64_t>(width);
    return {static_cast<std::int64_t>((k / w) % w) - window, static_cast<std::int64_t>(k % w) - window};
  }

  // Finds the shortest walk of length in [1, max_len] from (start, 0) to
  // (goal_cell, goal_disp), visiting only cells accepted by `allowed`.
  template <typename Allowed>
  ChainSearchResult run(int start, int goal_cell, const LatticeVec& goal_disp, int max_len,
                        std::size_t budget, Allowed allowed) const {
    ChainSearchResult res;
    res.window = window;
    if (std::abs(goal_disp.x()) > window || std::abs(goal_disp.y()) > window) return res;
    const std::int64_t step = g.max_step();
    const std::uint64_t start_key = key(start, 0, 0);
    const std::uint64_t goal_key = key(goal_cell, goal_disp.x(), goal_disp.y());
    constexpr std::uint64_t kRoot = ~std::uint64_t{0};

    std::unordered_map<std::uint64_t, std::uint64_t> parent;
    parent.emplace(start_key, kRoot);
    std::vector<std::uint64_t> frontier{start_key}, next;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> hit;  // (goal, its parent)

    for (int depth = 0; depth < max_len && !frontier.empty() && !hit; ++depth) {
      const std::int64_t remaining = max_len - depth - 1;
      next.clear();
      for (const std::uint64_t k : frontier) {
        const int cell = cell_of(k);
        const LatticeVec d = disp_of(k);
        for (const ChainEdge* e = g.begin(cell); e != g.end(cell); ++e) {
          if (!allowed(e->target)) continue;
          const LatticeVec nd = d + e->displacement;
          if (std::abs(nd.x()) > window || std::abs(nd.y()) > window) continue;
          if (std::abs(goal_disp.x() - nd.x()) > remaining * step ||
              std::abs(goal_disp.y() - nd.y()) > remaining * step)
            continue;
          const std::uint64_t nk = key(e->target, nd.x(), nd.y());
          if (nk == goal_key) {
            hit = {nk, k};
            break;
          }
          if (parent.emplace(nk, k).second) next.push_back(nk);
        }
        if (hit) break;
        if (parent.size() > budget) {
          res.budget_exhausted = true;
          res.states_explored = parent.size();
          return res;
        }
      }
      std::sort(next.begin(), next.end());
      frontier.swap(next);
    }
    res.states_explored = parent.size();
    if (!hit) return res;

    std::vector<std::uint64_t> keys{hit->first};
    for (std::uint64_t k = hit->second; k != kRoot; k = parent.at(k)) keys.push_back(k);
    std::reverse(keys.begin(), keys.end());
    Chain c;
    c.epsilon = g.epsilon();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      c.cells.push_back(cell_of(keys[i]));
      if (i > 0) c.steps.push_back(disp_of(keys[i]) - disp_of(keys[i - 1]));
    }
    c.displacement = disp_of(keys.back());
    res.chain = std::move(c);
    return res;
  }
};

StateSearch make_search(const GridDigraph& g, int max_len) {
  const std::int64_t window = std::max<std::int64_t>(1, static_cast<std::int64_t>(max_len) * g.max_step());
  return StateSearch{g, window, 2 * window + 1};
}

}  // namespace

ChainSearchResult find_chain_to_target(const GridDigraph& g, int start, int target_cell,
                                       const LatticeVec& target_disp, int max_len,
                                       std::size_t state_budget) {
  if (max_len < 1) throw std::invalid_argument("find_chain_to_target: max_len must be >= 1");
  const int cells = g.grid().cell_count();
  if (start < 0 || start >= cells || target_cell < 0 || target_cell >= cells)
    throw std::out_of_range("find_chain_to_target: cell id out of range");
  if (start == target_cell && target_disp.isZero()) {
    ChainSearchResult res;
    res.chain = trivial_chain(start, g.epsilon());
    res.states_explored = 1;
    return res;
  }
  const auto search = make_search(g, max_len);
  return search.run(start, target_cell, target_disp, max_len, state_budget, [](int) { return true; });
}

Chain translate_concat(const Chain& a, const Chain& b) {
  if (a.cells.empty() || b.cells.empty() || a.cells.back() != b.cells.front())
    throw std::invalid_argument("translate_concat: chain a must end on the cell where b starts");
  Chain c = a;
  c.cells.insert(c.cells.end(), b.cells.begin() + 1, b.cells.end());
  c.steps.insert(c.steps.end(), b.steps.begin(), b.steps.end());
  c.displacement = a.displacement + b.displacement;
  c.epsilon = std::max(a.epsilon, b.epsilon);
  return c;
}

Chain repeat_chain(const Chain& c, std::int64_t times) {
  if (times < 1) throw std::invalid_argument("repeat_chain: times must be >= 1");
  Chain out = c;
  for (std::int64_t i = 1; i < times; ++i) out = translate_concat(out, c);
  return out;
}

std::optional<SteinitzCombination> steinitz_combination(const std::vector<LatticeVec>& vectors) {
  if (vectors.empty()) return std::nullopt;
  // Positive weights with zero sum put the origin in the interior of the hull
  // only when the vectors span the plane; collinear sets are rejected.
  auto cross = [](const LatticeVec& a, const LatticeVec& b) { return a.x() * b.y() - a.y() * b.x(); };
  const bool spans = std::any_of(vectors.begin(), vectors.end(), [&](const LatticeVec& a) {
    return std::any_of(vectors.begin(), vectors.end(), [&](const LatticeVec& b) { return cross(a, b) != 0; });
  });
  if (!spans) return std::nullopt;
  // A_i = 1 + B_i with B >= 0 and sum B_i w_i = t := -sum w_i. The LP has two
  // equality rows, so an optimal basic solution has at most two nonzero B_i;
  // enumerating those bases solves it exactly.
  const std::size_t n = vectors.size();
  LatticeVec t = LatticeVec::Zero();
  for (const auto& w : vectors) t -= w;

  std::optional<std::vector<Rational>> best;
  Rational best_sum;
  auto consider = [&](std::vector<Rational> b) {
    Rational s;
    for (const auto& v : b) s += v;
    if (!best || s < best_sum) {
      best = std::move(b);
      best_sum = s;
    }
  };
  if (t.isZero()) {
    consider(std::vector<Rational>(n, Rational(0)));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& w = vectors[i];
      if (w.isZero() || cross(w, t) != 0 || w.dot(t) <= 0) continue;
      std::vector<Rational> b(n, Rational(0));
      b[i] = w.x() != 0 ? Rational(t.x(), w.x()) : Rational(t.y(), w.y());
      consider(std::move(b));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::int64_t det = cross(vectors[i], vectors[j]);
        if (det == 0) continue;
        const Rational bi(cross(t, vectors[j]), det);
        const Rational bj(cross(vectors[i], t), det);
        if (bi < Rational(0) || bj < Rational(0)) continue;
        std::vector<Rational> b(n, Rational(0));
        b[i] = bi;
        b[j] = bj;
        consider(std::move(b));
      }
    }
  }
  if (!best) return std::nullopt;

  std::int64_t denom = 1;
  for (const auto& b : *best) denom = std::lcm(denom, b.den());
  SteinitzCombination out;
  std::int64_t g = 0;
  for (const auto& b : *best) {
    const Rational a = (Rational(1) + b) * Rational(denom);
    out.weights.push_back(a.num());
    g = std::gcd(g, a.num());
  }
  for (auto& a : out.weights) a /= g;
  return out;
}

Chain combine_chains(const std::vector<Chain>& chains, const std::vector<std::int64_t>& weights) {
  if (chains.empty() || chains.size() != weights.size())
    throw std::invalid_argument("combine_chains: need one weight per chain");
  std::optional<Chain> out;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const Chain block = repeat_chain(chains[i], weights[i]);
    out = out ? translate_concat(*out, block) : block;
  }
  return *out;
}

ChainSearchResult find_periodic_chain(const GridDigraph& g, int max_len, std::size_t state_budget) {
  if (max_len < 1) throw std::invalid_argument("find_periodic_chain: max_len must be >= 1");
  const int cells = g.grid().cell_count();

  // Length-1 cycles first: a zero-displacement self-loop.
  for (int c = 0; c < cells; ++c) {
    for (const ChainEdge* e = g.begin(c); e != g.end(c); ++e) {
      if (e->target == c && e->displacement.isZero()) {
        ChainSearchResult res;
        Chain ch;
        ch.cells = {c, c};
        ch.steps = {LatticeVec::Zero()};
        ch.epsilon = g.epsilon();
        res.chain = ch;
        res.states_explored = 1;
        return res;
      }
    }
  }

  const auto arcs = g.arcs();
  const ComponentCycleMeans means(cells, arcs, CycleMeanMethod::automatic);
  const std::vector<LatticeVec> probes{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  std::vector<std::vector<double>> probe_means;
  for (const auto& p : probes) {
    std::vector<double> w(arcs.size());
    for (std::size_t e = 0; e < arcs.size(); ++e) w[e] = static_cast<double>(g.edges()[e].displacement.dot(p));
    probe_means.push_back(means.component_means(w));
  }

  ChainSearchResult best;
  best.window = 0;
  int limit = max_len;
  std::vector<char> in_comp(static_cast<std::size_t>(cells), 0);
  for (std::size_t ci = 0; ci < means.cyclic_components().size(); ++ci) {
    const auto& comp = means.cyclic_components()[ci];
    // A zero cycle has mean 0 in every direction. Integer weights make every
    // cycle mean a fraction with denominator <= |comp|, so a maximum below
    // -1/(2|comp|) is certainly negative.
    const double margin = 0.5 / static_cast<double>(comp.size());
    const bool excluded = std::any_of(probe_means.begin(), probe_means.end(),
                                      [&](const auto& m) { return m[ci] < -margin; });
    if (excluded) continue;

    for (int v : comp) in_comp[static_cast<std::size_t>(v)] = 1;
    for (int start : comp) {
      if (limit < 1) break;
      const auto search = make_search(g, limit);
      // The cycle's smallest cell is `start`.
      auto res = search.run(start, start, LatticeVec::Zero(), limit, state_budget, [&](int c) {
        return c >= start && in_comp[static_cast<std::size_t>(c)];
      });
      best.states_explored += res.states_explored;
      best.budget_exhausted = best.budget_exhausted || res.budget_exhausted;
      best.window = std::max(best.window, res.window);
      if (res.chain && (!best.chain || res.chain->length() < best.chain->length())) {
        best.chain = std::move(res.chain);
        limit = static_cast<int>(best.chain->length()) - 1;
      }
    }
    for (int v : comp) in_comp[static_cast<std::size_t>(v)] = 0;
  }
  return best;
}

std::vector<double> replay_chain(const LiftMap& f, const Grid& grid, const Chain& c) {
  std::vector<double> out;
  out.reserve(c.steps.size());
  for (std::size_t i = 0; i + 1 < c.cells.size(); ++i) {
    const Vec2 z = grid.center(c.cells[i]);
    const Vec2 zn = grid.center(c.cells[i + 1]);
    out.push_back((f.evaluate(z) - to_real(c.steps[i]) - zn).norm());
  }
  return out;
}

std::optional<RotationSetEstimate> rotation_set_outer(const GridDigraph& g, int directions,
                                                      CycleMeanMethod method) {
  if (directions < 3) throw std::invalid_argument("rotation_set_outer: need >= 3 directions");
  const auto arcs = g.arcs();
  const ComponentCycleMeans means(g.grid().cell_count(), arcs, method);
  if (means.cyclic_components().empty()) return std::nullopt;

  const auto dirs = unit_directions<double>(directions);
  std::vector<double> h(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t j) {
    std::vector<double> w(arcs.size());
    for (std::size_t e = 0; e < arcs.size(); ++e) w[e] = to_real(g.edges()[e].displacement).dot(dirs[j]);
    h[j] = *means.max_mean(w);
  });

  RotationSetEstimate est;
  est.kind = EstimateKind::graph_outer;
  const double box = static_cast<double>(g.max_step()) + 1.0;
  Polygon<double> poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    // Slack keeps a point-like intersection from vanishing under roundoff.
    poly = clip_halfplane(poly, dirs[j], h[j] + 1e-12);
    est.support.push_back({2.0 * std::numbers::pi * static_cast<double>(j) / directions, h[j]});
  }
  est.hull_vertices = convex_hull(poly, 1e-9);
  return est;
}

}  // namespace rotset
