#ifndef ROTSET_CYCLE_MEAN_HPP
#define ROTSET_CYCLE_MEAN_HPP

#include "rotset/rational.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace rotset {

struct Arc {
  int from = 0;
  int to = 0;
};

/// Strongly connected components (Tarjan, iterative). Components come out in
/// reverse topological order; vertices inside a component are sorted.
std::vector<std::vector<int>> strongly_connected_components(int num_vertices,
                                                            const std::vector<Arc>& arcs);

/// True if the component contains a cycle (size > 1, or a self-loop).
bool component_has_cycle(const std::vector<int>& component, const std::vector<Arc>& arcs);

/// Karp's maximum cycle mean over all cycles of the graph:
///   max_v min_k (D_n(v) - D_k(v)) / (n - k)
/// where D_k(v) is the heaviest walk with exactly k arcs ending at v.
/// O(V E) time, O(V^2) memory. Empty when the graph is acyclic.
template <typename Weight>
std::optional<Weight> karp_max_cycle_mean(int num_vertices, const std::vector<Arc>& arcs,
                                          const std::vector<Weight>& weights) {
  const auto n = static_cast<std::size_t>(num_vertices);
  if (n == 0) return std::nullopt;
  // D[k*n + v]; `reach` marks finite entries.
  std::vector<Weight> d((n + 1) * n, Weight(0));
  std::vector<char> reach((n + 1) * n, 0);
  for (std::size_t v = 0; v < n; ++v) reach[v] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t prev = (k - 1) * n;
    const std::size_t cur = k * n;
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      const auto u = static_cast<std::size_t>(arcs[e].from);
      const auto v = static_cast<std::size_t>(arcs[e].to);
      if (!reach[prev + u]) continue;
      const Weight cand = d[prev + u] + weights[e];
      if (!reach[cur + v] || cand > d[cur + v]) {
        d[cur + v] = cand;
        reach[cur + v] = 1;
      }
    }
  }
  std::optional<Weight> best;
  for (std::size_t v = 0; v < n; ++v) {
    if (!reach[n * n + v]) continue;
    std::optional<Weight> worst;
    for (std::size_t k = 0; k < n; ++k) {
      if (!reach[k * n + v]) continue;
      const Weight val = (d[n * n + v] - d[k * n + v]) / Weight(static_cast<std::int64_t>(n - k));
      if (!worst || val < *worst) worst = val;
    }
    if (worst && (!best || *worst > *best)) best = worst;
  }
  return best;
}

/// Howard policy iteration for the maximum cycle mean of a strongly connected
/// graph in which every vertex has an outgoing arc. Much faster than Karp on
/// large sparse graphs; the result is the exact mean (up to roundoff) of an
/// optimal cycle.
std::optional<double> howard_max_cycle_mean(int num_vertices, const std::vector<Arc>& arcs,
                                            const std::vector<double>& weights);

enum class CycleMeanMethod { automatic, karp, howard };

/// Maximum cycle mean of a fixed graph under many weightings, evaluated
/// component by component over the SCCs that contain a cycle. The SCC split
/// is computed once at construction. `automatic` uses Karp when V*E of a
/// component is at most karp_work_limit and Howard otherwise.
class ComponentCycleMeans {
 public:
  ComponentCycleMeans(int num_vertices, const std::vector<Arc>& arcs,
                      CycleMeanMethod method = CycleMeanMethod::automatic,
                      double karp_work_limit = 2.0e7);

  /// Max over components; empty if the graph is acyclic. `weights` is indexed
  /// like the constructor's arcs.
  std::optional<double> max_mean(const std::vector<double>& weights) const;

  /// Per-component maxima, aligned with cyclic_components().
  std::vector<double> component_means(const std::vector<double>& weights) const;

  const std::vector<std::vector<int>>& cyclic_components() const { return members_; }

 private:
  struct Component {
    int size = 0;
    std::vector<Arc> local_arcs;
    std::vector<std::size_t> arc_index;  // into the original arc list
  };
  double solve_component(const Component& c, const std::vector<double>& weights) const;

  std::vector<Component> components_;
  std::vector<std::vector<int>> members_;
  CycleMeanMethod method_;
  double karp_work_limit_;
};

}  // namespace rotset

#endif  // ROTSET_CYCLE_MEAN_HPP
