#include "rotset/cycle_mean.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotset {

std::vector<std::vector<int>> strongly_connected_components(int num_vertices,
                                                            const std::vector<Arc>& arcs) {
  const auto n = static_cast<std::size_t>(num_vertices);
  std::vector<std::size_t> offset(n + 1, 0);
  for (const auto& a : arcs) ++offset[static_cast<std::size_t>(a.from) + 1];
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
  std::vector<int> succ(arcs.size());
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (const auto& a : arcs) succ[fill[static_cast<std::size_t>(a.from)]++] = a.to;
  }

  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;  // (vertex, next successor slot)
  std::vector<std::vector<int>> out;
  int counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(static_cast<int>(root), offset[root]);
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<int>(root));
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, slot] = call.back();
      const auto vi = static_cast<std::size_t>(v);
      if (slot < offset[vi + 1]) {
        const auto w = static_cast<std::size_t>(succ[slot++]);
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(static_cast<int>(w));
          on_stack[w] = 1;
          call.emplace_back(static_cast<int>(w), offset[w]);
        } else if (on_stack[w]) {
          low[vi] = std::min(low[vi], index[w]);
        }
        continue;
      }
      if (low[vi] == index[vi]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().first);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return out;
}

bool component_has_cycle(const std::vector<int>& component, const std::vector<Arc>& arcs) {
  if (component.size() > 1) return true;
  if (component.empty()) return false;
  const int v = component.front();
  return std::any_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.from == v && a.to == v; });
}

std::optional<double> howard_max_cycle_mean(int num_vertices, const std::vector<Arc>& arcs,
                                            const std::vector<double>& weights) {
  const auto n = static_cast<std::size_t>(num_vertices);
  if (n == 0) return std::nullopt;
  std::vector<std::size_t> offset(n + 1, 0);
  for (const auto& a : arcs) ++offset[static_cast<std::size_t>(a.from) + 1];
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
  std::vector<std::size_t> out_arc(arcs.size());
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t e = 0; e < arcs.size(); ++e) out_arc[fill[static_cast<std::size_t>(arcs[e].from)]++] = e;
  }
  double wmax = 0.0;
  for (double w : weights) wmax = std::max(wmax, std::abs(w));
  const double tol = 1e-11 * (1.0 + wmax);

  std::vector<std::size_t> policy(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (offset[v] == offset[v + 1]) return std::nullopt;  // not strongly connected
    std::size_t best = out_arc[offset[v]];
    for (std::size_t s = offset[v]; s < offset[v + 1]; ++s)
      if (weights[out_arc[s]] > weights[best]) best = out_arc[s];
    policy[v] = best;
  }

  std::vector<double> eta(n), bias(n);
  std::vector<char> state(n);
  std::vector<std::size_t> path, pos(n);
  const int max_rounds = 100000;
  for (int round = 0; round < max_rounds; ++round) {
    // Value determination on the functional graph of the policy.
    std::fill(state.begin(), state.end(), 0);
    for (std::size_t start = 0; start < n; ++start) {
      if (state[start]) continue;
      path.clear();
      std::size_t u = start;
      while (state[u] == 0) {
        state[u] = 1;
        pos[u] = path.size();
        path.push_back(u);
        u = static_cast<std::size_t>(arcs[policy[u]].to);
      }
      std::size_t prefix = path.size();
      if (state[u] == 1) {
        prefix = pos[u];
        double sum = 0.0;
        for (std::size_t i = prefix; i < path.size(); ++i) sum += weights[policy[path[i]]];
        const double mean = sum / static_cast<double>(path.size() - prefix);
        bias[u] = 0.0;
        eta[u] = mean;
        state[u] = 2;
        for (std::size_t i = path.size() - 1; i > prefix; --i) {
          const std::size_t c = path[i];
          const auto next = static_cast<std::size_t>(arcs[policy[c]].to);
          eta[c] = mean;
          bias[c] = weights[policy[c]] - mean + bias[next];
          state[c] = 2;
        }
      }
      for (std::size_t i = prefix; i-- > 0;) {
        const std::size_t c = path[i];
        const auto next = static_cast<std::size_t>(arcs[policy[c]].to);
        eta[c] = eta[next];
        bias[c] = weights[policy[c]] - eta[next] + bias[next];
        state[c] = 2;
      }
    }

    // Policy improvement: first on cycle means, then on biases.
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t best = policy[v];
      double best_eta = eta[v];
      for (std::size_t s = offset[v]; s < offset[v + 1]; ++s) {
        const std::size_t e = out_arc[s];
        const double cand = eta[static_cast<std::size_t>(arcs[e].to)];
        if (cand > best_eta + tol) {
          best_eta = cand;
          best = e;
        }
      }
      if (best == policy[v]) {
        double best_val = bias[v];
        for (std::size_t s = offset[v]; s < offset[v + 1]; ++s) {
          const std::size_t e = out_arc[s];
          const auto to = static_cast<std::size_t>(arcs[e].to);
          if (std::abs(eta[to] - eta[v]) > tol) continue;
          const double val = weights[e] - eta[v] + bias[to];
          if (val > best_val + tol) {
            best_val = val;
            best = e;
          }
        }
      }
      if (best != policy[v]) {
        policy[v] = best;
        changed = true;
      }
    }
    if (!changed) return *std::max_element(eta.begin(), eta.end());
  }
  throw std::runtime_error("howard_max_cycle_mean: policy iteration did not converge");
}

ComponentCycleMeans::ComponentCycleMeans(int num_vertices, const std::vector<Arc>& arcs,
                                         CycleMeanMethod method, double karp_work_limit)
    : method_(method), karp_work_limit_(karp_work_limit) {
  const auto sccs = strongly_connected_components(num_vertices, arcs);
  std::vector<int> comp_of(static_cast<std::size_t>(num_vertices), -1);
  std::vector<int> local(static_cast<std::size_t>(num_vertices), -1);
  for (const auto& c : sccs) {
    if (!component_has_cycle(c, arcs)) continue;
    const int id = static_cast<int>(components_.size());
    Component comp;
    comp.size = static_cast<int>(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      comp_of[static_cast<std::size_t>(c[i])] = id;
      local[static_cast<std::size_t>(c[i])] = static_cast<int>(i);
    }
    components_.push_back(std::move(comp));
    members_.push_back(c);
  }
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    const int cf = comp_of[static_cast<std::size_t>(arcs[e].from)];
    if (cf < 0 || cf != comp_of[static_cast<std::size_t>(arcs[e].to)]) continue;
    auto& comp = components_[static_cast<std::size_t>(cf)];
    comp.local_arcs.push_back({local[static_cast<std::size_t>(arcs[e].from)],
                               local[static_cast<std::size_t>(arcs[e].to)]});
    comp.arc_index.push_back(e);
  }
}

double ComponentCycleMeans::solve_component(const Component& c, const std::vector<double>& weights) const {
  std::vector<double> w(c.arc_index.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weights[c.arc_index[i]];
  bool use_karp = method_ == CycleMeanMethod::karp;
  if (method_ == CycleMeanMethod::automatic)
    use_karp = static_cast<double>(c.size) * static_cast<double>(w.size()) <= karp_work_limit_;
  const auto res = use_karp ? karp_max_cycle_mean(c.size, c.local_arcs, w)
                            : howard_max_cycle_mean(c.size, c.local_arcs, w);
  if (!res) throw std::logic_error("cycle mean requested on an acyclic component");
  return *res;
}

std::vector<double> ComponentCycleMeans::component_means(const std::vector<double>& weights) const {
  std::vector<double> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(solve_component(c, weights));
  return out;
}

std::optional<double> ComponentCycleMeans::max_mean(const std::vector<double>& weights) const {
  const auto means = component_means(weights);
  if (means.empty()) return std::nullopt;
  return *std::max_element(means.begin(), means.end());
}

}  // namespace rotset
