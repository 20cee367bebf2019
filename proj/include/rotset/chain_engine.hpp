#ifndef ROTSET_CHAIN_ENGINE_HPP
#define ROTSET_CHAIN_ENGINE_HPP

#include "rotset/cycle_mean.hpp"
#include "rotset/estimators.hpp"
#include "rotset/lift_map.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rotset {

/// N x N cells over [0,1)^2. Cell (i, j) = [i/N,(i+1)/N) x [j/N,(j+1)/N) has
/// id j*N + i.
class Grid {
 public:
  explicit Grid(int resolution);

  int resolution() const { return n_; }
  int cell_count() const { return n_ * n_; }
  double side() const { return 1.0 / n_; }
  int id(int i, int j) const { return j * n_ + i; }
  int column(int cell) const { return cell % n_; }
  int row(int cell) const { return cell / n_; }
  Vec2 center(int cell) const { return {(column(cell) + 0.5) / n_, (row(cell) + 0.5) / n_}; }
  /// Cell containing the torus projection of x.
  int cell_of(const Vec2& x) const;

 private:
  int n_;
};

struct ChainEdge {
  int target = 0;
  LatticeVec displacement = LatticeVec::Zero();
};

/// Directed graph of epsilon-transitions between cell centers. An edge
/// (c -> c', w) exists iff |F(center c) - (center c' + w)| < epsilon, with w
/// the lattice vector closest to F(center c) - center c'. Edges of a cell are
/// sorted by target id. Immutable after construction.
class GridDigraph {
 public:
  GridDigraph(Grid grid, double epsilon, std::vector<std::size_t> offsets, std::vector<ChainEdge> edges);

  const Grid& grid() const { return grid_; }
  double epsilon() const { return epsilon_; }
  /// epsilon + h sqrt 2: the chain tolerance valid for any points in the cells.
  double effective_epsilon() const;
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t out_degree(int cell) const;
  const ChainEdge* begin(int cell) const { return edges_.data() + offsets_[static_cast<std::size_t>(cell)]; }
  const ChainEdge* end(int cell) const { return edges_.data() + offsets_[static_cast<std::size_t>(cell) + 1]; }
  /// Largest |component| over all edge displacements.
  std::int64_t max_step() const { return max_step_; }
  /// Edge list as arcs (source order), aligned with edges().
  std::vector<Arc> arcs() const;
  const std::vector<ChainEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& offsets() const { return offsets_; }

 private:
  Grid grid_;
  double epsilon_;
  std::vector<std::size_t> offsets_;
  std::vector<ChainEdge> edges_;
  std::int64_t max_step_ = 0;
};

/// Throws std::invalid_argument unless epsilon > 0 and N >= 2.
GridDigraph build_chain_graph(const LiftMap& f, int resolution, double epsilon);

/// A finite epsilon-chain through cell centers, with its lattice ledger.
struct Chain {
  std::vector<int> cells;
  std::vector<LatticeVec> steps;  // steps[i] is the lattice part of edge cells[i] -> cells[i+1]
  LatticeVec displacement = LatticeVec::Zero();
  double epsilon = 0.0;

  std::size_t length() const { return steps.size(); }
  bool periodic() const { return !cells.empty() && cells.front() == cells.back() && displacement.isZero(); }
};

/// Single-cell chain with zero displacement.
Chain trivial_chain(int cell, double epsilon);

struct ChainSearchResult {
  std::optional<Chain> chain;
  std::size_t states_explored = 0;
  bool budget_exhausted = false;  // state budget hit before the search completed
  std::int64_t window = 0;        // displacement clamp D
};

inline constexpr std::size_t kDefaultStateBudget = 20'000'000;

/// Shortest chain from `start` to `target_cell` with ledger `target_disp`, by
/// breadth-first search over (cell, displacement) states with displacement
/// clamped to [-D, D]^2, D = max_len * max_step. Ties are broken
/// lexicographically by (length, cell id, displacement).
ChainSearchResult find_chain_to_target(const GridDigraph& g, int start, int target_cell,
                                       const LatticeVec& target_disp, int max_len,
                                       std::size_t state_budget = kDefaultStateBudget);

/// a followed by b (lattice-translated so b starts where a ends). Throws
/// std::invalid_argument when the last cell of a differs from the first of b.
Chain translate_concat(const Chain& a, const Chain& b);

/// `times` translated copies of a closed-on-the-torus chain, times >= 1.
Chain repeat_chain(const Chain& c, std::int64_t times);

struct SteinitzCombination {
  std::vector<std::int64_t> weights;
};

/// Positive integers A_i with sum A_i w_i = 0, minimising sum A_i over the
/// rationals (A_i >= 1) and clearing denominators. Empty when infeasible.
std::optional<SteinitzCombination> steinitz_combination(const std::vector<LatticeVec>& vectors);

/// Concatenates weights[i] copies of chains[i] in order. Every chain must
/// start and end on the same cell as chains[0]. With a Steinitz combination
/// of the ledgers, the result is a periodic chain.
Chain combine_chains(const std::vector<Chain>& chains, const std::vector<std::int64_t>& weights);

/// Shortest cycle of length >= 1 with zero net displacement. Components
/// whose directional maximum cycle mean is negative in some axis or diagonal
/// direction cannot carry one and are skipped.
ChainSearchResult find_periodic_chain(const GridDigraph& g, int max_len,
                                      std::size_t state_budget = kDefaultStateBudget);

/// Per-step residuals |F(z_i) - w_i - z_{i+1}| at cell centers.
std::vector<double> replay_chain(const LiftMap& f, const Grid& grid, const Chain& c);

/// Outer approximation: for k directions theta_j, h(theta_j) is the maximum
/// cycle mean of <w, theta_j> over the cyclic SCCs; the polygon is the
/// intersection of the half-planes <v, theta_j> <= h(theta_j). Empty when the
/// graph has no cycle. Throws std::invalid_argument for k < 3.
std::optional<RotationSetEstimate> rotation_set_outer(const GridDigraph& g, int directions,
                                                      CycleMeanMethod method = CycleMeanMethod::automatic);

}  // namespace rotset

#endif  // ROTSET_CHAIN_ENGINE_HPP
