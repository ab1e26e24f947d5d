#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adk/rational.hpp"
#include "adk/rng.hpp"
#include "adk/setfn.hpp"

namespace adk {

inline constexpr long long k_default_budget = 10'000'000;
inline constexpr int k_max_indegree = 12;

/// Directed graph on at most 20 nodes; in_mask[v] is the bitmask of v's
/// in-neighbors.  Self-loops are rejected.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(int n, std::vector<std::uint32_t> in_masks);

  int n() const { return n_; }
  std::uint32_t all_nodes() const { return n_ == 0 ? 0u : ((1u << n_) - 1u); }
  std::uint32_t in_mask(int v) const { return in_masks_.at(v); }
  int in_degree(int v) const { return popcount(in_masks_.at(v)); }
  /// In-neighbors in ascending node order; position in this list is the
  /// node's bit in every local (per-node) mask.
  std::vector<int> in_list(int v) const;
  std::uint32_t out_mask(int v) const;
  int edge_count() const;

  /// Compresses a global node mask to v's local in-neighbor mask.
  std::uint32_t to_local(int v, std::uint32_t global_mask) const;
  /// Expands a local in-neighbor mask of v to a global node mask.
  std::uint32_t to_global(int v, std::uint32_t local_mask) const;

 private:
  int n_ = 0;
  std::vector<std::uint32_t> in_masks_;
};

/// General-threshold instance: per node a threshold table over its
/// in-neighborhood.  thresholds[v].ground() lists IN(v)'s labels in
/// ascending node order.
struct GTInstance {
  DirectedGraph graph;
  std::vector<std::string> labels;
  std::vector<SetFunction> thresholds;

  int n() const { return graph.n(); }
  int node_by_label(const std::string& label) const;
  /// Threshold of v fed with a global active-set mask.
  const Rational& threshold_at(int v, std::uint32_t active_global) const {
    return thresholds[v].at(graph.to_local(v, active_global));
  }
};

/// Triggering-set instance: per node a distribution over subsets of its
/// in-neighborhood (dense table over local masks).
struct TriggeringInstance {
  DirectedGraph graph;
  std::vector<std::string> labels;
  std::vector<SetFunction> distributions;

  int n() const { return graph.n(); }
  int node_by_label(const std::string& label) const;
};

struct GtProblem {
  int node = 0;
  std::string what;
};

/// Structural checks for a general-threshold instance: table sizes, range,
/// monotonicity, f(empty) = 0, in-degree cap, ground labels aligned with the
/// graph.  Empty result means valid.
std::vector<GtProblem> validate_gt(const GTInstance& inst);

/// Same checks for a triggering instance: nonnegative weights summing to 1.
std::vector<GtProblem> validate_triggering(const TriggeringInstance& inst);

/// Deterministic cascade: node v joins once its threshold value at the
/// current active set reaches level[v] (weak inequality); seeds are active
/// outright.  Progressive, so the result is the unique fixpoint.
std::uint32_t cascade(const GTInstance& inst, std::uint32_t seeds,
                      const std::vector<Rational>& levels);

struct SpreadResult {
  Rational sigma;                  // expected number of active nodes
  std::vector<Rational> per_node;  // activation probability of each node
};

/// One cell of the level-space decomposition used by the exact oracle: node
/// v's level falls in the half-open interval ending at its `index`-th
/// smallest distinct threshold value (1-based; the last interval ends at 1).
struct BreakpointAssignment {
  std::vector<int> index;
  Rational weight;
};

/// Exact expected spread under independent uniform levels, by enumerating
/// the product of per-node breakpoint intervals.  Throws budget_error when
/// the interval product exceeds `budget` cells.
SpreadResult exact_spread(const GTInstance& inst, std::uint32_t seeds,
                          long long budget = k_default_budget);

/// Layer labels 1 (top) .. m (bottom); edges must go from layer i+1 to
/// layer i.
struct LayerAssignment {
  std::vector<int> layer;
  int layer_count = 0;

  int m() const { return layer_count; }
};

void check_layering(const DirectedGraph& g, const LayerAssignment& la);

/// Activation probability of `target` when the bottom layer is seeded with
/// `bottom_seeds` (a global mask supported on layer m), computed by the
/// layer-by-layer sum over intermediate active sets, not by level
/// enumeration.
Rational layered_activation(const GTInstance& inst, const LayerAssignment& la,
                            std::uint32_t bottom_seeds, int target);

struct MonteCarloSpread {
  double mean = 0.0;
  double std_error = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the spread; levels are derived counter-style from
/// (seed, trial, node), so results are reproducible and independent of
/// evaluation order.
MonteCarloSpread monte_carlo_spread(const GTInstance& inst, std::uint32_t seeds,
                                    long long trials, std::uint64_t seed);

/// Exact spread of a triggering instance by enumerating the product of
/// per-node triggering-set supports; an edge (u,v) is live when u is in v's
/// sampled set, and a node activates when a live path reaches a seed.
SpreadResult live_edge_spread(const TriggeringInstance& inst, std::uint32_t seeds,
                              long long budget = k_default_budget);

/// Distribution of the ancestor set of `target`: R(T) = probability that the
/// set of nodes with a live path into `target` (including itself) is exactly
/// T.  Ground set = all node labels.
SetFunction reach_distribution(const TriggeringInstance& inst, int target,
                               long long budget = k_default_budget);

}  // namespace adk
