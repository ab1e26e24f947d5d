#include "adk/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "adk/errors.hpp"

namespace adk {

namespace {

int find_label(const std::vector<std::string>& labels, const std::string& label) {
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] == label) return i;
  }
  return -1;
}

/// Product of per-node state counts, saturating at 2^63-1; throws when it
/// exceeds the budget.
std::uint64_t checked_state_count(const std::vector<std::size_t>& sizes,
                                  long long budget, const char* op) {
  constexpr std::uint64_t cap = ~0ULL >> 1;
  std::uint64_t product = 1;
  for (std::size_t s : sizes) {
    if (s == 0) continue;
    product = (product > cap / s) ? cap : product * s;
  }
  if (budget >= 0 && product > static_cast<std::uint64_t>(budget)) {
    throw budget_error(std::string(op) + " needs " + std::to_string(product) +
                           " states, budget is " + std::to_string(budget),
                       product, static_cast<std::uint64_t>(budget));
  }
  return product;
}

/// Mixed-radix counter over per-digit weights, keeping suffix products so a
/// step costs O(1) multiplications amortized.
class WeightedOdometer {
 public:
  explicit WeightedOdometer(std::vector<std::vector<Rational>> weights)
      : weights_(std::move(weights)),
        digit_(weights_.size(), 0),
        suffix_(weights_.size() + 1, Rational(1)) {
    refresh_from(static_cast<int>(weights_.size()) - 1);
  }

  int digit(int i) const { return digit_[i]; }
  const Rational& weight() const { return suffix_[0]; }

  bool advance() {
    const int n = static_cast<int>(weights_.size());
    for (int i = 0; i < n; ++i) {
      if (digit_[i] + 1 < static_cast<int>(weights_[i].size())) {
        ++digit_[i];
        std::fill(digit_.begin(), digit_.begin() + i, 0);
        refresh_from(i);
        return true;
      }
    }
    return false;
  }

 private:
  void refresh_from(int i) {
    for (; i >= 0; --i) {
      suffix_[i] = weights_[i].empty() ? suffix_[i + 1]
                                       : weights_[i][digit_[i]] * suffix_[i + 1];
    }
  }

  std::vector<std::vector<Rational>> weights_;
  std::vector<int> digit_;
  std::vector<Rational> suffix_;
};

SpreadResult collect_spread(const std::unordered_map<std::uint32_t, Rational>& mass,
                            int n) {
  SpreadResult out;
  out.per_node.assign(n, Rational(0));
  for (const auto& [mask, weight] : mass) {
    for (int v = 0; v < n; ++v) {
      if (mask & (1u << v)) out.per_node[v] += weight;
    }
  }
  out.sigma = Rational(0);
  for (const auto& p : out.per_node) out.sigma += p;
  return out;
}

void check_seed_mask(const DirectedGraph& g, std::uint32_t seeds) {
  if ((seeds | g.all_nodes()) != g.all_nodes()) {
    throw std::invalid_argument("seed mask outside the node set");
  }
}

}  // namespace

DirectedGraph::DirectedGraph(int n, std::vector<std::uint32_t> in_masks)
    : n_(n), in_masks_(std::move(in_masks)) {
  if (n < 0 || n > 20) throw std::invalid_argument("node count must be 0..20");
  if (in_masks_.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("need one in-neighbor mask per node");
  }
  for (int v = 0; v < n; ++v) {
    if ((in_masks_[v] | all_nodes()) != all_nodes()) {
      throw std::invalid_argument("in-neighbor mask outside the node set");
    }
    if (in_masks_[v] & (1u << v)) {
      throw std::invalid_argument("self-loop on node " + std::to_string(v));
    }
  }
}

std::vector<int> DirectedGraph::in_list(int v) const {
  std::vector<int> out;
  const std::uint32_t mask = in_mask(v);
  for (int u = 0; u < n_; ++u) {
    if (mask & (1u << u)) out.push_back(u);
  }
  return out;
}

std::uint32_t DirectedGraph::out_mask(int v) const {
  std::uint32_t out = 0;
  for (int w = 0; w < n_; ++w) {
    if (in_masks_[w] & (1u << v)) out |= 1u << w;
  }
  return out;
}

int DirectedGraph::edge_count() const {
  int total = 0;
  for (int v = 0; v < n_; ++v) total += in_degree(v);
  return total;
}

std::uint32_t DirectedGraph::to_local(int v, std::uint32_t global_mask) const {
  std::uint32_t local = 0;
  int bit = 0;
  std::uint32_t in = in_mask(v);
  while (in) {
    const std::uint32_t lowest = in & -in;
    if (global_mask & lowest) local |= 1u << bit;
    in ^= lowest;
    ++bit;
  }
  return local;
}

std::uint32_t DirectedGraph::to_global(int v, std::uint32_t local_mask) const {
  std::uint32_t global = 0;
  int bit = 0;
  std::uint32_t in = in_mask(v);
  while (in) {
    const std::uint32_t lowest = in & -in;
    if (local_mask & (1u << bit)) global |= lowest;
    in ^= lowest;
    ++bit;
  }
  return global;
}

int GTInstance::node_by_label(const std::string& label) const {
  return find_label(labels, label);
}

int TriggeringInstance::node_by_label(const std::string& label) const {
  return find_label(labels, label);
}

namespace {

/// Checks shared by both instance kinds: table shape and ground alignment.
bool check_table_frame(const DirectedGraph& g, const std::vector<std::string>& labels,
                       const std::vector<SetFunction>& tables, int v,
                       std::vector<GtProblem>& problems) {
  const auto& t = tables[v];
  if (g.in_degree(v) > k_max_indegree) {
    problems.push_back({v, "in-degree " + std::to_string(g.in_degree(v)) +
                               " exceeds cap " + std::to_string(k_max_indegree)});
    return false;
  }
  if (t.n() != g.in_degree(v)) {
    problems.push_back({v, "table ground has " + std::to_string(t.n()) +
                               " elements, in-degree is " +
                               std::to_string(g.in_degree(v))});
    return false;
  }
  const auto in = g.in_list(v);
  for (int i = 0; i < static_cast<int>(in.size()); ++i) {
    if (t.ground().label(i) != labels[in[i]]) {
      problems.push_back({v, "table ground label " + std::to_string(i) + " is '" +
                                 t.ground().label(i) + "', expected '" +
                                 labels[in[i]] + "'"});
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<GtProblem> validate_gt(const GTInstance& inst) {
  std::vector<GtProblem> problems;
  const int n = inst.n();
  if (static_cast<int>(inst.labels.size()) != n ||
      static_cast<int>(inst.thresholds.size()) != n) {
    problems.push_back({0, "labels/thresholds count does not match node count"});
    return problems;
  }
  for (int v = 0; v < n; ++v) {
    if (!check_table_frame(inst.graph, inst.labels, inst.thresholds, v, problems)) {
      continue;
    }
    const auto& f = inst.thresholds[v];
    if (sgn(f.at(0)) != 0) {
      problems.push_back({v, "threshold of the empty set must be 0"});
    }
    if (!f.values_in_unit_interval()) {
      problems.push_back({v, "threshold values must lie in [0,1]"});
    }
    if (!f.is_monotone()) {
      problems.push_back({v, "threshold table is not monotone"});
    }
  }
  return problems;
}

std::vector<GtProblem> validate_triggering(const TriggeringInstance& inst) {
  std::vector<GtProblem> problems;
  const int n = inst.n();
  if (static_cast<int>(inst.labels.size()) != n ||
      static_cast<int>(inst.distributions.size()) != n) {
    problems.push_back({0, "labels/distributions count does not match node count"});
    return problems;
  }
  for (int v = 0; v < n; ++v) {
    if (!check_table_frame(inst.graph, inst.labels, inst.distributions, v, problems)) {
      continue;
    }
    const auto& q = inst.distributions[v];
    Rational total(0);
    bool negative = false;
    for (std::uint32_t m = 0; m < q.table_size(); ++m) {
      if (sgn(q.at(m)) < 0) negative = true;
      total += q.at(m);
    }
    if (negative) problems.push_back({v, "triggering weights must be nonnegative"});
    if (total != 1) {
      problems.push_back({v, "triggering weights sum to " + rational_to_string(total) +
                                 ", off from 1 by " +
                                 rational_to_string(Rational(1) - total)});
    }
  }
  return problems;
}

std::uint32_t cascade(const GTInstance& inst, std::uint32_t seeds,
                      const std::vector<Rational>& levels) {
  check_seed_mask(inst.graph, seeds);
  if (levels.size() != static_cast<std::size_t>(inst.n())) {
    throw std::invalid_argument("need one level per node");
  }
  std::uint32_t active = seeds;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < inst.n(); ++v) {
      const std::uint32_t bit = 1u << v;
      if (active & bit) continue;
      if (inst.threshold_at(v, active) >= levels[v]) {
        active |= bit;
        changed = true;
      }
    }
  }
  return active;
}

SpreadResult exact_spread(const GTInstance& inst, std::uint32_t seeds,
                          long long budget) {
  check_seed_mask(inst.graph, seeds);
  const int n = inst.n();

  // Per node: interval upper endpoints (breakpoints), interval weights, and
  // a rank table so the cascade inner loop is integer-only.  rank[mask] >= a
  // iff the threshold value reaches breakpoint a (1-based).
  std::vector<std::vector<Rational>> weights(n);
  std::vector<std::vector<int>> rank(n);
  std::vector<std::size_t> sizes(n);
  for (int v = 0; v < n; ++v) {
    if (seeds & (1u << v)) {
      weights[v] = {Rational(1)};  // level is irrelevant for a seed
      sizes[v] = 1;
      continue;
    }
    const auto& f = inst.thresholds[v];
    std::vector<Rational> points(f.values());
    points.emplace_back(1);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (sgn(points.front()) == 0) points.erase(points.begin());

    weights[v].reserve(points.size());
    Rational prev(0);
    for (const auto& b : points) {
      weights[v].push_back(b - prev);
      prev = b;
    }
    rank[v].assign(f.table_size(), 0);
    for (std::uint32_t m = 0; m < f.table_size(); ++m) {
      const auto it = std::upper_bound(points.begin(), points.end(), f.at(m));
      rank[v][m] = static_cast<int>(it - points.begin());
    }
    sizes[v] = points.size();
  }
  checked_state_count(sizes, budget, "exact spread");

  std::unordered_map<std::uint32_t, Rational> mass;
  WeightedOdometer odo(std::move(weights));
  do {
    std::uint32_t active = seeds;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        const std::uint32_t bit = 1u << v;
        if (active & bit) continue;
        const std::uint32_t local = inst.graph.to_local(v, active);
        if (rank[v][local] >= odo.digit(v) + 1) {
          active |= bit;
          changed = true;
        }
      }
    }
    mass[active] += odo.weight();
  } while (odo.advance());

  return collect_spread(mass, n);
}

void check_layering(const DirectedGraph& g, const LayerAssignment& la) {
  if (la.layer.size() != static_cast<std::size_t>(g.n())) {
    throw std::invalid_argument("layer assignment size does not match node count");
  }
  if (la.layer_count < 1) throw std::invalid_argument("need at least one layer");
  for (int v = 0; v < g.n(); ++v) {
    if (la.layer[v] < 1 || la.layer[v] > la.layer_count) {
      throw std::invalid_argument("layer label out of range on node " +
                                  std::to_string(v));
    }
    for (int u : g.in_list(v)) {
      if (la.layer[u] != la.layer[v] + 1) {
        throw std::invalid_argument("edge " + std::to_string(u) + "->" +
                                    std::to_string(v) +
                                    " does not step down one layer");
      }
    }
  }
}

Rational layered_activation(const GTInstance& inst, const LayerAssignment& la,
                            std::uint32_t bottom_seeds, int target) {
  check_layering(inst.graph, la);
  check_seed_mask(inst.graph, bottom_seeds);
  const int n = inst.n();
  if (target < 0 || target >= n) throw std::invalid_argument("bad target node");
  const int m = la.m();
  std::vector<std::vector<int>> layer_nodes(m + 1);
  for (int v = 0; v < n; ++v) layer_nodes[la.layer[v]].push_back(v);
  for (int v = 0; v < n; ++v) {
    if ((bottom_seeds & (1u << v)) && la.layer[v] != m) {
      throw std::invalid_argument("seed node " + std::to_string(v) +
                                  " is not in the bottom layer");
    }
  }

  const int start = la.layer[target];
  auto local_index = [&](const std::vector<int>& nodes, int v) {
    return static_cast<int>(std::find(nodes.begin(), nodes.end(), v) -
                            nodes.begin());
  };
  if (start == m) {
    const int pos = local_index(layer_nodes[m], target);
    std::uint32_t seeds_local = 0;
    for (std::size_t i = 0; i < layer_nodes[m].size(); ++i) {
      if (bottom_seeds & (1u << layer_nodes[m][i])) seeds_local |= 1u << i;
    }
    return Rational((seeds_local >> pos) & 1u);
  }

  // table[mask] = activation probability of target given that the active set
  // of the current layer is exactly `mask`; push the layer index down to m.
  std::vector<Rational> table(1u << layer_nodes[start].size());
  const int target_pos = local_index(layer_nodes[start], target);
  for (std::uint32_t msk = 0; msk < table.size(); ++msk) {
    table[msk] = Rational((msk >> target_pos) & 1u);
  }
  for (int j = start + 1; j <= m; ++j) {
    const auto& upper = layer_nodes[j];      // the layer being conditioned on
    const auto& lower = layer_nodes[j - 1];  // previous table's layer
    std::vector<Rational> next(1u << upper.size());
    for (std::uint32_t msk = 0; msk < next.size(); ++msk) {
      std::uint32_t global = 0;
      for (std::size_t i = 0; i < upper.size(); ++i) {
        if (msk & (1u << i)) global |= 1u << upper[i];
      }
      // Fold the previous table against each lower node's activation
      // probability given this upper active set.
      std::vector<Rational> fold = table;
      for (int i = static_cast<int>(lower.size()) - 1; i >= 0; --i) {
        const Rational p = inst.threshold_at(lower[i], global);
        const std::uint32_t half = 1u << i;
        for (std::uint32_t t = 0; t < half; ++t) {
          fold[t] += p * (fold[t | half] - fold[t]);
        }
        fold.resize(half);
      }
      next[msk] = fold[0];
    }
    table = std::move(next);
  }

  std::uint32_t seeds_local = 0;
  for (std::size_t i = 0; i < layer_nodes[m].size(); ++i) {
    if (bottom_seeds & (1u << layer_nodes[m][i])) seeds_local |= 1u << i;
  }
  return table[seeds_local];
}

MonteCarloSpread monte_carlo_spread(const GTInstance& inst, std::uint32_t seeds,
                                    long long trials, std::uint64_t seed) {
  check_seed_mask(inst.graph, seeds);
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  const int n = inst.n();
  std::vector<std::vector<double>> table(n);
  for (int v = 0; v < n; ++v) {
    table[v].reserve(inst.thresholds[v].table_size());
    for (const auto& r : inst.thresholds[v].values()) {
      table[v].push_back(rational_to_double(r));
    }
  }

  long double sum = 0, sum_sq = 0;
  std::vector<double> level(n);
  for (long long t = 0; t < trials; ++t) {
    for (int v = 0; v < n; ++v) {
      level[v] = unit_double(
          mix64(hash_combine(hash_combine(seed, static_cast<std::uint64_t>(t)),
                             static_cast<std::uint64_t>(v))));
    }
    std::uint32_t active = seeds;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        const std::uint32_t bit = 1u << v;
        if (active & bit) continue;
        if (table[v][inst.graph.to_local(v, active)] >= level[v]) {
          active |= bit;
          changed = true;
        }
      }
    }
    const int count = popcount(active);
    sum += count;
    sum_sq += static_cast<long double>(count) * count;
  }

  MonteCarloSpread out;
  out.trials = trials;
  out.seed = seed;
  out.mean = static_cast<double>(sum / trials);
  if (trials > 1) {
    const long double var =
        std::max<long double>(0, (sum_sq - sum * sum / trials) / (trials - 1));
    out.std_error = static_cast<double>(std::sqrt(var / trials));
  }
  return out;
}

namespace {

/// Support masks and weights of each node's triggering distribution.
void triggering_support(const TriggeringInstance& inst,
                        std::vector<std::vector<std::uint32_t>>& masks,
                        std::vector<std::vector<Rational>>& weights,
                        std::vector<std::size_t>& sizes) {
  const int n = inst.n();
  masks.assign(n, {});
  weights.assign(n, {});
  sizes.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    const auto& q = inst.distributions[v];
    for (std::uint32_t m = 0; m < q.table_size(); ++m) {
      if (sgn(q.at(m)) != 0) {
        masks[v].push_back(m);
        weights[v].push_back(q.at(m));
      }
    }
    if (masks[v].empty()) {
      throw std::invalid_argument("node " + std::to_string(v) +
                                  " has an empty triggering distribution");
    }
    sizes[v] = masks[v].size();
  }
}

}  // namespace

SpreadResult live_edge_spread(const TriggeringInstance& inst, std::uint32_t seeds,
                              long long budget) {
  check_seed_mask(inst.graph, seeds);
  const int n = inst.n();
  std::vector<std::vector<std::uint32_t>> masks;
  std::vector<std::vector<Rational>> weights;
  std::vector<std::size_t> sizes;
  triggering_support(inst, masks, weights, sizes);
  checked_state_count(sizes, budget, "live-edge spread");

  std::unordered_map<std::uint32_t, Rational> mass;
  WeightedOdometer odo(weights);
  do {
    std::uint32_t active = seeds;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        const std::uint32_t bit = 1u << v;
        if (active & bit) continue;
        if (inst.graph.to_local(v, active) & masks[v][odo.digit(v)]) {
          active |= bit;
          changed = true;
        }
      }
    }
    mass[active] += odo.weight();
  } while (odo.advance());

  return collect_spread(mass, n);
}

SetFunction reach_distribution(const TriggeringInstance& inst, int target,
                               long long budget) {
  const int n = inst.n();
  if (target < 0 || target >= n) throw std::invalid_argument("bad target node");
  std::vector<std::vector<std::uint32_t>> masks;
  std::vector<std::vector<Rational>> weights;
  std::vector<std::size_t> sizes;
  triggering_support(inst, masks, weights, sizes);
  checked_state_count(sizes, budget, "reach distribution");

  SetFunction dist = SetFunction::zero(GroundSet(inst.labels));
  WeightedOdometer odo(weights);
  do {
    // Walk live edges backwards from the target to its ancestor set.
    std::uint32_t anc = 1u << target;
    bool changed = true;
    while (changed) {
      changed = false;
      std::uint32_t grown = anc;
      for (int v = 0; v < n; ++v) {
        if (anc & (1u << v)) {
          grown |= inst.graph.to_global(v, masks[v][odo.digit(v)]);
        }
      }
      if (grown != anc) {
        anc = grown;
        changed = true;
      }
    }
    dist.set(anc, dist.at(anc) + odo.weight());
  } while (odo.advance());

  return dist;
}

}  // namespace adk
