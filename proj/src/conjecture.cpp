#include "adk/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "adk/errors.hpp"
#include "adk/transforms.hpp"

namespace adk {

namespace {

constexpr int k_gen_draws = 10'000;

bool bernoulli(const Rational& p, RngStream& rng) {
  const unsigned long den = p.get_den().get_ui();
  const unsigned long num = p.get_num().get_ui();
  if (den == 0 || p.get_den() != den || p.get_num() != num) {
    throw std::invalid_argument("edge density too fine-grained");
  }
  if (num >= den) return true;
  return rng.below(den) < num;
}

// --- threshold-function proposal families -------------------------------

SetFunction random_distribution(const GroundSet& ground, RngStream& rng) {
  SetFunction q = SetFunction::zero(ground);
  long total = 0;
  std::vector<long> w(q.table_size());
  for (auto& x : w) {
    x = static_cast<long>(rng.below(4));
    total += x;
  }
  if (total == 0) {
    w[q.table_size() - 1] = 1;
    total = 1;
  }
  for (std::uint32_t m = 0; m < q.table_size(); ++m) {
    q.set(m, Rational(w[m], total));
  }
  return q;
}

/// Probability that a random subset (per q) meets C.
SetFunction hitting_function(const SetFunction& q) {
  const SetFunction chance = mobius_inverse(q);
  const std::uint32_t full = q.ground().full_mask();
  SetFunction f = SetFunction::zero(q.ground());
  for (std::uint32_t c = 0; c <= full; ++c) {
    f.set(c, 1 - chance.at(full ^ c));
    if (full == 0) break;
  }
  return f;
}

SetFunction coverage_function(const GroundSet& ground, RngStream& rng) {
  const int items = 1 + static_cast<int>(rng.below(3));
  long total = 0;
  std::vector<long> weight(items);
  std::vector<std::uint32_t> covers(items, 0);
  for (int i = 0; i < items; ++i) {
    weight[i] = 1 + static_cast<long>(rng.below(4));
    total += weight[i];
    for (int e = 0; e < ground.size(); ++e) {
      if (rng.below(2)) covers[i] |= 1u << e;
    }
  }
  SetFunction f = SetFunction::zero(ground);
  for (std::uint32_t s = 0; s < f.table_size(); ++s) {
    long hit = 0;
    for (int i = 0; i < items; ++i) {
      if (covers[i] & s) hit += weight[i];
    }
    f.set(s, Rational(hit, total));
  }
  return f;
}

SetFunction grid_monotone(const GroundSet& ground, RngStream& rng) {
  SetFunction f = SetFunction::zero(ground);
  std::vector<long> g(f.table_size(), 0);
  for (std::uint32_t m = 1; m < f.table_size(); ++m) {
    long lb = 0;
    for (int i = 0; i < ground.size(); ++i) {
      if (m & (1u << i)) lb = std::max(lb, g[m ^ (1u << i)]);
    }
    g[m] = lb + static_cast<long>(rng.below(3));
  }
  const long top = g[f.table_size() - 1];
  if (top == 0) return f;
  for (std::uint32_t m = 0; m < f.table_size(); ++m) f.set(m, Rational(g[m], top));
  return f;
}

/// Symmetric function phi(|S|)/phi(d) whose level-l differences alternate in
/// sign exactly through order k: |diff^l phi| is prescribed at level k and
/// integrated downward, keeping every magnitude sequence nonnegative.
SetFunction symmetric_targeted(const GroundSet& ground, int k, RngStream& rng,
                               bool force_break_above) {
  const int d = ground.size();
  std::vector<long> mag(d - k + 1);  // |diff^k phi| at t = 0..d-k
  for (auto& x : mag) x = static_cast<long>(rng.below(4));
  if (force_break_above && d - k >= 1) {
    bool increases = false;
    for (std::size_t t = 0; t + 1 < mag.size(); ++t) {
      if (mag[t + 1] > mag[t]) increases = true;
    }
    // An increase in |diff^k phi| is exactly a sign failure at order k+1.
    if (!increases) mag.back() = mag[mag.size() - 2] + 1 + static_cast<long>(rng.below(2));
  }
  for (int level = k - 1; level >= 1; --level) {
    long start = static_cast<long>(rng.below(3));
    for (long x : mag) start += x;
    std::vector<long> next(d - level + 1);
    next[0] = start;
    for (std::size_t t = 0; t < mag.size(); ++t) next[t + 1] = next[t] - mag[t];
    mag = std::move(next);
  }
  std::vector<long> phi(d + 1, 0);
  for (int t = 0; t < d; ++t) phi[t + 1] = phi[t] + mag[t];
  SetFunction f = SetFunction::zero(ground);
  if (phi[d] == 0) return f;
  for (std::uint32_t m = 0; m < f.table_size(); ++m) {
    f.set(m, Rational(phi[popcount(m)], phi[d]));
  }
  return f;
}

/// Capping a hitting function at a level keeps orders 1 and 2 but usually
/// breaks the higher ones.
SetFunction truncated_hitting(const GroundSet& ground, RngStream& rng) {
  SetFunction f = hitting_function(random_distribution(ground, rng));
  const Rational cap = canonical(Rational(1 + static_cast<long>(rng.below(7)), 8));
  for (std::uint32_t m = 0; m < f.table_size(); ++m) {
    if (f.at(m) > cap) f.set(m, cap);
  }
  return f;
}

/// Blend that keeps order-k signs (conic closure) while the heavy weight on
/// `main` preserves its order-(k+1) failures.
SetFunction blend(const SetFunction& main, const SetFunction& noise, long weight) {
  SetFunction f = main;
  for (std::uint32_t m = 0; m < f.table_size(); ++m) {
    f.set(m, (Rational(weight) * main.at(m) + noise.at(m)) / Rational(weight + 1));
  }
  return f;
}

SetFunction propose(const GroundSet& ground, int k, FunctionFamily family,
                    RngStream& rng, bool strict) {
  const int d = ground.size();
  const bool room_above = k < d;  // order k+1 is observable on this ground
  if (family == FunctionFamily::triggering_derived) {
    return hitting_function(random_distribution(ground, rng));
  }
  if (family == FunctionFamily::coverage) {
    return coverage_function(ground, rng);
  }
  if (family == FunctionFamily::mixed && !strict) {
    switch (rng.below(room_above ? 3 : 2)) {
      case 0:
        return hitting_function(random_distribution(ground, rng));
      case 1:
        return coverage_function(ground, rng);
      default:
        break;  // fall through to the rejection proposals
    }
  }
  // Rejection proposals (also the strict path of `mixed`).
  if (!room_above) {
    // Order k already means order d here; any admissible family applies.
    return rng.below(2) ? coverage_function(ground, rng)
                        : hitting_function(random_distribution(ground, rng));
  }
  const std::uint64_t pick = rng.below(8);
  if (pick == 0 && !strict) return grid_monotone(ground, rng);
  if (k == 2 && pick <= 3) return truncated_hitting(ground, rng);
  SetFunction f = symmetric_targeted(ground, k, rng, strict);
  if (rng.below(2)) {
    // Denominator of the symmetric part bounds its smallest nonzero
    // difference from below; weight 2*den keeps any order-(k+1) failure.
    long den = 1;
    for (std::uint32_t m = 0; m < f.table_size(); ++m) {
      den = std::max(den, static_cast<long>(f.at(m).get_den().get_si()));
    }
    f = blend(f, coverage_function(ground, rng), 2 * den);
  }
  return f;
}

}  // namespace

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::layered:
      return "layered";
    case GraphKind::dag:
      return "dag";
    default:
      return "general";
  }
}

std::string to_string(FunctionFamily family) {
  switch (family) {
    case FunctionFamily::triggering_derived:
      return "triggering";
    case FunctionFamily::rejection:
      return "rejection";
    case FunctionFamily::coverage:
      return "coverage";
    default:
      return "mixed";
  }
}

SetFunction gen_adk_function(const GroundSet& ground, int k, FunctionFamily family,
                             RngStream& rng, bool strict) {
  if (k < 1) throw std::invalid_argument("order must be >= 1");
  const int d = ground.size();
  if (strict && k >= d) {
    throw std::invalid_argument(
        "strict separation needs a ground larger than the target order");
  }
  if (d == 0) return SetFunction::zero(ground);
  for (int draw = 0; draw < k_gen_draws; ++draw) {
    SetFunction f = propose(ground, k, family, rng, strict);
    if (sgn(f.at(0)) != 0 || !f.values_in_unit_interval() || !f.is_monotone()) {
      continue;
    }
    if (!is_adk(f, k).holds) continue;
    if (strict && is_adk(f, k + 1).holds) continue;
    return f;
  }
  throw budget_error("function generation: no certified sample in " +
                         std::to_string(k_gen_draws) + " draws",
                     k_gen_draws, k_gen_draws);
}

namespace {

std::uint32_t trim_indegree(std::uint32_t mask, int cap, RngStream& rng) {
  while (popcount(mask) > cap) {
    int drop = static_cast<int>(rng.below(popcount(mask)));
    for (int b = 0; b < 32; ++b) {
      if (mask & (1u << b)) {
        if (drop == 0) {
          mask &= ~(1u << b);
          break;
        }
        --drop;
      }
    }
  }
  return mask;
}

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int v = 0; v < n; ++v) labels.push_back("v" + std::to_string(v));
  return labels;
}

}  // namespace

GeneratedInstance gen_instance(const GenConfig& cfg, RngStream& rng) {
  if (cfg.n < 1 || cfg.n > 20) throw std::invalid_argument("node count must be 1..20");
  if (!in_unit_interval(cfg.edge_density)) {
    throw std::invalid_argument("edge density must lie in [0,1]");
  }
  const int n = cfg.n;
  RngStream graph_rng = rng.child(0x67726170);  // distinct stream per concern
  std::vector<std::uint32_t> in(n, 0);
  std::optional<LayerAssignment> layers;

  if (cfg.graph_kind == GraphKind::layered) {
    const int top = std::max(2, std::min(cfg.max_layers, n));
    const int m = (n == 1) ? 1 : 2 + static_cast<int>(graph_rng.below(top - 1));
    LayerAssignment la;
    la.layer_count = m;
    la.layer.resize(n);
    for (int v = 0; v < n; ++v) {
      la.layer[v] = (v < m) ? v + 1 : 1 + static_cast<int>(graph_rng.below(m));
    }
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < n; ++u) {
        if (la.layer[u] == la.layer[v] + 1 && bernoulli(cfg.edge_density, graph_rng)) {
          in[v] |= 1u << u;
        }
      }
      in[v] = trim_indegree(in[v], cfg.max_indegree, graph_rng);
    }
    layers = std::move(la);
  } else if (cfg.graph_kind == GraphKind::dag) {
    for (int v = 0; v < n; ++v) {
      for (int u = v + 1; u < n; ++u) {
        if (bernoulli(cfg.edge_density, graph_rng)) in[v] |= 1u << u;
      }
      in[v] = trim_indegree(in[v], cfg.max_indegree, graph_rng);
    }
  } else {
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < n; ++u) {
        if (u != v && bernoulli(cfg.edge_density, graph_rng)) in[v] |= 1u << u;
      }
      in[v] = trim_indegree(in[v], cfg.max_indegree, graph_rng);
    }
  }

  GTInstance inst;
  inst.graph = DirectedGraph(n, std::move(in));
  inst.labels = default_labels(n);
  inst.thresholds.reserve(n);
  for (int v = 0; v < n; ++v) {
    std::vector<std::string> ground_labels;
    for (int u : inst.graph.in_list(v)) ground_labels.push_back(inst.labels[u]);
    RngStream node_rng = rng.child(0x1000 + v);
    const int d = static_cast<int>(ground_labels.size());
    const bool strict_here = cfg.strict && cfg.k != k_unbounded && d > cfg.k;
    inst.thresholds.push_back(gen_adk_function(GroundSet(std::move(ground_labels)),
                                               cfg.k, cfg.family, node_rng,
                                               strict_here));
  }
  return GeneratedInstance{std::move(inst), std::move(layers)};
}

TriggeringInstance gen_triggering_instance(const GenConfig& cfg, RngStream& rng) {
  GenConfig base = cfg;
  base.family = FunctionFamily::triggering_derived;
  base.k = k_unbounded;
  base.strict = false;
  // Reuse the graph-generation path, then sample distributions directly.
  GeneratedInstance shape = gen_instance(base, rng);
  TriggeringInstance out;
  out.graph = shape.instance.graph;
  out.labels = shape.instance.labels;
  out.distributions.reserve(out.n());
  for (int v = 0; v < out.n(); ++v) {
    RngStream node_rng = rng.child(0x2000 + v);
    out.distributions.push_back(
        random_distribution(shape.instance.thresholds[v].ground(), node_rng));
  }
  return out;
}

GlobalCheck global_adk_check(const GTInstance& inst, int k, long long budget) {
  const auto problems = validate_gt(inst);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid instance: node " +
                                std::to_string(problems.front().node) + ": " +
                                problems.front().what);
  }
  const int n = inst.n();
  GlobalCheck out;
  GroundSet ground(inst.labels);
  out.sigma = SetFunction::zero(ground);
  out.per_node.assign(n, SetFunction::zero(ground));
  const std::uint32_t full = inst.graph.all_nodes();
  for (std::uint32_t seeds = 0; seeds <= full; ++seeds) {
    SpreadResult sp = exact_spread(inst, seeds, budget);
    out.sigma.set(seeds, std::move(sp.sigma));
    for (int v = 0; v < n; ++v) out.per_node[v].set(seeds, std::move(sp.per_node[v]));
    if (full == 0) break;
  }

  out.report = is_adk(out.sigma, k);
  if (!out.report.holds) {
    out.holds = false;
    out.function = "sigma";
    return out;
  }
  for (int v = 0; v < n; ++v) {
    AdkReport r = is_adk(out.per_node[v], k);
    if (!r.holds) {
      out.holds = false;
      out.function = inst.labels[v];
      out.report = std::move(r);
      return out;
    }
  }
  return out;
}

GTInstance permute_instance(const GTInstance& inst, const std::vector<int>& perm) {
  const int n = inst.n();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permutation size mismatch");
  }
  std::vector<std::string> labels(n);
  std::vector<std::uint32_t> in(n, 0);
  for (int v = 0; v < n; ++v) {
    labels[perm[v]] = inst.labels[v];
    std::uint32_t mask = 0;
    for (int u : inst.graph.in_list(v)) mask |= 1u << perm[u];
    in[perm[v]] = mask;
  }
  GTInstance out;
  out.graph = DirectedGraph(n, std::move(in));
  out.labels = std::move(labels);
  out.thresholds.resize(n);
  for (int v = 0; v < n; ++v) {
    const int w = perm[v];
    std::vector<std::string> ground_labels;
    for (int u : out.graph.in_list(w)) ground_labels.push_back(out.labels[u]);
    SetFunction table = SetFunction::zero(GroundSet(std::move(ground_labels)));
    for (std::uint32_t local = 0; local < table.table_size(); ++local) {
      const std::uint32_t new_global = out.graph.to_global(w, local);
      std::uint32_t old_global = 0;
      for (int u = 0; u < n; ++u) {
        if (new_global & (1u << perm[u])) old_global |= 1u << u;
      }
      table.set(local, inst.thresholds[v].at(inst.graph.to_local(v, old_global)));
    }
    out.thresholds[w] = std::move(table);
  }
  return out;
}

namespace {

std::uint32_t permute_mask(std::uint32_t mask, const std::vector<int>& perm) {
  std::uint32_t out = 0;
  for (std::size_t v = 0; v < perm.size(); ++v) {
    if (mask & (1u << v)) out |= 1u << perm[v];
  }
  return out;
}

std::string witness_text(const GroundSet& ground, const AdkWitness& w) {
  return "S=" + ground.mask_to_string(w.s_mask) + " A=" + ground.mask_to_string(w.a_mask) +
         " diff=" + rational_to_string(w.value);
}

/// Recomputes the flagged difference on a relabeled copy of the instance.
bool recheck_violation(const GTInstance& inst, const GlobalCheck& chk, int k,
                       long long budget, RngStream& rng, std::string& detail) {
  const int n = inst.n();
  std::vector<int> perm(n);
  for (int v = 0; v < n; ++v) perm[v] = v;
  for (int v = n - 1; v > 0; --v) {
    std::swap(perm[v], perm[rng.below(v + 1)]);
  }
  if (n > 1 && std::is_sorted(perm.begin(), perm.end())) {
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
  }
  const GTInstance shadow = permute_instance(inst, perm);
  const GlobalCheck again = global_adk_check(shadow, k, budget);
  if (again.holds) {
    detail = "recheck found no violation under permuted node order";
    return false;
  }
  // The specific flagged difference must reproduce at the permuted indices.
  const AdkWitness& w = *chk.report.witness;
  const std::uint32_t a2 = permute_mask(w.a_mask, perm);
  const std::uint32_t s2 = permute_mask(w.s_mask, perm);
  Rational replay;
  if (chk.function == "sigma") {
    SetFunction sigma2 = SetFunction::zero(GroundSet(shadow.labels));
    const std::uint32_t full = shadow.graph.all_nodes();
    for (std::uint32_t seeds = 0; seeds <= full; ++seeds) {
      sigma2.set(seeds, exact_spread(shadow, seeds, budget).sigma);
      if (full == 0) break;
    }
    replay = difference(sigma2, a2, s2);
  } else {
    const int u = inst.node_by_label(chk.function);
    SetFunction p2 = SetFunction::zero(GroundSet(shadow.labels));
    const std::uint32_t full = shadow.graph.all_nodes();
    for (std::uint32_t seeds = 0; seeds <= full; ++seeds) {
      p2.set(seeds, exact_spread(shadow, seeds, budget).per_node[perm[u]]);
      if (full == 0) break;
    }
    replay = difference(p2, a2, s2);
  }
  if (replay != w.value) {
    detail = "recheck difference " + rational_to_string(replay) +
             " does not match flagged " + rational_to_string(w.value);
    return false;
  }
  detail = "recheck reproduced the flagged difference under a permuted order";
  return true;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ADK_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::max(1, std::min<int>(static_cast<int>(hw), 8));
}

}  // namespace

ConjectureReport run_campaign(const GenConfig& cfg, int instances, long long budget,
                              int threads) {
  if (instances < 0) throw std::invalid_argument("instance count must be >= 0");
  ConjectureReport report;
  report.config = cfg;
  report.instances = instances;
  report.search_mode = cfg.graph_kind == GraphKind::general && cfg.k != k_unbounded &&
                       cfg.k >= 3 && cfg.k <= cfg.n - 1;

  report.items.assign(instances, {});
  std::vector<std::optional<Counterexample>> candidates(instances);

  auto run_one = [&](int index) {
    CampaignItem& item = report.items[index];
    item.index = index;
    RngStream stream = RngStream(cfg.rng_seed).child(index);
    item.stream_seed = stream.seed();
    GeneratedInstance gen;
    try {
      gen = gen_instance(cfg, stream);
    } catch (const budget_error& e) {
      item.verdict = InstanceVerdict::gen_failed;
      item.detail = e.what();
      return;
    }
    GlobalCheck chk;
    try {
      chk = global_adk_check(gen.instance, cfg.k, budget);
    } catch (const budget_error& e) {
      item.verdict = InstanceVerdict::budget_skipped;
      item.detail = e.what();
      return;
    }
    if (chk.holds) {
      item.verdict = InstanceVerdict::pass;
      return;
    }
    item.verdict = InstanceVerdict::violation;
    item.detail = chk.function + " " +
                  witness_text(chk.sigma.ground(), *chk.report.witness);
    Counterexample ce;
    ce.index = index;
    ce.stream_seed = item.stream_seed;
    ce.instance = gen.instance;
    ce.function = chk.function;
    ce.witness = *chk.report.witness;
    if (report.search_mode) {
      RngStream recheck_rng = stream.child(0x7265);
      try {
        ce.confirmed = recheck_violation(gen.instance, chk, cfg.k, budget,
                                         recheck_rng, ce.recheck_detail);
      } catch (const budget_error& e) {
        ce.confirmed = false;
        ce.recheck_detail = std::string("recheck hit budget: ") + e.what();
      }
    } else {
      ce.confirmed = true;
      ce.recheck_detail = "regression mode: no permuted recheck";
    }
    candidates[index] = std::move(ce);
  };

  const int workers = std::min(resolve_threads(threads), std::max(instances, 1));
  if (workers <= 1) {
    for (int i = 0; i < instances; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const int i = next.fetch_add(1);
          if (i >= instances) return;
          run_one(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  for (int i = 0; i < instances; ++i) {
    switch (report.items[i].verdict) {
      case InstanceVerdict::pass:
        ++report.passes;
        break;
      case InstanceVerdict::violation:
        ++report.violations;
        if (!report.counterexample) report.counterexample = candidates[i];
        break;
      case InstanceVerdict::budget_skipped:
        ++report.budget_skipped;
        break;
      case InstanceVerdict::gen_failed:
        ++report.gen_failed;
        break;
    }
  }
  return report;
}

namespace {

void record(IdentityCheck& chk, bool ok, const std::string& what) {
  ++chk.checks;
  if (!ok) {
    chk.ok = false;
    if (chk.failures.size() < 20) chk.failures.push_back(what);
  }
}

}  // namespace

IdentityCheck verify_identities(const TriggeringInstance& inst, long long budget) {
  const auto problems = validate_triggering(inst);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid instance: node " +
                                std::to_string(problems.front().node) + ": " +
                                problems.front().what);
  }
  const int n = inst.n();
  const std::uint32_t full = inst.graph.all_nodes();
  GroundSet ground(inst.labels);

  std::vector<SetFunction> activation(n, SetFunction::zero(ground));
  for (std::uint32_t seeds = 0; seeds <= full; ++seeds) {
    SpreadResult sp = live_edge_spread(inst, seeds, budget);
    for (int u = 0; u < n; ++u) activation[u].set(seeds, std::move(sp.per_node[u]));
    if (full == 0) break;
  }

  IdentityCheck chk;
  for (int u = 0; u < n; ++u) {
    const std::string tag = "node " + inst.labels[u] + ": ";
    const SetFunction reach = reach_distribution(inst, u, budget);
    const SetFunction& act = activation[u];

    Rational total(0);
    for (std::uint32_t t = 0; t <= full; ++t) {
      record(chk, sgn(reach.at(t)) >= 0,
             tag + "reach mass of " + ground.mask_to_string(t) + " is negative");
      total += reach.at(t);
      if (full == 0) break;
    }
    record(chk, total == 1, tag + "reach masses sum to " + rational_to_string(total));

    // activation = reach mass of sets meeting the seeds.
    const SetFunction cumulative = mobius_inverse(reach);
    for (std::uint32_t s = 0; s <= full; ++s) {
      record(chk, act.at(s) == 1 - cumulative.at(full ^ s),
             tag + "activation at " + ground.mask_to_string(s) +
                 " does not match the reach distribution");
      if (full == 0) break;
    }

    // h(T) = 1 - activation(V \ T); its signed subset sums recover reach,
    // and all of its differences are nonnegative.
    SetFunction h = SetFunction::zero(ground);
    for (std::uint32_t t = 0; t <= full; ++t) {
      h.set(t, 1 - act.at(full ^ t));
      if (full == 0) break;
    }
    const SetFunction h_moebius = mobius(h);
    for (std::uint32_t t = 0; t <= full; ++t) {
      record(chk, h_moebius.at(t) == reach.at(t),
             tag + "signed subset sum at " + ground.mask_to_string(t) +
                 " differs from the enumerated reach mass");
      record(chk, sgn(h_moebius.at(t)) >= 0,
             tag + "signed subset sum at " + ground.mask_to_string(t) + " is negative");
      if (full == 0) break;
    }
    for (std::uint32_t p = 1; p <= full && full != 0; ++p) {
      const std::uint32_t comp = full & ~p;
      std::uint32_t s = 0;
      while (true) {
        record(chk, sgn(difference(h, p, s)) >= 0,
               tag + "difference of h at P=" + ground.mask_to_string(p) +
                   " S=" + ground.mask_to_string(s) + " is negative");
        s = (s - comp) & comp;
        if (s == 0) break;
      }
    }

    // Difference bridge between activation and h.
    for (std::uint32_t s = 1; s <= full && full != 0; ++s) {
      const std::uint32_t comp = full & ~s;
      std::uint32_t p = 0;
      while (true) {
        const Rational left = difference(act, s, p);
        Rational right = difference(h, s, full & ~(p | s));
        if ((popcount(s) + 1) % 2 != 0) right = -right;
        record(chk, left == right,
               tag + "difference bridge fails at S=" + ground.mask_to_string(s) +
                   " P=" + ground.mask_to_string(p));
        p = (p - comp) & comp;
        if (p == 0) break;
      }
    }
  }
  return chk;
}

IdentityCheck verify_identities(const GTInstance& inst, long long budget) {
  return verify_identities(gt_to_triggering(inst), budget);
}

}  // namespace adk
