#include "adk/transforms.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "adk/errors.hpp"

namespace adk {

namespace {

void require_valid_gt(const GTInstance& inst) {
  const auto problems = validate_gt(inst);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid instance: node " +
                                std::to_string(problems.front().node) + ": " +
                                problems.front().what);
  }
}

std::string unique_label(std::set<std::string>& used, std::string base) {
  while (!used.insert(base).second) base += "'";
  return base;
}

GroundSet in_ground(const DirectedGraph& g, const std::vector<std::string>& labels,
                    int v) {
  std::vector<std::string> names;
  for (int u : g.in_list(v)) names.push_back(labels[u]);
  return GroundSet(std::move(names));
}

}  // namespace

std::uint32_t NodeMap::map_seeds(std::uint32_t seeds) const {
  std::uint32_t image = 0;
  for (std::size_t v = 0; v < forward.size(); ++v) {
    if (!(seeds & (1u << v))) continue;
    if (!bottom_copy.empty()) {
      image |= 1u << bottom_copy[v];
    } else {
      for (int w : forward[v]) image |= 1u << w;
    }
  }
  return image;
}

GTInstance triggering_to_gt(const TriggeringInstance& inst) {
  const auto problems = validate_triggering(inst);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid instance: node " +
                                std::to_string(problems.front().node) + ": " +
                                problems.front().what);
  }
  GTInstance out;
  out.graph = inst.graph;
  out.labels = inst.labels;
  out.thresholds.reserve(inst.n());
  for (int v = 0; v < inst.n(); ++v) {
    // chance(B) = P(T_v subseteq B); the threshold is the hitting
    // probability f(C) = 1 - chance(IN(v) \ C).
    const SetFunction chance = mobius_inverse(inst.distributions[v]);
    const std::uint32_t full = chance.ground().full_mask();
    SetFunction f = SetFunction::zero(chance.ground());
    for (std::uint32_t c = 0; c <= full; ++c) {
      f.set(c, 1 - chance.at(full ^ c));
      if (full == 0) break;
    }
    out.thresholds.push_back(std::move(f));
  }
  return out;
}

TriggeringInstance gt_to_triggering(const GTInstance& inst) {
  require_valid_gt(inst);
  TriggeringInstance out;
  out.graph = inst.graph;
  out.labels = inst.labels;
  out.distributions.reserve(inst.n());
  for (int v = 0; v < inst.n(); ++v) {
    const auto& f = inst.thresholds[v];
    const std::uint32_t full = f.ground().full_mask();
    SetFunction miss = SetFunction::zero(f.ground());
    for (std::uint32_t b = 0; b <= full; ++b) {
      miss.set(b, 1 - f.at(full ^ b));
      if (full == 0) break;
    }
    SetFunction q = mobius(miss);
    for (std::uint32_t a = 0; a <= full; ++a) {
      if (sgn(q.at(a)) < 0) {
        throw not_ad_infinity_error(
            "node '" + inst.labels[v] + "': triggering weight of " +
                f.ground().mask_to_string(a) + " would be " +
                rational_to_string(q.at(a)),
            v, a, rational_to_string(q.at(a)));
      }
      if (full == 0) break;
    }
    out.distributions.push_back(std::move(q));
  }
  return out;
}

LayerAssignment dag_layering(const DirectedGraph& g) {
  LayerAssignment la;
  la.layer.assign(g.n(), 0);
  std::vector<int> peel(g.n(), 0);
  std::uint32_t remaining = g.all_nodes();
  int rounds = 0;
  while (remaining) {
    ++rounds;
    std::uint32_t current = 0;
    for (int v = 0; v < g.n(); ++v) {
      if ((remaining & (1u << v)) && (g.in_mask(v) & remaining) == 0) {
        current |= 1u << v;
      }
    }
    if (current == 0) {
      throw not_a_dag_error("graph has a directed cycle", remaining);
    }
    for (int v = 0; v < g.n(); ++v) {
      if (current & (1u << v)) peel[v] = rounds;
    }
    remaining &= ~current;
  }
  la.layer_count = std::max(rounds, 1);
  for (int v = 0; v < g.n(); ++v) la.layer[v] = la.layer_count - peel[v] + 1;
  if (g.n() == 0) la.layer_count = 1;
  return la;
}

LayeredInstance dag_to_layered(const GTInstance& inst) {
  require_valid_gt(inst);
  const LayerAssignment la = dag_layering(inst.graph);
  const int n = inst.n();

  // Count relay nodes: an edge from layer i+q to layer i needs q-1 of them.
  int relays = 0;
  for (int v = 0; v < n; ++v) {
    for (int u : inst.graph.in_list(v)) {
      relays += la.layer[u] - la.layer[v] - 1;
    }
  }
  if (n + relays > 20) {
    throw std::invalid_argument("layering needs " + std::to_string(relays) +
                                " relay nodes; " + std::to_string(n + relays) +
                                " total exceeds the 20-node limit");
  }

  const int n2 = n + relays;
  std::vector<std::string> labels2 = inst.labels;
  std::set<std::string> used(labels2.begin(), labels2.end());
  std::vector<std::uint32_t> in2(n2, 0);
  std::vector<int> layer2(n2, 0);
  std::vector<int> rep(n2);  // original node a relay stands for
  for (int v = 0; v < n; ++v) {
    layer2[v] = la.layer[v];
    rep[v] = v;
  }

  int next_id = n;
  for (int v = 0; v < n; ++v) {
    for (int u : inst.graph.in_list(v)) {
      const int q = la.layer[u] - la.layer[v];
      if (q == 1) {
        in2[v] |= 1u << u;
        continue;
      }
      // Chain u -> d_{q-1} -> .. -> d_1 -> v with d_t in layer(v) + t.
      int above = u;
      for (int t = q - 1; t >= 1; --t) {
        const int d = next_id++;
        labels2.push_back(unique_label(
            used, inst.labels[u] + ">" + inst.labels[v] + "#" + std::to_string(t)));
        layer2[d] = la.layer[v] + t;
        rep[d] = u;
        in2[d] = 1u << above;
        above = d;
      }
      in2[v] |= 1u << above;
    }
  }

  DirectedGraph g2(n2, std::move(in2));
  std::vector<SetFunction> thresholds2;
  thresholds2.reserve(n2);
  for (int v = 0; v < n2; ++v) {
    const GroundSet ground = in_ground(g2, labels2, v);
    if (v >= n) {
      // Relay: fires as soon as its single input is active.
      thresholds2.emplace_back(ground, std::vector<Rational>{Rational(0), Rational(1)});
      continue;
    }
    const auto in = g2.in_list(v);
    std::vector<Rational> table(1u << in.size());
    for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
      std::uint32_t old_local = 0;
      for (std::size_t i = 0; i < in.size(); ++i) {
        if (mask & (1u << i)) {
          old_local |= inst.graph.to_local(v, 1u << rep[in[i]]);
        }
      }
      table[mask] = inst.thresholds[v].at(old_local);
    }
    thresholds2.emplace_back(ground, std::move(table));
  }

  LayeredInstance out;
  out.instance = GTInstance{std::move(g2), std::move(labels2), std::move(thresholds2)};
  out.layers = LayerAssignment{std::move(layer2), la.layer_count};
  out.map.forward.assign(n, {});
  for (int v = 0; v < n; ++v) out.map.forward[v] = {v};
  out.map.kept.resize(n);
  for (int v = 0; v < n; ++v) out.map.kept[v] = v;
  check_layering(out.instance.graph, out.layers);
  return out;
}

LayeredInstance lift_layered(const GTInstance& inst, const LayerAssignment& la) {
  require_valid_gt(inst);
  check_layering(inst.graph, la);
  const int m = la.m();
  if (m < 2) {
    throw std::invalid_argument(
        "lift needs at least two layers; pad with an empty top layer first");
  }
  const int n = inst.n();

  int n2 = 0;
  for (int v = 0; v < n; ++v) n2 += m - la.layer[v] + 1;
  if (n2 > 20) {
    throw std::invalid_argument("lift produces " + std::to_string(n2) +
                                " nodes, exceeding the 20-node limit");
  }

  // cid[i][v] = id of v's copy in layer i (i >= la.layer[v]).
  std::vector<std::vector<int>> cid(m + 1, std::vector<int>(n, -1));
  std::vector<std::string> labels2;
  std::vector<int> layer2;
  std::set<std::string> used;
  std::vector<std::pair<int, int>> origin;  // new id -> (layer, original)
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= i; ++j) {
      for (int v = 0; v < n; ++v) {
        if (la.layer[v] != j) continue;
        cid[i][v] = static_cast<int>(labels2.size());
        labels2.push_back(
            unique_label(used, inst.labels[v] + "@" + std::to_string(i)));
        layer2.push_back(i);
        origin.emplace_back(i, v);
      }
    }
  }

  std::vector<std::uint32_t> in2(n2, 0);
  for (int c = 0; c < n2; ++c) {
    const auto [i, v] = origin[c];
    if (i == m) continue;  // bottom copies have no inputs
    in2[c] |= 1u << cid[i + 1][v];
    if (i == la.layer[v]) {  // diagonal: also hears its in-neighbors' diagonals
      for (int u : inst.graph.in_list(v)) in2[c] |= 1u << cid[i + 1][u];
    }
  }

  DirectedGraph g2(n2, std::move(in2));
  std::vector<SetFunction> thresholds2;
  thresholds2.reserve(n2);
  for (int c = 0; c < n2; ++c) {
    const auto [i, v] = origin[c];
    const GroundSet ground = in_ground(g2, labels2, c);
    if (i == m) {
      thresholds2.push_back(SetFunction::zero(ground));
      continue;
    }
    const auto in = g2.in_list(c);
    const int below = cid[i + 1][v];
    std::vector<Rational> table(1u << in.size());
    for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
      std::uint32_t old_local = 0;
      bool from_below = false;
      for (std::size_t t = 0; t < in.size(); ++t) {
        if (!(mask & (1u << t))) continue;
        if (in[t] == below) {
          from_below = true;
        } else {
          old_local |= inst.graph.to_local(v, 1u << origin[in[t]].second);
        }
      }
      table[mask] = from_below ? Rational(1) : inst.thresholds[v].at(old_local);
    }
    thresholds2.emplace_back(ground, std::move(table));
  }

  LayeredInstance out;
  out.instance = GTInstance{std::move(g2), std::move(labels2), std::move(thresholds2)};
  out.layers = LayerAssignment{std::move(layer2), m};
  out.map.forward.assign(n, {});
  out.map.bottom_copy.assign(n, -1);
  out.map.kept.resize(n);
  for (int v = 0; v < n; ++v) {
    for (int i = la.layer[v]; i <= m; ++i) out.map.forward[v].push_back(cid[i][v]);
    out.map.bottom_copy[v] = cid[m][v];
    out.map.kept[v] = cid[la.layer[v]][v];
  }
  check_layering(out.instance.graph, out.layers);
  return out;
}

bool TransformCheck::spreads_match() const {
  return std::all_of(rows.begin(), rows.end(), [](const TransformCheckRow& r) {
    return r.original == r.transformed &&
           r.original_per_node == r.transformed_per_node;
  });
}

bool TransformCheck::thresholds_hold() const {
  return std::all_of(threshold_reports.begin(), threshold_reports.end(),
                     [](const AdkReport& r) { return r.holds; });
}

TransformCheck verify_transform(const GTInstance& original,
                                const LayeredInstance& image,
                                const std::vector<std::uint32_t>& seed_sets,
                                std::optional<int> adk_order, long long budget) {
  TransformCheck out;
  for (std::uint32_t seeds : seed_sets) {
    TransformCheckRow row;
    row.seeds = seeds;
    row.image_seeds = image.map.map_seeds(seeds);
    const SpreadResult orig = exact_spread(original, seeds, budget);
    row.original = orig.sigma;
    row.original_per_node = orig.per_node;
    const SpreadResult sp = exact_spread(image.instance, row.image_seeds, budget);
    row.transformed = Rational(0);
    for (int u : image.map.kept) row.transformed += sp.per_node[u];
    row.transformed_per_node.reserve(image.map.kept.size());
    for (int u : image.map.kept) row.transformed_per_node.push_back(sp.per_node[u]);
    out.rows.push_back(std::move(row));
  }
  if (adk_order) {
    for (const auto& f : image.instance.thresholds) {
      out.threshold_reports.push_back(is_adk(f, *adk_order));
    }
  }
  return out;
}

}  // namespace adk
