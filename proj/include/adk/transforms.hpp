#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adk/diffusion.hpp"

namespace adk {

/// How original nodes map into a transformed instance.
struct NodeMap {
  /// forward[v] = images of original node v, ascending.
  std::vector<std::vector<int>> forward;
  /// Bottom-layer copy per original node; empty when the transform does not
  /// duplicate nodes (then seeds map through `forward`).
  std::vector<int> bottom_copy;
  /// Image nodes whose activation probabilities add up to the original
  /// spread (auxiliary nodes are excluded).
  std::vector<int> kept;

  /// Image of a seed set.
  std::uint32_t map_seeds(std::uint32_t seeds) const;
};

struct LayeredInstance {
  GTInstance instance;
  LayerAssignment layers;
  NodeMap map;
};

/// Equivalent threshold view of a triggering instance:
/// f_v(C) = P(T_v intersects C) = 1 - P(T_v subseteq IN(v) \ C).
GTInstance triggering_to_gt(const TriggeringInstance& inst);

/// Inverse direction.  Each node's triggering weights are the signed
/// alternating differences of its threshold table; any negative weight is a
/// witness that the table is not AD-unbounded, reported via
/// not_ad_infinity_error.
TriggeringInstance gt_to_triggering(const GTInstance& inst);

/// Peels sources repeatedly: the first peel becomes the deepest layer m and
/// the last becomes layer 1, so layer labels are contiguous with edges going
/// from layer i+1 to layer i.  Cycles raise not_a_dag_error.
LayerAssignment dag_layering(const DirectedGraph& g);

/// Rewrites a DAG instance as a layered one by replacing every edge that
/// skips q >= 2 layers with a dedicated chain of q-1 single-input relay
/// (OR) nodes.  Original nodes keep their ids and seed sets carry over
/// unchanged; `kept` excludes the relays.
LayeredInstance dag_to_layered(const GTInstance& inst);

/// Expands a layered instance (m >= 2) so that every original node v of
/// layer j has copies in layers j..m.  A copy activates once the same-node
/// copy directly below it is active; a diagonal copy (layer = original
/// layer) may also fire through the original threshold applied to the
/// diagonal copies of its in-neighbors.  Seeding the bottom copies of S
/// and summing activation over the diagonal (`kept`) reproduces the
/// original spread.
LayeredInstance lift_layered(const GTInstance& inst, const LayerAssignment& la);

struct TransformCheckRow {
  std::uint32_t seeds = 0;        // original seed mask
  std::uint32_t image_seeds = 0;  // mapped seed mask
  Rational original;              // spread in the original instance
  Rational transformed;           // kept-node activation mass in the image
  /// Activation probability per original node, and of its kept image.
  std::vector<Rational> original_per_node;
  std::vector<Rational> transformed_per_node;
};

struct TransformCheck {
  std::vector<TransformCheckRow> rows;
  /// Sign reports of the image's threshold tables, one per image node, when
  /// an order was requested.
  std::vector<AdkReport> threshold_reports;
  bool spreads_match() const;
  bool thresholds_hold() const;
};

/// Compares exact spreads of an instance and its transformed image across
/// the given seed sets and, when `adk_order` is set, checks every image
/// threshold table at that order.
TransformCheck verify_transform(const GTInstance& original,
                                const LayeredInstance& image,
                                const std::vector<std::uint32_t>& seed_sets,
                                std::optional<int> adk_order = std::nullopt,
                                long long budget = k_default_budget);

}  // namespace adk
