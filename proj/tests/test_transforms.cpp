#include <stdexcept>
#include <vector>

#include "adk/diffusion.hpp"
#include "adk/errors.hpp"
#include "adk/setfn.hpp"
#include "adk/transforms.hpp"
#include "doctest.h"

using namespace adk;

namespace {

SetFunction table(const std::vector<std::string>& labels,
                  const std::vector<std::string>& values) {
  std::vector<Rational> t;
  for (const auto& v : values) t.push_back(rational_from_string(v));
  return SetFunction(GroundSet(labels), std::move(t));
}

GTInstance or_gate() {
  DirectedGraph g(3, {0b000, 0b000, 0b011});
  return GTInstance{g,
                    {"a", "b", "v"},
                    {SetFunction::zero(GroundSet{}), SetFunction::zero(GroundSet{}),
                     table({"a", "b"}, {"0", "1", "1", "1"})}};
}

GTInstance nonsub() {
  DirectedGraph g(3, {0b000, 0b000, 0b011});
  return GTInstance{g,
                    {"a", "b", "v"},
                    {SetFunction::zero(GroundSet{}), SetFunction::zero(GroundSet{}),
                     table({"a", "b"}, {"0", "1/5", "1/5", "3/5"})}};
}

std::vector<std::uint32_t> all_seed_sets(const GTInstance& inst) {
  std::vector<std::uint32_t> sets;
  for (std::uint32_t s = 0; s <= inst.graph.all_nodes(); ++s) sets.push_back(s);
  return sets;
}

}  // namespace

TEST_CASE("triggering distributions become hitting-probability thresholds") {
  DirectedGraph g(2, {0b00, 0b01});
  const TriggeringInstance trig{
      g, {"u", "v"},
      {SetFunction(GroundSet{}, {Rational(1)}),
       SetFunction(GroundSet({"u"}), {Rational(2, 3), Rational(1, 3)})}};
  const GTInstance gt = triggering_to_gt(trig);
  CHECK(gt.thresholds[1].at(0) == Rational(0));
  CHECK(gt.thresholds[1].at(1) == Rational(1, 3));
  CHECK(validate_gt(gt).empty());

  const TriggeringInstance back = gt_to_triggering(gt);
  CHECK(back.distributions[1].values() == trig.distributions[1].values());
  CHECK(back.distributions[0].values() == trig.distributions[0].values());
}

TEST_CASE("the OR gate triggers on its full in-neighborhood") {
  const TriggeringInstance trig = gt_to_triggering(or_gate());
  const SetFunction& q = trig.distributions[2];
  CHECK(q.at(0b11) == Rational(1));
  CHECK(q.at(0b00) == Rational(0));
  CHECK(q.at(0b01) == Rational(0));
  CHECK(q.at(0b10) == Rational(0));
}

TEST_CASE("supermodular tables admit no triggering representation") {
  CHECK_THROWS_AS(gt_to_triggering(nonsub()), not_ad_infinity_error);
  try {
    gt_to_triggering(nonsub());
  } catch (const not_ad_infinity_error& e) {
    CHECK(e.node() == 2);
    CHECK(e.a_mask() == 0b11);
    CHECK(e.coefficient() == "-1/5");
  }
}

TEST_CASE("peeling layers a dag bottom-up") {
  // w -> v -> u: u hears v, v hears w.
  DirectedGraph chain(3, {0b010, 0b100, 0b000});
  const LayerAssignment la = dag_layering(chain);
  CHECK(la.m() == 3);
  CHECK(la.layer == std::vector<int>{1, 2, 3});

  DirectedGraph cycle(2, {0b10, 0b01});
  CHECK_THROWS_AS(dag_layering(cycle), not_a_dag_error);
  try {
    dag_layering(cycle);
  } catch (const not_a_dag_error& e) {
    CHECK(e.remaining_mask() == 0b11);
  }
}

TEST_CASE("skip edges get relay chains") {
  // u hears {v, w}; v hears w. Peeling puts w at layer 3, v at 2, u at 1,
  // so the edge w -> u skips a layer and needs one relay.
  DirectedGraph g(3, {0b110, 0b100, 0b000});
  GTInstance inst{g,
                  {"u", "v", "w"},
                  {table({"v", "w"}, {"0", "1", "1", "1"}),
                   table({"w"}, {"0", "1/2"}), SetFunction::zero(GroundSet{})}};
  const LayeredInstance layered = dag_to_layered(inst);
  CHECK(layered.instance.n() == 4);
  CHECK_NOTHROW(check_layering(layered.instance.graph, layered.layers));
  // Originals keep their ids and stay the kept nodes.
  CHECK(layered.map.kept == std::vector<int>{0, 1, 2});
  CHECK(layered.map.map_seeds(0b101) == 0b101);

  const TransformCheck chk =
      verify_transform(inst, layered, all_seed_sets(inst), 1);
  CHECK(chk.spreads_match());
  CHECK(chk.thresholds_hold());

  // Spot value: seeding w alone lights the relay, then u via OR, and v
  // with probability 1/2: sigma = 1 + 1 + 1/2 over kept nodes.
  const SpreadResult sp = exact_spread(inst, 0b100);
  CHECK(sp.sigma == Rational(5, 2));
  for (const TransformCheckRow& row : chk.rows) {
    if (row.seeds == 0b100) {
      CHECK(row.original == Rational(5, 2));
      CHECK(row.transformed == Rational(5, 2));
    }
  }
}

TEST_CASE("already-layered instances pass through without relays") {
  DirectedGraph g(2, {0b10, 0b00});  // u hears v
  GTInstance inst{g, {"u", "v"},
                  {table({"v"}, {"0", "1/2"}), SetFunction::zero(GroundSet{})}};
  const LayeredInstance layered = dag_to_layered(inst);
  CHECK(layered.instance.n() == 2);
  CHECK(layered.layers.m() == 2);
  const TransformCheck chk =
      verify_transform(inst, layered, all_seed_sets(inst), 1);
  CHECK(chk.spreads_match());
  CHECK(chk.thresholds_hold());
}

TEST_CASE("lifting copies nodes down to the bottom layer") {
  // Node 0 "v" hears node 1 "u"; u forms the bottom layer.
  DirectedGraph g(2, {0b10, 0b00});
  GTInstance inst{g, {"v", "u"},
                  {table({"u"}, {"0", "1/2"}), SetFunction::zero(GroundSet{})}};
  const LayerAssignment la{{1, 2}, 2};
  const LayeredInstance lifted = lift_layered(inst, la);

  // v has copies at layers 1 and 2; u only its diagonal bottom copy.
  CHECK(lifted.instance.n() == 3);
  CHECK_NOTHROW(check_layering(lifted.instance.graph, lifted.layers));
  CHECK(lifted.map.forward[0].size() == 2);
  CHECK(lifted.map.forward[1].size() == 1);
  // Seeds map to bottom copies.
  const std::uint32_t image_seeds = lifted.map.map_seeds(0b01);
  CHECK(popcount(image_seeds) == 1);
  CHECK(lifted.layers.layer[__builtin_ctz(image_seeds)] == 2);

  const TransformCheck chk =
      verify_transform(inst, lifted, all_seed_sets(inst), 1);
  CHECK(chk.spreads_match());
  CHECK(chk.thresholds_hold());
  for (const TransformCheckRow& row : chk.rows) {
    // Per-node activation probabilities carry over, not just totals.
    CHECK(row.original_per_node == row.transformed_per_node);
    if (row.seeds == 0b10) {  // seed {u}
      CHECK(row.original == Rational(3, 2));
      CHECK(row.transformed == Rational(3, 2));
    }
  }

  CHECK_THROWS_AS(lift_layered(inst, LayerAssignment{{1, 1}, 1}),
                  std::invalid_argument);
}

TEST_CASE("transform checks detect broken images") {
  DirectedGraph g(2, {0b10, 0b00});
  GTInstance inst{g, {"v", "u"},
                  {table({"u"}, {"0", "1/2"}), SetFunction::zero(GroundSet{})}};
  const LayerAssignment la{{1, 2}, 2};
  LayeredInstance lifted = lift_layered(inst, la);
  // Corrupt the image: diagonal copy of v never fires.
  const int kept_v = lifted.map.kept[0];
  lifted.instance.thresholds[kept_v] = SetFunction::zero(
      lifted.instance.thresholds[kept_v].ground());
  const TransformCheck chk =
      verify_transform(inst, lifted, all_seed_sets(inst));
  CHECK_FALSE(chk.spreads_match());
}
