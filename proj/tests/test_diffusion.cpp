#include <stdexcept>
#include <vector>

#include "adk/diffusion.hpp"
#include "adk/errors.hpp"
#include "adk/rational.hpp"
#include "adk/setfn.hpp"
#include "doctest.h"

using namespace adk;

namespace {

SetFunction table(const std::vector<std::string>& labels,
                  const std::vector<std::string>& values) {
  std::vector<Rational> t;
  for (const auto& v : values) t.push_back(rational_from_string(v));
  return SetFunction(GroundSet(labels), std::move(t));
}

/// u -> v with threshold f_v({u}) = 1/2.
GTInstance two_node() {
  DirectedGraph g(2, {0b00, 0b01});
  return GTInstance{g, {"u", "v"}, {SetFunction::zero(GroundSet{}),
                                    table({"u"}, {"0", "1/2"})}};
}

/// a -> v, b -> v with the supermodular table (0, 1/5, 1/5, 3/5).
GTInstance nonsub() {
  DirectedGraph g(3, {0b000, 0b000, 0b011});
  return GTInstance{g,
                    {"a", "b", "v"},
                    {SetFunction::zero(GroundSet{}), SetFunction::zero(GroundSet{}),
                     table({"a", "b"}, {"0", "1/5", "1/5", "3/5"})}};
}

/// Single edge u -> v, triggering weight p on {u}.
TriggeringInstance one_edge_triggering(const Rational& p) {
  DirectedGraph g(2, {0b00, 0b01});
  return TriggeringInstance{
      g, {"u", "v"},
      {SetFunction(GroundSet{}, {Rational(1)}),
       SetFunction(GroundSet({"u"}), {Rational(1) - p, p})}};
}

}  // namespace

TEST_CASE("directed graphs expose masks and local coordinates") {
  DirectedGraph g(3, {0b110, 0b000, 0b010});
  CHECK(g.n() == 3);
  CHECK(g.all_nodes() == 0b111);
  CHECK(g.in_degree(0) == 2);
  CHECK(g.in_list(0) == std::vector<int>{1, 2});
  CHECK(g.edge_count() == 3);
  CHECK(g.out_mask(1) == 0b101);
  CHECK(g.to_local(0, 0b110) == 0b11);
  CHECK(g.to_local(0, 0b100) == 0b10);
  CHECK(g.to_global(0, 0b10) == 0b100);
  CHECK(g.to_global(0, g.to_local(0, 0b111)) == 0b110);
  CHECK_THROWS_AS(DirectedGraph(2, {0b01, 0b00}), std::invalid_argument);  // self-loop
  CHECK_THROWS_AS(DirectedGraph(21, std::vector<std::uint32_t>(21, 0)),
                  std::invalid_argument);
}

TEST_CASE("threshold instances validate their table frames") {
  GTInstance inst = two_node();
  CHECK(validate_gt(inst).empty());
  CHECK(inst.node_by_label("v") == 1);
  CHECK(inst.node_by_label("w") == -1);
  CHECK(inst.threshold_at(1, 0b01) == Rational(1, 2));
  CHECK(inst.threshold_at(1, 0b10) == Rational(0));  // v itself is not an input

  GTInstance wrong_ground = inst;
  wrong_ground.thresholds[1] = table({"x"}, {"0", "1/2"});
  CHECK_FALSE(validate_gt(wrong_ground).empty());

  GTInstance nonzero_empty = inst;
  nonzero_empty.thresholds[1] = table({"u"}, {"1/4", "1/2"});
  CHECK_FALSE(validate_gt(nonzero_empty).empty());

  GTInstance drops = inst;
  drops.thresholds[1] = table({"u"}, {"0", "-1/2"});
  CHECK_FALSE(validate_gt(drops).empty());
}

TEST_CASE("cascades are monotone fixpoints of the threshold rule") {
  const GTInstance inst = two_node();
  std::vector<Rational> levels = {Rational(1), Rational(1, 2)};
  CHECK(cascade(inst, 0b01, levels) == 0b11);  // level exactly at the threshold
  levels[1] = Rational(51, 100);
  CHECK(cascade(inst, 0b01, levels) == 0b01);
  CHECK(cascade(inst, 0b00, levels) == 0b00);
  CHECK(cascade(inst, 0b10, levels) == 0b10);
}

TEST_CASE("exact spread on the one-edge instance") {
  const GTInstance inst = two_node();
  const SpreadResult none = exact_spread(inst, 0b00);
  CHECK(none.sigma == Rational(0));
  const SpreadResult u = exact_spread(inst, 0b01);
  CHECK(u.sigma == Rational(3, 2));
  CHECK(u.per_node[0] == Rational(1));
  CHECK(u.per_node[1] == Rational(1, 2));
  const SpreadResult v = exact_spread(inst, 0b10);
  CHECK(v.sigma == Rational(1));
  const SpreadResult both = exact_spread(inst, 0b11);
  CHECK(both.sigma == Rational(2));
}

TEST_CASE("exact spread on the supermodular gate") {
  const GTInstance inst = nonsub();
  CHECK(exact_spread(inst, 0b000).sigma == Rational(0));
  CHECK(exact_spread(inst, 0b001).sigma == Rational(6, 5));
  CHECK(exact_spread(inst, 0b010).sigma == Rational(6, 5));
  const SpreadResult both = exact_spread(inst, 0b011);
  CHECK(both.sigma == Rational(13, 5));
  CHECK(both.per_node[2] == Rational(3, 5));
}

TEST_CASE("the exact oracle refuses to exceed its state budget") {
  const GTInstance inst = two_node();
  CHECK_THROWS_AS(exact_spread(inst, 0b00, 1), budget_error);
  try {
    exact_spread(inst, 0b00, 1);
  } catch (const budget_error& e) {
    CHECK(e.required() == 2);
    CHECK(e.allowed() == 1);
  }
  // Seeding removes branching: u's level no longer matters.
  CHECK(exact_spread(inst, 0b11, 1).sigma == Rational(2));
}

TEST_CASE("layer assignments are validated edge by edge") {
  const GTInstance inst = two_node();  // u -> v
  LayerAssignment good{{1, 2}, 2};     // wrong direction: u must be BELOW v
  CHECK_THROWS_AS(check_layering(inst.graph, good), std::invalid_argument);
  LayerAssignment right{{2, 1}, 2};
  CHECK_NOTHROW(check_layering(inst.graph, right));
  LayerAssignment flat{{1, 1}, 1};
  CHECK_THROWS_AS(check_layering(inst.graph, flat), std::invalid_argument);
  LayerAssignment out_of_range{{3, 1}, 2};
  CHECK_THROWS_AS(check_layering(inst.graph, out_of_range), std::invalid_argument);
}

TEST_CASE("layered recursion matches the level-space oracle") {
  const GTInstance inst = two_node();
  const LayerAssignment la{{2, 1}, 2};
  CHECK(layered_activation(inst, la, 0b01, 1) == Rational(1, 2));
  CHECK(layered_activation(inst, la, 0b01, 0) == Rational(1));
  CHECK(layered_activation(inst, la, 0b00, 1) == Rational(0));
  // Seeds must live in the bottom layer.
  CHECK_THROWS_AS(layered_activation(inst, la, 0b10, 1), std::invalid_argument);
}

TEST_CASE("monte carlo estimates agree with the exact value") {
  const GTInstance inst = two_node();
  const MonteCarloSpread est = monte_carlo_spread(inst, 0b01, 20'000, 7);
  CHECK(est.trials == 20'000);
  CHECK(est.std_error > 0);
  CHECK(std::abs(est.mean - 1.5) <= 4 * est.std_error);

  const MonteCarloSpread rerun = monte_carlo_spread(inst, 0b01, 20'000, 7);
  CHECK(est.mean == rerun.mean);
  CHECK(est.std_error == rerun.std_error);

  const MonteCarloSpread single = monte_carlo_spread(inst, 0b01, 1, 7);
  CHECK(single.std_error == 0);
  CHECK_THROWS_AS(monte_carlo_spread(inst, 0b01, 0, 7), std::invalid_argument);
}

TEST_CASE("live-edge sampling reproduces triggering spreads") {
  const TriggeringInstance inst = one_edge_triggering(Rational(1, 3));
  CHECK(validate_triggering(inst).empty());
  const SpreadResult sp = live_edge_spread(inst, 0b01);
  CHECK(sp.sigma == Rational(4, 3));
  CHECK(sp.per_node[0] == Rational(1));
  CHECK(sp.per_node[1] == Rational(1, 3));
  CHECK(live_edge_spread(inst, 0b10).sigma == Rational(1));
  CHECK(live_edge_spread(inst, 0b00).sigma == Rational(0));

  TriggeringInstance bad = inst;
  bad.distributions[1] = SetFunction(GroundSet({"u"}), {Rational(1, 2), Rational(1, 3)});
  CHECK_FALSE(validate_triggering(bad).empty());
}

TEST_CASE("ancestor-set distributions sum activation events") {
  const TriggeringInstance inst = one_edge_triggering(Rational(1, 3));
  const SetFunction r_v = reach_distribution(inst, 1);
  // Ancestors of v: {v} with the no-edge draw, {u,v} with the edge live.
  CHECK(r_v.at(0b10) == Rational(2, 3));
  CHECK(r_v.at(0b11) == Rational(1, 3));
  CHECK(r_v.at(0b00) == Rational(0));
  CHECK(r_v.at(0b01) == Rational(0));
  const SetFunction r_u = reach_distribution(inst, 0);
  CHECK(r_u.at(0b01) == Rational(1));
}
