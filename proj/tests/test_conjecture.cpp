#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "adk/conjecture.hpp"
#include "adk/diffusion.hpp"
#include "adk/errors.hpp"
#include "adk/rng.hpp"
#include "adk/setfn.hpp"
#include "adk/transforms.hpp"
#include "doctest.h"

using namespace adk;

namespace {

GroundSet letters(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
  return GroundSet(std::move(labels));
}

GTInstance nonsub() {
  DirectedGraph g(3, {0b000, 0b000, 0b011});
  std::vector<Rational> t = {Rational(0), Rational(1, 5), Rational(1, 5),
                             Rational(3, 5)};
  return GTInstance{g,
                    {"a", "b", "v"},
                    {SetFunction::zero(GroundSet{}), SetFunction::zero(GroundSet{}),
                     SetFunction(GroundSet({"a", "b"}), std::move(t))}};
}

GTInstance two_node() {
  DirectedGraph g(2, {0b00, 0b01});
  return GTInstance{g, {"u", "v"},
                    {SetFunction::zero(GroundSet{}),
                     SetFunction(GroundSet({"u"}), {Rational(0), Rational(1, 2)})}};
}

}  // namespace

TEST_CASE("generated functions certify their order") {
  const GroundSet ground = letters(4);
  for (int k : {1, 2, 3}) {
    for (const FunctionFamily family :
         {FunctionFamily::triggering_derived, FunctionFamily::rejection,
          FunctionFamily::coverage, FunctionFamily::mixed}) {
      RngStream rng(100 * k + static_cast<int>(family));
      const SetFunction f = gen_adk_function(ground, k, family, rng);
      CHECK(f.at(0) == Rational(0));
      CHECK(f.is_monotone());
      CHECK(f.values_in_unit_interval());
      CHECK(is_adk(f, k).holds);
    }
  }
  RngStream rng(9);
  const SetFunction finf =
      gen_adk_function(ground, k_unbounded, FunctionFamily::mixed, rng);
  CHECK(is_adk(finf, k_unbounded).holds);
}

TEST_CASE("strict generation separates consecutive orders") {
  const GroundSet ground = letters(4);
  for (int k : {1, 2, 3}) {
    RngStream rng(7 + k);
    const SetFunction f =
        gen_adk_function(ground, k, FunctionFamily::rejection, rng, true);
    CHECK(is_adk(f, k).holds);
    CHECK_FALSE(is_adk(f, k + 1).holds);
  }
  // Separation needs room above k.
  RngStream rng(3);
  CHECK_THROWS_AS(
      gen_adk_function(ground, 4, FunctionFamily::rejection, rng, true),
      std::invalid_argument);
}

TEST_CASE("generated instances respect their graph kind") {
  for (int i = 0; i < 10; ++i) {
    GenConfig cfg;
    cfg.n = 5;
    cfg.k = 2;
    cfg.rng_seed = 40 + i;

    cfg.graph_kind = GraphKind::layered;
    RngStream r1(cfg.rng_seed);
    const GeneratedInstance lay = gen_instance(cfg, r1);
    REQUIRE(lay.layers.has_value());
    CHECK_NOTHROW(check_layering(lay.instance.graph, *lay.layers));
    CHECK(validate_gt(lay.instance).empty());

    cfg.graph_kind = GraphKind::dag;
    RngStream r2(cfg.rng_seed);
    const GeneratedInstance dag = gen_instance(cfg, r2);
    CHECK_FALSE(dag.layers.has_value());
    CHECK_NOTHROW(dag_layering(dag.instance.graph));
    CHECK(validate_gt(dag.instance).empty());

    cfg.graph_kind = GraphKind::general;
    RngStream r3(cfg.rng_seed);
    const GeneratedInstance gen = gen_instance(cfg, r3);
    CHECK(validate_gt(gen.instance).empty());
    for (int v = 0; v < gen.instance.n(); ++v) {
      CHECK(gen.instance.graph.in_degree(v) <= cfg.max_indegree);
      CHECK(is_adk(gen.instance.thresholds[v], cfg.k).holds);
    }
  }
}

TEST_CASE("generated triggering instances are valid distributions") {
  GenConfig cfg;
  cfg.n = 5;
  cfg.rng_seed = 11;
  RngStream rng(cfg.rng_seed);
  const TriggeringInstance inst = gen_triggering_instance(cfg, rng);
  CHECK(validate_triggering(inst).empty());
}

TEST_CASE("the global check tabulates sigma and per-node activations") {
  const GlobalCheck good = global_adk_check(two_node(), 2);
  CHECK(good.holds);
  CHECK(good.sigma.at(0b01) == Rational(3, 2));
  CHECK(good.per_node[1].at(0b01) == Rational(1, 2));

  const GlobalCheck bad = global_adk_check(nonsub(), 2);
  REQUIRE_FALSE(bad.holds);
  CHECK(bad.function == "sigma");
  CHECK(bad.report.witness->a_mask == 0b011);  // direction {a,b}
  CHECK(bad.report.witness->s_mask == 0);
  CHECK(bad.report.witness->value == Rational(1, 5));
  CHECK(bad.sigma.at(0b011) == Rational(13, 5));

  CHECK(global_adk_check(nonsub(), 1).holds);
}

TEST_CASE("campaigns are deterministic and thread-invariant") {
  GenConfig cfg;
  cfg.graph_kind = GraphKind::layered;
  cfg.n = 4;
  cfg.k = 2;
  cfg.max_indegree = 3;
  cfg.rng_seed = 77;
  const ConjectureReport a = run_campaign(cfg, 6, k_default_budget, 1);
  const ConjectureReport b = run_campaign(cfg, 6, k_default_budget, 3);
  CHECK(a.instances == 6);
  CHECK(a.all_pass());
  CHECK_FALSE(a.search_mode);
  REQUIRE(a.items.size() == b.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    CHECK(a.items[i].index == b.items[i].index);
    CHECK(a.items[i].stream_seed == b.items[i].stream_seed);
    CHECK(a.items[i].verdict == b.items[i].verdict);
    CHECK(a.items[i].detail == b.items[i].detail);
  }
}

TEST_CASE("search mode engages for open-range orders on general graphs") {
  GenConfig cfg;
  cfg.graph_kind = GraphKind::general;
  cfg.n = 5;
  cfg.k = 3;
  cfg.max_indegree = 3;
  cfg.rng_seed = 5;
  const ConjectureReport rep = run_campaign(cfg, 4, k_default_budget, 2);
  CHECK(rep.search_mode);
  CHECK(rep.instances == 4);
  if (rep.counterexample) {
    // Any counterexample must carry an independent recheck result.
    CHECK_FALSE(rep.counterexample->recheck_detail.empty());
  }

  cfg.k = 2;  // order 2 on general graphs is settled ground, not search
  const ConjectureReport reg = run_campaign(cfg, 2, k_default_budget, 1);
  CHECK_FALSE(reg.search_mode);
  cfg.k = k_unbounded;
  const ConjectureReport inf = run_campaign(cfg, 2, k_default_budget, 1);
  CHECK_FALSE(inf.search_mode);
}

TEST_CASE("identity suite holds on small triggering instances") {
  DirectedGraph g(2, {0b00, 0b01});
  const TriggeringInstance inst{
      g, {"u", "v"},
      {SetFunction(GroundSet{}, {Rational(1)}),
       SetFunction(GroundSet({"u"}), {Rational(2, 3), Rational(1, 3)})}};
  const IdentityCheck chk = verify_identities(inst);
  CHECK(chk.ok);
  CHECK(chk.checks > 0);
  CHECK(chk.failures.empty());

  // Threshold route: converts first, then runs the same suite.
  const IdentityCheck chk_gt = verify_identities(two_node());
  CHECK(chk_gt.ok);

  CHECK_THROWS_AS(verify_identities(nonsub()), not_ad_infinity_error);
}

TEST_CASE("relabeling preserves spreads") {
  const GTInstance inst = nonsub();
  const std::vector<int> perm = {2, 0, 1};  // a->2, b->0, v->1
  const GTInstance image = permute_instance(inst, perm);
  CHECK(image.labels[2] == "a");
  CHECK(image.labels[0] == "b");
  CHECK(image.labels[1] == "v");
  // Seeds {a,b} map to {2,0}.
  CHECK(exact_spread(image, 0b101).sigma == exact_spread(inst, 0b011).sigma);
  CHECK(exact_spread(image, 0b100).sigma == exact_spread(inst, 0b001).sigma);
}
