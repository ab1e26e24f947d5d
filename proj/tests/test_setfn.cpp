#include <stdexcept>
#include <vector>

#include "adk/rational.hpp"
#include "adk/rng.hpp"
#include "adk/setfn.hpp"
#include "doctest.h"

using namespace adk;

namespace {

SetFunction make(const std::vector<std::string>& labels,
                 const std::vector<std::string>& values) {
  std::vector<Rational> table;
  for (const auto& v : values) table.push_back(rational_from_string(v));
  return SetFunction(GroundSet(labels), std::move(table));
}

const SetFunction kOr = make({"a", "b"}, {"0", "1", "1", "1"});
const SetFunction kAnd = make({"a", "b"}, {"0", "0", "0", "1"});
const SetFunction kNonsub = make({"a", "b"}, {"0", "1/5", "1/5", "3/5"});

}  // namespace

TEST_CASE("rational strings parse and canonicalize") {
  CHECK(rational_to_string(rational_from_string("2/4")) == "1/2");
  CHECK(rational_to_string(rational_from_string("-3/6")) == "-1/2");
  CHECK(rational_to_string(rational_from_string("7")) == "7");
  CHECK(rational_to_string(Rational(4, 2)) == "2");
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
  CHECK(in_unit_interval(Rational(1)));
  CHECK(in_unit_interval(Rational(0)));
  CHECK_FALSE(in_unit_interval(Rational(-1, 5)));
  CHECK_FALSE(in_unit_interval(Rational(6, 5)));
}

TEST_CASE("ground sets index labels and format masks") {
  GroundSet g({"x", "y", "z"});
  CHECK(g.size() == 3);
  CHECK(g.full_mask() == 0b111);
  CHECK(g.index_of("y") == 1);
  CHECK(g.index_of("w") == -1);
  CHECK(g.mask_to_string(0) == "{}");
  CHECK(g.mask_to_string(0b101) == "{x,z}");
  CHECK_THROWS_AS(GroundSet({"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(GroundSet({""}), std::invalid_argument);
  GroundSet empty;
  CHECK(empty.size() == 0);
  CHECK(empty.full_mask() == 0);
}

TEST_CASE("set function tables are dense and validated") {
  CHECK_THROWS_AS(make({"a", "b"}, {"0", "1"}), std::invalid_argument);
  CHECK(kOr.table_size() == 4);
  CHECK(kOr.is_monotone());
  CHECK(kOr.values_in_unit_interval());
  CHECK_FALSE(make({"a"}, {"0", "-1"}).is_monotone());
  const SetFunction z = SetFunction::zero(GroundSet({"a"}));
  CHECK(z.at(0) == 0);
  CHECK(z.at(1) == 0);
}

TEST_CASE("alternating differences match the subset-sum definition") {
  // OR: second-order difference at the empty set is -1.
  CHECK(difference(kOr, 0b11, 0) == Rational(-1));
  CHECK(difference(kOr, 0b01, 0b10) == Rational(0));  // 1 - 1
  CHECK(difference(kOr, 0b01, 0) == Rational(1));
  // Overlap forces zero.
  CHECK(difference(kOr, 0b01, 0b01) == Rational(0));
  CHECK(difference(kAnd, 0b11, 0b10) == Rational(0));
  // AND: supermodular bump.
  CHECK(difference(kAnd, 0b11, 0) == Rational(1));
  CHECK(difference(kNonsub, 0b11, 0) == Rational(1, 5));
}

TEST_CASE("order-k sign checks report the first witness") {
  CHECK(is_adk(kOr, 1).holds);
  CHECK(is_adk(kOr, 2).holds);
  CHECK(is_adk(kOr, k_unbounded).holds);

  CHECK(is_adk(kAnd, 1).holds);
  const AdkReport and2 = is_adk(kAnd, 2);
  REQUIRE_FALSE(and2.holds);
  CHECK(and2.witness->a_mask == 0b11);
  CHECK(and2.witness->s_mask == 0);
  CHECK(and2.witness->value == Rational(1));

  CHECK(is_adk(kNonsub, 1).holds);
  const AdkReport non2 = is_adk(kNonsub, 2);
  REQUIRE_FALSE(non2.holds);
  CHECK(non2.witness->a_mask == 0b11);
  CHECK(non2.witness->s_mask == 0);
  CHECK(non2.witness->value == Rational(1, 5));

  // Non-monotone function fails already at order 1.
  const SetFunction down = make({"a"}, {"0", "-1/2"});
  const AdkReport down1 = is_adk(down, 1);
  REQUIRE_FALSE(down1.holds);
  CHECK(down1.witness->a_mask == 0b1);
  CHECK(down1.witness->value == Rational(-1, 2));

  CHECK_THROWS_AS(is_adk(kOr, 0), std::invalid_argument);

  // Order is clamped to the ground size.
  const AdkReport clamped = is_adk(kOr, 17);
  CHECK(clamped.holds);
  CHECK(clamped.order_checked == 2);

  // Empty ground: nothing to check.
  const AdkReport empty = is_adk(SetFunction(), 1);
  CHECK(empty.holds);
  CHECK(empty.order_checked == 0);
}

TEST_CASE("signed subset-sum transform pairs with its inverse") {
  const SetFunction g = mobius(kOr);
  CHECK(g.at(0b00) == Rational(0));
  CHECK(g.at(0b01) == Rational(1));
  CHECK(g.at(0b10) == Rational(1));
  CHECK(g.at(0b11) == Rational(-1));
  CHECK(mobius_inverse(g).values() == kOr.values());

  RngStream rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    SetFunction f = SetFunction::zero(GroundSet([&] {
      std::vector<std::string> l;
      for (int i = 0; i < n; ++i) l.push_back(std::string(1, char('a' + i)));
      return l;
    }()));
    for (std::uint32_t m = 0; m < f.table_size(); ++m) {
      f.set(m, Rational(static_cast<long>(rng.below(19)) - 9,
                        1 + static_cast<long>(rng.below(6))));
    }
    const SetFunction t = mobius(f);
    for (std::uint32_t s = 0; s < f.table_size(); ++s) {
      CHECK(t.at(s) == difference(f, s, 0));
    }
    CHECK(mobius_inverse(t).values() == f.values());
    CHECK(mobius(mobius_inverse(f)).values() == f.values());
  }
}

TEST_CASE("multilinear extension interpolates the table") {
  PointVector x;
  x.coords = {Rational(1, 2), Rational(1, 2)};
  CHECK(multilinear_eval(kOr, x) == Rational(3, 4));
  CHECK(multilinear_eval(kAnd, x) == Rational(1, 4));

  // Vertices reproduce the table.
  for (std::uint32_t m = 0; m < 4; ++m) {
    PointVector v;
    v.coords = {Rational((m >> 0) & 1), Rational((m >> 1) & 1)};
    CHECK(multilinear_eval(kOr, v) == kOr.at(m));
  }

  PointVector bad;
  bad.coords = {Rational(3, 2), Rational(0)};
  CHECK_FALSE(bad.in_unit_cube());
  CHECK_THROWS_AS(multilinear_eval(kOr, bad), std::invalid_argument);
}

TEST_CASE("partial derivatives of the extension are difference mixtures") {
  PointVector x;
  x.coords = {Rational(1, 3), Rational(1, 2)};
  // d/da OR = 1 - x_b.
  CHECK(multilinear_partial(kOr, 0b01, x) == Rational(1, 2));
  // d/db OR = 1 - x_a.
  CHECK(multilinear_partial(kOr, 0b10, x) == Rational(2, 3));
  // Mixed second partial is the constant -1.
  CHECK(multilinear_partial(kOr, 0b11, x) == Rational(-1));
  // AND: d2/dadb = 1.
  CHECK(multilinear_partial(kAnd, 0b11, x) == Rational(1));
}

TEST_CASE("compounding plugs inner tables into the outer extension") {
  // Projections as inner functions reproduce the outer function.
  const SetFunction proj_a = make({"a", "b"}, {"0", "1", "0", "1"});
  const SetFunction proj_b = make({"a", "b"}, {"0", "0", "1", "1"});
  const SetFunction outer = make({"p", "q"}, {"0", "1", "1", "1"});
  const SetFunction h = compound(outer, {proj_a, proj_b});
  CHECK(h.values() == kOr.values());
  CHECK(h.ground().labels() == std::vector<std::string>{"a", "b"});

  PointVector x;
  x.coords = {Rational(1, 4), Rational(1, 2)};
  // H(x) = x_a + x_b - x_a x_b.
  CHECK(compound_eval_continuous(outer, {proj_a, proj_b}, x) ==
        Rational(1, 4) + Rational(1, 2) - Rational(1, 8));

  // Mismatched inner count is rejected.
  CHECK_THROWS_AS(compound(outer, {proj_a}), std::invalid_argument);
  // Inner values outside [0,1] are rejected.
  const SetFunction big = make({"a", "b"}, {"0", "2", "0", "2"});
  CHECK_THROWS_AS(compound(outer, {big, proj_b}), std::invalid_argument);
}

TEST_CASE("set partitions enumerate in restricted-growth order") {
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(3).size() == 5);
  CHECK(enumerate_partitions(5).size() == 52);
  CHECK(enumerate_partitions(6).size() == 203);

  const auto parts = enumerate_partitions(3);
  CHECK(parts.front().blocks == std::vector<std::uint32_t>{0b111});
  CHECK(parts.back().blocks == std::vector<std::uint32_t>{0b001, 0b010, 0b100});
  for (const Partition& p : parts) {
    std::uint32_t seen = 0;
    for (std::uint32_t b : p.blocks) {
      CHECK(b != 0);
      CHECK((seen & b) == 0);
      seen |= b;
    }
    CHECK(seen == 0b111);
  }
  CHECK_THROWS_AS(enumerate_partitions(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_partitions(7), std::invalid_argument);
}

TEST_CASE("compound mixed partials expand over partitions") {
  const SetFunction proj_a = make({"a", "b"}, {"0", "1", "0", "1"});
  const SetFunction proj_b = make({"a", "b"}, {"0", "0", "1", "1"});
  const SetFunction outer = make({"p", "q"}, {"0", "1", "1", "1"});
  PointVector x;
  x.coords = {Rational(1, 4), Rational(1, 2)};

  // H(x) = x_a + x_b - x_a x_b: dH/da = 1 - x_b, d2H/dadb = -1.
  CHECK(partition_derivative(outer, {proj_a, proj_b}, {0}, x) == Rational(1, 2));
  CHECK(partition_derivative(outer, {proj_a, proj_b}, {0, 1}, x) == Rational(-1));

  // Same inner function twice: H(x) = 2 G(x) - G(x)^2 with G = x_a x_b.
  const SetFunction inner_and = make({"a", "b"}, {"0", "0", "0", "1"});
  // dH/da = (2 - 2 G) x_b at G = 1/8: (2 - 1/4) * 1/2 = 7/8.
  CHECK(partition_derivative(outer, {inner_and, inner_and}, {0}, x) ==
        Rational(7, 8));
  // d2H/dadb = 2 - 2 (G + x_a x_b G_ab'' cross terms):
  // H = 2 x_a x_b - x_a^2 x_b^2, d2/dadb = 2 - 4 x_a x_b = 2 - 1/2.
  CHECK(partition_derivative(outer, {inner_and, inner_and}, {0, 1}, x) ==
        Rational(3, 2));

  // Repeated coordinates are rejected (partials are per distinct coordinate).
  CHECK_THROWS_AS(partition_derivative(outer, {proj_a, proj_b}, {0, 0}, x),
                  std::invalid_argument);
}
