#include <doctest.h>

#include <algorithm>

#include "opconvex/functions.hpp"
#include "test_util.hpp"

using namespace opconvex;
using namespace opconvex::testing;

namespace {

Operation min2(std::size_t size) {
  std::vector<ElementId> table(size * size);
  for (ElementId i = 0; i < size; ++i)
    for (ElementId j = 0; j < size; ++j) table[i * size + j] = std::min(i, j);
  return Operation(size, 2, std::move(table));
}

OperationFamily min_chain(std::size_t size, const std::string& name = "min2") {
  return OperationFamily(Carrier::plain(size), {{name, min2(size)}});
}

/// Range Q with the usual order and the arithmetic-mean operation.
OrderedRange average_range(const std::string& name = "min2") {
  MatQ half(1, 1);
  half.at(0, 0) = ratio(1, 2);
  return OrderedRange{make_linear_range(1, RationalCone{orthant(1)}, {{name, {half, half}}})};
}

FunctionTable scalar_table(std::initializer_list<Rational> values) {
  std::vector<VecQ> v;
  for (const auto& q : values) v.push_back(VecQ{q});
  return FunctionTable::linear(std::move(v));
}

/// Range: a chain poset carrying min as its operation (matches a binary
/// domain op named `name`).
OrderedRange min_range(std::size_t size, const std::string& name = "min2") {
  return OrderedRange{make_finite_range(
      FinitePoset::total_order(size),
      OperationFamily(Carrier::plain(size), {{name, min2(size)}}))};
}

}  // namespace

TEST_CASE("convexity of maps from a min chain into averaged rationals") {
  auto fam = min_chain(4);
  auto range = average_range();
  CHECK(!is_convex_map(scalar_table({1, 2, 2, 5}), fam, range));

  auto w = is_convex_map(scalar_table({5, 1, 1, 1}), fam, range);
  REQUIRE(w.has_value());
  CHECK(w->args == std::vector<ElementId>{0, 1});  // f(0)=5 > (5+1)/2

  CHECK(!is_convex_map(scalar_table({7, 7, 7, 7}), fam, range));
}

TEST_CASE("affineness of maps") {
  auto mid = build_modular_linear_family(5, {{3, 3}});
  auto range5 = average_range("g0");
  CHECK(!is_affine_map(scalar_table({2, 2, 2, 2, 2}), mid, range5));
  CHECK(is_affine_map(scalar_table({0, 1, 2, 3, 4}), mid, range5).has_value());

  auto fam = min_chain(4);
  auto range = average_range();
  auto w = is_affine_map(scalar_table({0, 1, 2, 3}), fam, range);
  REQUIRE(w.has_value());
  CHECK(w->args == std::vector<ElementId>{0, 1});
}

TEST_CASE("concavity mirrors convexity") {
  auto fam = min_chain(4);
  auto range = average_range();
  CHECK(!is_concave_map(scalar_table({5, 2, 2, 1}), fam, range));
  CHECK(!is_concave_map(scalar_table({3, 3, 3, 3}), fam, range));
  CHECK(is_concave_map(scalar_table({1, 2, 2, 5}), fam, range).has_value());
}

TEST_CASE("affine = convex and concave, extensionally") {
  Rng rng(161803);
  auto fam = min_chain(4);
  auto range = average_range();
  std::uniform_int_distribution<long> val(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<VecQ> values;
    for (int i = 0; i < 4; ++i) values.push_back(VecQ{ratio(val(rng), 2)});
    FunctionTable f = FunctionTable::linear(values);
    bool affine = !is_affine_map(f, fam, range);
    bool both = !is_convex_map(f, fam, range) && !is_concave_map(f, fam, range);
    CHECK(affine == both);
  }
}

TEST_CASE("family mismatch is rejected") {
  auto fam = min_chain(4);
  auto range = average_range("other_name");
  CHECK_THROWS_AS(is_convex_map(scalar_table({1, 2, 2, 5}), fam, range), Error);
  auto short_table = scalar_table({1, 2});
  CHECK_THROWS_AS(is_convex_map(short_table, fam, average_range()), Error);
}

TEST_CASE("pointwise suprema") {
  auto range = average_range();
  FunctionTable a = scalar_table({1, 1, 1, 1});
  FunctionTable b = scalar_table({0, 2, 2, 2});
  CHECK(pointwise_sup({a, b}, range) == scalar_table({1, 2, 2, 2}));
  CHECK(pointwise_sup({b}, range) == b);

  // an antichain has no join of two distinct values
  OrderedRange anti{make_finite_range(
      FinitePoset::antichain(2),
      OperationFamily(Carrier::plain(2), {{"min2", Operation(2, 2, {0, 0, 0, 1})}}))};
  FunctionTable fa = FunctionTable::finite({0, 0, 0, 0});
  FunctionTable fb = FunctionTable::finite({1, 0, 0, 0});
  CHECK_THROWS_AS(pointwise_sup({fa, fb}, anti), Error);

  // non-orthant cone orders are rejected for suprema
  OrderedRange skewed{make_linear_range(
      1, RationalCone{make_polyhedral(1, {{Rational(-1)}})},
      {{"min2", {MatQ::identity(1), MatQ::identity(1)}}})};
  CHECK_THROWS_AS(pointwise_sup({scalar_table({0, 0, 0, 0})}, skewed), Error);
}

TEST_CASE("pointwise chain infima") {
  auto range = average_range();
  FunctionTable a = scalar_table({3, 3, 3, 3});
  FunctionTable b = scalar_table({1, 2, 2, 2});
  CHECK(pointwise_inf_chain({a, b}, range) == b);
  CHECK(pointwise_inf_chain({a}, range) == a);
  FunctionTable c = scalar_table({2, 1, 1, 1});
  CHECK_THROWS_AS(pointwise_inf_chain({b, c}, range), Error);  // incomparable pair
}

TEST_CASE("order automorphism checks, linear flavor") {
  CHECK(!check_order_automorphism(average_range(), "min2", 1));
  CHECK(!check_order_automorphism(average_range(), "min2", 2));

  MatQ minus(1, 1);
  minus.at(0, 0) = -1;
  MatQ two(1, 1);
  two.at(0, 0) = 2;
  OrderedRange flipped{make_linear_range(1, RationalCone{orthant(1)}, {{"m", {minus, two}}})};
  auto w = check_order_automorphism(flipped, "m", 1);
  REQUIRE(w.has_value());
  CHECK(w->reason == "matrix image leaves the order cone");
  CHECK(!check_order_automorphism(flipped, "m", 2));  // doubling preserves the orthant

  MatQ singular(1, 1);
  OrderedRange degenerate{make_linear_range(1, RationalCone{orthant(1)}, {{"m", {singular, two}}})};
  auto s = check_order_automorphism(degenerate, "m", 1);
  REQUIRE(s.has_value());
  CHECK(s->reason == "slot matrix is singular");
}

TEST_CASE("order automorphism checks, finite flavor") {
  auto range = min_range(2);
  auto w = check_order_automorphism(range, "min2", 1);
  REQUIRE(w.has_value());  // u -> min(u, 0) collapses the chain
  CHECK(w->reason == "section is not injective");

  // a cyclic shift table is a bijection but scrambles the order
  OrderedRange shifted{make_finite_range(
      FinitePoset::total_order(3),
      OperationFamily(Carrier::plain(3), {{"s", Operation(3, 1, {1, 2, 0})}}))};
  auto v = check_order_automorphism(shifted, "s", 1);
  REQUIRE(v.has_value());
  CHECK(v->reason == "section is not order preserving");

  OrderedRange idrange{make_finite_range(
      FinitePoset::total_order(3),
      OperationFamily(Carrier::plain(3), {{"s", Operation(3, 1, {0, 1, 2})}}))};
  CHECK(!check_order_automorphism(idrange, "s", 1));
}

TEST_CASE("monotonicity checks") {
  CHECK(!check_nondecreasing(average_range(), "min2"));
  CHECK(!check_nondecreasing(min_range(4), "min2"));

  MatQ neg(1, 1);
  neg.at(0, 0) = -1;
  MatQ pos(1, 1);
  pos.at(0, 0) = 1;
  OrderedRange mixed{make_linear_range(1, RationalCone{orthant(1)}, {{"m", {pos, neg}}})};
  auto w = check_nondecreasing(mixed, "m");
  REQUIRE(w.has_value());
  CHECK(w->slot == 2);
}

TEST_CASE("range-side structural checks") {
  CHECK(!range_check_reflexive(average_range()));
  CHECK(!range_check_mutually_distributive(average_range()));

  MatQ one = MatQ::identity(1);
  OrderedRange additive{make_linear_range(1, RationalCone{orthant(1)}, {{"m", {one, one}}})};
  CHECK(range_check_reflexive(additive).has_value());          // slot sum is 2
  CHECK(range_check_mutually_distributive(additive).has_value());

  CHECK(!range_check_reflexive(min_range(3)));
  CHECK(!range_check_mutually_distributive(min_range(3)));
}

TEST_CASE("suprema of affine tables stay convex") {
  Rng rng(112233);
  auto fam = min_chain(4);
  auto frange = min_range(4);
  std::uniform_int_distribution<std::size_t> count(1, 5);
  std::uniform_int_distribution<ElementId> val(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    // nondecreasing tables into the chain range are exactly the affine maps here
    std::vector<FunctionTable> tables;
    for (std::size_t i = 0, c = count(rng); i < c; ++i) {
      std::vector<ElementId> vals(4);
      for (auto& v : vals) v = val(rng);
      std::sort(vals.begin(), vals.end());
      FunctionTable t = FunctionTable::finite(std::move(vals));
      REQUIRE(!is_affine_map(t, fam, frange));
      tables.push_back(std::move(t));
    }
    CHECK(!is_convex_map(pointwise_sup(tables, frange), fam, frange));
  }
}

TEST_CASE("chain infima of convex maps stay convex under automorphism ranges") {
  Rng rng(445566);
  auto fam = min_chain(4);
  auto range = average_range();
  std::uniform_int_distribution<long> val(0, 3);
  std::uniform_int_distribution<std::size_t> count(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    // base convex (nondecreasing) table, then add nonnegative nondecreasing
    // increments to build a pointwise chain of convex maps
    std::vector<Rational> base(4);
    for (auto& q : base) q = Rational(val(rng));
    std::sort(base.begin(), base.end());
    std::vector<FunctionTable> chain;
    std::vector<Rational> cur = base;
    for (std::size_t i = 0, c = count(rng); i < c; ++i) {
      std::vector<VecQ> values;
      for (const auto& q : cur) values.push_back(VecQ{q});
      FunctionTable t = FunctionTable::linear(std::move(values));
      REQUIRE(!is_convex_map(t, fam, range));
      chain.push_back(std::move(t));
      std::vector<Rational> bump(4);
      for (auto& q : bump) q = Rational(val(rng));
      std::sort(bump.begin(), bump.end());
      for (int j = 0; j < 4; ++j) cur[j] += bump[j];
    }
    CHECK(!is_convex_map(pointwise_inf_chain(chain, range), fam, range));
  }
}
