#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "opconvex/poset.hpp"
#include "test_util.hpp"

using namespace opconvex;

namespace {

Operation mod_add(std::size_t m) {
  std::vector<ElementId> table(m * m);
  for (ElementId a = 0; a < m; ++a)
    for (ElementId b = 0; b < m; ++b) table[a * m + b] = (a + b) % m;
  return Operation(m, 2, std::move(table));
}

}  // namespace

TEST_CASE("poset axioms are enforced on construction") {
  CHECK_THROWS_AS(FinitePoset(2, {true, false, false, false}), Error);  // not reflexive
  CHECK_THROWS_AS(FinitePoset(2, {true, true, true, true}), Error);    // not antisymmetric
  // 0<=1, 1<=2 but not 0<=2
  CHECK_THROWS_AS(FinitePoset(3, {true, true, false, false, true, true, false, false, true}),
                  Error);
  CHECK_NOTHROW(FinitePoset::total_order(4));
  CHECK_NOTHROW(FinitePoset::antichain(3));
}

TEST_CASE("chain infimum on the divisibility poset {1,2,3,6}") {
  FinitePoset div = FinitePoset::divisibility({1, 2, 3, 6});
  // ids: 0->1, 1->2, 2->3, 3->6
  CHECK(infimum_of_chain(div, Subset::of(4, {1, 3})) == 1);  // {2,6} -> 2
  CHECK(infimum_of_chain(div, Subset::of(4, {3})) == 3);     // singleton
  CHECK_THROWS_AS(infimum_of_chain(div, Subset::of(4, {1, 2})), Error);  // 2,3 incomparable
  CHECK_THROWS_AS(infimum_of_chain(div, Subset(4)), Error);              // empty
}

TEST_CASE("finite posets are lower chain-complete") {
  CHECK(is_lower_chain_complete(FinitePoset::total_order(1)).pass);
  CHECK(is_lower_chain_complete(FinitePoset::divisibility({1, 2, 3, 4, 5, 6})).pass);
  CHECK(is_lower_chain_complete(FinitePoset::antichain(3)).pass);
}

TEST_CASE("infimum transports along poset relabelings") {
  // an order isomorphism given as a permutation carries infima to infima
  testing::Rng rng(31415);
  FinitePoset div = FinitePoset::divisibility({1, 2, 4, 8, 3, 6});
  std::vector<ElementId> perm(div.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    FinitePoset relabeled = div.relabeled(perm);
    // chains in the divisibility order: {1,2,4}, {1,8}, {3,6}, {1,2,4,8}
    for (auto chain : {Subset::of(6, {0, 1, 2}), Subset::of(6, {0, 3}), Subset::of(6, {4, 5}),
                       Subset::of(6, {0, 1, 2, 3})}) {
      Subset image(6);
      for (auto i : chain.indices()) image.add(perm[i]);
      CHECK(infimum_of_chain(relabeled, image) == perm[infimum_of_chain(div, chain)]);
    }
  }
}

TEST_CASE("group-table validation") {
  CHECK_NOTHROW(GroupTable(mod_add(4), 0));
  CHECK_THROWS_AS(GroupTable(mod_add(4), 1), Error);  // wrong identity
  // min is associative+commutative but has no inverses
  std::vector<ElementId> min_table(9);
  for (ElementId a = 0; a < 3; ++a)
    for (ElementId b = 0; b < 3; ++b) min_table[a * 3 + b] = std::min(a, b);
  CHECK_THROWS_AS(GroupTable(Operation(3, 2, std::move(min_table)), 2), Error);
}

TEST_CASE("semigroup order on Z4") {
  GroupTable z4(mod_add(4), 0);

  FinitePoset discrete = semigroup_order(SemigroupOrderSpec::on_group(z4, Subset::of(4, {0})));
  for (ElementId a = 0; a < 4; ++a)
    for (ElementId b = 0; b < 4; ++b) CHECK(discrete.leq(a, b) == (a == b));

  CHECK_THROWS_WITH_AS(semigroup_order(SemigroupOrderSpec::on_group(z4, Subset::of(4, {0, 1}))),
                       doctest::Contains("not closed"), Error);
  CHECK_THROWS_AS(semigroup_order(SemigroupOrderSpec::on_group(z4, Subset::of(4, {1}))), Error);
  // {0,2} is closed and pointed but 2 = -2, so not salient
  CHECK_THROWS_WITH_AS(semigroup_order(SemigroupOrderSpec::on_group(z4, Subset::of(4, {0, 2}))),
                       doctest::Contains("both signs"), Error);
}

TEST_CASE("integer window carries the usual order via S = window n N") {
  // carrier {-2..2} as ids 0..4, S = {0,1,2} -> ids {2,3,4}
  FinitePoset usual =
      semigroup_order(SemigroupOrderSpec::on_window(-2, 2, Subset::of(5, {2, 3, 4})));
  for (ElementId a = 0; a < 5; ++a)
    for (ElementId b = 0; b < 5; ++b) CHECK(usual.leq(a, b) == (a <= b));

  CHECK_THROWS_AS(semigroup_order(SemigroupOrderSpec::on_window(-2, 2, Subset::of(5, {3}))),
                  Error);  // 0 missing
  CHECK_THROWS_WITH_AS(
      semigroup_order(SemigroupOrderSpec::on_window(-2, 2, Subset::of(5, {1, 2, 3}))),
      doctest::Contains("negation"), Error);  // -1 and 1 both generate
}

TEST_CASE("semigroup orders are translation compatible") {
  GroupTable z6(mod_add(6), 0);
  int orders = 0;
  for (std::size_t mask = 1; mask < 64; ++mask) {
    Subset s = testing::subset_from_mask(6, mask);
    try {
      FinitePoset order = semigroup_order(SemigroupOrderSpec::on_group(z6, s));
      ++orders;
      for (ElementId x = 0; x < 6; ++x)
        for (ElementId y = 0; y < 6; ++y)
          for (ElementId z = 0; z < 6; ++z)
            if (order.leq(x, y)) CHECK(order.leq(z6.add(x, z), z6.add(y, z)));
    } catch (const Error&) {
      continue;
    }
  }
  CHECK(orders > 0);
}
