#include <doctest.h>

#include "opconvex/cone.hpp"
#include "test_util.hpp"

using namespace opconvex;
using namespace opconvex::testing;

namespace {

PolyhedralCone wedge() {
  return make_polyhedral(2, {{Rational(1), Rational(0)}, {Rational(1), Rational(1)}});
}

PolyhedralCone line() {
  return make_polyhedral(2, {{Rational(1), Rational(0)}, {Rational(-1), Rational(0)}});
}

VecQ q(std::initializer_list<long> xs) {
  VecQ v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

/// Independent route: y lies in the double dual iff <y, phi> cannot be pushed
/// below zero over the inequality description of the dual cone.
bool double_dual_member(const PolyhedralCone& cone, const VecQ& y) {
  LinearProgram lp;
  for (std::size_t j = 0; j < cone.dim; ++j) lp.add_var();
  for (const auto& g : dual_cone(cone)) lp.add_row(g, Rel::ge, Rational(0));
  lp.objective = y;
  auto res = lp_optimize(lp);
  return std::holds_alternative<LpOptimum>(res);
}

PolyhedralCone random_cone(Rng& rng, std::size_t dim, std::size_t max_gens) {
  std::uniform_int_distribution<long> entry(-5, 5);
  std::uniform_int_distribution<std::size_t> count(1, max_gens);
  std::vector<VecQ> gens;
  std::size_t target = count(rng);
  while (gens.size() < target) {
    VecQ g(dim);
    for (auto& c : g) c = Rational(entry(rng));
    if (!is_zero(g)) gens.push_back(std::move(g));
  }
  return make_polyhedral(dim, std::move(gens));
}

VecQ random_conic_combination(Rng& rng, const PolyhedralCone& cone) {
  std::uniform_int_distribution<long> num(0, 6);
  VecQ y(cone.dim, Rational(0));
  for (const auto& g : cone.generators) y = vec_add(y, vec_scale(ratio(num(rng), 3), g));
  return y;
}

}  // namespace

TEST_CASE("dual descriptions list one inequality per generator") {
  auto d = dual_cone(wedge());
  REQUIRE(d.size() == 2);
  CHECK(d[0] == q({1, 0}));  // a >= 0
  CHECK(d[1] == q({1, 1}));  // a + b >= 0

  auto od = dual_cone(orthant(2));
  CHECK(od.size() == 2);  // self-dual orthant

  auto hd = dual_cone(make_polyhedral(2, {{Rational(1), Rational(0)}}));
  CHECK(hd.size() == 1);  // halfplane
}

TEST_CASE("sharpness witnesses and refutations") {
  auto res = is_sharp(RationalCone{wedge()});
  auto* w = std::get_if<SharpnessWitness>(&res);
  REQUIRE(w);
  for (const auto& g : wedge().generators) CHECK(dot(w->phi, g) >= 1);

  auto bad = is_sharp(RationalCone{line()});
  CHECK(std::holds_alternative<SharpnessRefutation>(bad));

  auto ice = is_sharp(RationalCone{make_lorenz(Rational(1), 2, NormKind::linf)});
  auto* iw = std::get_if<SharpnessWitness>(&ice);
  REQUIRE(iw);
  CHECK(iw->phi == q({0, 0, 1}));
}

TEST_CASE("salience detects lineality") {
  CHECK(!is_salient_cone(wedge()));
  auto w = is_salient_cone(line());
  REQUIRE(w.has_value());
  CHECK(*w == q({1, 0}));
  CHECK(!is_salient_cone(make_polyhedral(2, {{Rational(1), Rational(1)}})));  // a single ray
}

TEST_CASE("controllability certificates on the worked examples") {
  auto cert = controllability_functional(RationalCone{wedge()}, NormKind::l1);
  CHECK(cert.phi == q({1, 1}));
  CHECK(cert.scale == 1);
  CHECK(norm_l1(q({1, 0})) <= cert.scale * dot(cert.phi, q({1, 0})));
  CHECK(norm_l1(q({1, 1})) <= cert.scale * dot(cert.phi, q({1, 1})));

  auto ocert = controllability_functional(RationalCone{orthant(2)}, NormKind::l1);
  CHECK(ocert.phi == q({1, 1}));
  CHECK(ocert.scale == 1);

  CHECK_THROWS_AS(controllability_functional(RationalCone{line()}, NormKind::l1), Error);
}

TEST_CASE("Lorenz membership in all three norms") {
  auto linf = make_lorenz(Rational(1), 2, NormKind::linf);
  CHECK(lorenz_member(linf, q({1, -1, 1})));
  CHECK(!lorenz_member(linf, q({2, 0, 1})));

  auto l2 = make_lorenz(Rational(1), 2, NormKind::l2);
  CHECK(lorenz_member(l2, q({3, 4, 5})));
  CHECK(!lorenz_member(l2, q({3, 4, 4})));
  CHECK(lorenz_member(l2, q({0, 0, 0})));  // apex

  auto scaled = make_lorenz(ratio(1, 2), 1, NormKind::l1);
  CHECK(lorenz_member(scaled, q({2, 1})));
  CHECK(!lorenz_member(scaled, q({3, 1})));
}

TEST_CASE("Lorenz dual membership uses the dual norm") {
  auto linf = make_lorenz(Rational(1), 2, NormKind::linf);
  VecQ phi{ratio(1, 2), ratio(1, 2), Rational(1)};
  CHECK(lorenz_dual_member(linf, phi));  // l1 of (1/2,1/2) = 1 <= 1
  CHECK(lorenz_dual_member(linf, q({0, 0, 3})));

  auto l2 = make_lorenz(Rational(1), 2, NormKind::l2);
  CHECK(!lorenz_dual_member(l2, q({3, 4, 4})));  // 25 > 16 after squaring
  CHECK(lorenz_dual_member(l2, q({3, 4, 5})));
}

TEST_CASE("cone order comparisons") {
  RationalCone orth{orthant(2)};
  CHECK(cone_leq(orth, q({0, 0}), q({1, 2})));
  CHECK(!cone_leq(orth, q({1, 2}), q({0, 0})));
  CHECK(cone_leq(orth, q({1, 2}), q({1, 2})));

  RationalCone ice{make_lorenz(Rational(1), 1, NormKind::linf)};
  CHECK(cone_leq(ice, q({0, 0}), q({1, 1})));
  CHECK(!cone_leq(ice, q({0, 0}), q({2, 1})));
  CHECK(cone_leq(ice, q({5, -3}), q({5, -3})));
}

TEST_CASE("expanded Lorenz generators stay on the cone boundary") {
  for (auto norm : {NormKind::l1, NormKind::linf}) {
    auto lz = make_lorenz(ratio(3, 2), 3, norm);
    auto gens = lorenz_generators(lz);
    CHECK(gens.size() == (norm == NormKind::l1 ? 6 : 8));
    for (const auto& g : gens) CHECK(lorenz_member(lz, g));
  }
  CHECK_THROWS_AS(lorenz_generators(make_lorenz(Rational(1), 2, NormKind::l2)), Error);
}

TEST_CASE("every random salient cone is sharp, and the bipolar agrees with the cone") {
  Rng rng(90210);
  int salient_count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    PolyhedralCone cone = random_cone(rng, 3, 5);
    bool salient = !is_salient_cone(cone).has_value();
    bool sharp = std::holds_alternative<SharpnessWitness>(is_sharp(RationalCone{cone}));
    if (salient) {
      ++salient_count;
      CHECK(sharp);
    }
    // bipolar agreement along both membership routes
    for (int k = 0; k < 12; ++k) {
      VecQ y;
      if (k % 2 == 0) {
        y = random_conic_combination(rng, cone);
      } else {
        y.assign(3, Rational(0));
        std::uniform_int_distribution<long> entry(-5, 5);
        for (auto& c : y) c = Rational(entry(rng));
      }
      CHECK(cone_member(RationalCone{cone}, y) == double_dual_member(cone, y));
    }
  }
  CHECK(salient_count > 5);
}

TEST_CASE("controllability certificates hold on random conic combinations") {
  Rng rng(777111);
  for (int trial = 0; trial < 25; ++trial) {
    PolyhedralCone cone = random_cone(rng, 3, 4);
    if (is_salient_cone(cone)) continue;  // only sharp cones qualify
    for (auto norm : {NormKind::l1, NormKind::linf}) {
      auto cert = controllability_functional(RationalCone{cone}, norm);
      for (int k = 0; k < 30; ++k) {
        VecQ y = random_conic_combination(rng, cone);
        Rational n = norm == NormKind::l1 ? norm_l1(y) : norm_linf(y);
        CHECK(n <= cert.scale * dot(cert.phi, y));
      }
    }
  }
}
