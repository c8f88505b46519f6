#include <doctest.h>

#include "test_util.hpp"

using namespace opconvex;
using namespace opconvex::testing;

TEST_CASE("interval feasibility returns a verified point") {
  LinearProgram lp;
  lp.add_var();
  lp.add_row({Rational(1)}, Rel::ge, Rational(1));
  lp.add_row({Rational(1)}, Rel::le, Rational(2));
  auto res = lp_feasible(lp);
  auto* pt = std::get_if<LpPoint>(&res);
  REQUIRE(pt);
  CHECK(satisfies(lp, pt->x));
}

TEST_CASE("empty interval yields a Farkas certificate") {
  LinearProgram lp;
  lp.add_var();
  lp.add_row({Rational(1)}, Rel::ge, Rational(1));
  lp.add_row({Rational(1)}, Rel::le, Rational(0));
  auto res = lp_feasible(lp);
  auto* cert = std::get_if<LpInfeasible>(&res);
  REQUIRE(cert);
  CHECK(certifies_infeasibility(lp, cert->multipliers));
  // the textbook multipliers (1,1) also certify: x >= 1 and x <= 0 combine to 0 >= 1
  CHECK(certifies_infeasibility(lp, {Rational(1), Rational(1)}));
}

TEST_CASE("sharpness-style system for the cone {(1,0),(1,1)}") {
  LinearProgram lp;
  lp.add_var();
  lp.add_var();
  lp.add_row({Rational(1), Rational(0)}, Rel::ge, Rational(1));
  lp.add_row({Rational(1), Rational(1)}, Rel::ge, Rational(1));
  auto res = lp_feasible(lp);
  auto* pt = std::get_if<LpPoint>(&res);
  REQUIRE(pt);
  CHECK(satisfies(lp, pt->x));
}

TEST_CASE("bounded maximization reaches the vertex") {
  LinearProgram lp;
  lp.add_var();
  lp.add_row({Rational(1)}, Rel::le, Rational(2));
  lp.objective = VecQ{Rational(1)};
  lp.maximize = true;
  auto res = lp_optimize(lp);
  auto* opt = std::get_if<LpOptimum>(&res);
  REQUIRE(opt);
  CHECK(opt->value == 2);
  CHECK(opt->x[0] == 2);
}

TEST_CASE("unbounded maximization returns a verified ray") {
  LinearProgram lp;
  lp.add_var();
  lp.add_row({Rational(1)}, Rel::ge, Rational(0));
  lp.objective = VecQ{Rational(1)};
  lp.maximize = true;
  auto res = lp_optimize(lp);
  auto* ray = std::get_if<LpRay>(&res);
  REQUIRE(ray);
  CHECK(certifies_unboundedness(lp, *ray));
  CHECK(ray->direction[0] > 0);
}

TEST_CASE("controllability-style minimization for {(1,0),(1,1)} in l1") {
  // minimize <phi, g1 + g2> with <phi, g> >= ||g||_1 per generator
  LinearProgram lp;
  lp.add_var();
  lp.add_var();
  lp.add_row({Rational(1), Rational(0)}, Rel::ge, Rational(1));
  lp.add_row({Rational(1), Rational(1)}, Rel::ge, Rational(2));
  lp.objective = VecQ{Rational(2), Rational(1)};
  auto res = lp_optimize(lp);
  auto* opt = std::get_if<LpOptimum>(&res);
  REQUIRE(opt);
  CHECK(opt->x == VecQ{Rational(1), Rational(1)});
  CHECK(opt->value == 3);
}

TEST_CASE("variable bounds participate in certificates") {
  LinearProgram lp;
  lp.add_var(Rational(0));  // x >= 0
  lp.add_row({Rational(1)}, Rel::le, Rational(-1));
  auto res = lp_feasible(lp);
  auto* cert = std::get_if<LpInfeasible>(&res);
  REQUIRE(cert);
  CHECK(cert->multipliers.size() == 2);  // the user row plus the bound row
  CHECK(certifies_infeasibility(lp, cert->multipliers));
}

TEST_CASE("equalities with both-signed multipliers") {
  LinearProgram lp;
  lp.add_var();
  lp.add_var();
  lp.add_row({Rational(1), Rational(1)}, Rel::eq, Rational(3));
  lp.add_row({Rational(1), Rational(1)}, Rel::eq, Rational(4));
  auto res = lp_feasible(lp);
  auto* cert = std::get_if<LpInfeasible>(&res);
  REQUIRE(cert);
  CHECK(certifies_infeasibility(lp, cert->multipliers));
}

TEST_CASE("identical inputs give identical outputs") {
  Rng rng(1234);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t nvars = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    LinearProgram lp;
    for (std::size_t j = 0; j < nvars; ++j) lp.add_var();
    std::size_t nrows = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::uniform_int_distribution<int> rel_pick(0, 2);
    for (std::size_t i = 0; i < nrows; ++i) {
      VecQ c(nvars);
      for (auto& q : c) q = Rational(coeff(rng));
      lp.add_row(std::move(c), static_cast<Rel>(rel_pick(rng)), Rational(coeff(rng)));
    }
    auto once = lp_feasible(lp);
    auto twice = lp_feasible(lp);
    REQUIRE(once.index() == twice.index());
    if (auto* p1 = std::get_if<LpPoint>(&once))
      CHECK(p1->x == std::get<LpPoint>(twice).x);
    else
      CHECK(std::get<LpInfeasible>(once).multipliers == std::get<LpInfeasible>(twice).multipliers);
  }
}

TEST_CASE("feasibility verdicts agree with Fourier-Motzkin elimination") {
  Rng rng(555);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t nvars = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    LinearProgram lp;
    for (std::size_t j = 0; j < nvars; ++j) {
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
        lp.add_var(Rational(0));
      else
        lp.add_var();
    }
    std::size_t nrows = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::uniform_int_distribution<int> rel_pick(0, 2);
    for (std::size_t i = 0; i < nrows; ++i) {
      VecQ c(nvars);
      for (auto& q : c) q = Rational(coeff(rng));
      lp.add_row(std::move(c), static_cast<Rel>(rel_pick(rng)), Rational(coeff(rng)));
    }
    auto res = lp_feasible(lp);
    bool solver_says = std::holds_alternative<LpPoint>(res);
    CHECK(solver_says == fm_feasible(lp));
    if (solver_says) {
      ++feasible;
      CHECK(satisfies(lp, std::get<LpPoint>(res).x));
    } else {
      ++infeasible;
      CHECK(certifies_infeasibility(lp, std::get<LpInfeasible>(res).multipliers));
    }
  }
  CHECK(feasible > 20);
  CHECK(infeasible > 20);
}

TEST_CASE("optimization outcomes are exact and certified") {
  Rng rng(8899);
  int optima = 0, rays = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t nvars = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    LinearProgram lp;
    for (std::size_t j = 0; j < nvars; ++j) lp.add_var();
    std::size_t nrows = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::uniform_int_distribution<int> rel_pick(0, 2);
    for (std::size_t i = 0; i < nrows; ++i) {
      VecQ c(nvars);
      for (auto& q : c) q = Rational(coeff(rng));
      lp.add_row(std::move(c), static_cast<Rel>(rel_pick(rng)), Rational(coeff(rng)));
    }
    VecQ obj(nvars);
    for (auto& q : obj) q = Rational(coeff(rng));
    lp.objective = obj;
    lp.maximize = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    auto res = lp_optimize(lp);
    if (auto* opt = std::get_if<LpOptimum>(&res)) {
      ++optima;
      CHECK(satisfies(lp, opt->x));
      CHECK(opt->value == dot(obj, opt->x));
      // optimality spot check against random feasible perturbations along rows
      auto probe = lp_feasible(lp);
      auto* pt = std::get_if<LpPoint>(&probe);
      REQUIRE(pt);
      Rational probed = dot(obj, pt->x);
      CHECK((lp.maximize ? probed <= opt->value : probed >= opt->value));
    } else if (auto* ray = std::get_if<LpRay>(&res)) {
      ++rays;
      CHECK(certifies_unboundedness(lp, *ray));
    } else {
      CHECK(certifies_infeasibility(lp, std::get<LpInfeasible>(res).multipliers));
    }
  }
  CHECK(optima > 10);
  CHECK(rays > 10);
}

TEST_CASE("wider systems still agree with Fourier-Motzkin") {
  // The elimination oracle grows doubly exponentially, so this stays at four
  // variables and modest row counts.
  Rng rng(24680);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t nvars = 4;
    LinearProgram lp;
    for (std::size_t j = 0; j < nvars; ++j) lp.add_var();
    std::size_t nrows = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
    std::uniform_int_distribution<long> coeff(-2, 2);
    std::uniform_int_distribution<int> rel_pick(0, 2);
    for (std::size_t i = 0; i < nrows; ++i) {
      VecQ c(nvars);
      for (auto& q : c) q = Rational(coeff(rng));
      lp.add_row(std::move(c), static_cast<Rel>(rel_pick(rng)), Rational(coeff(rng)));
    }
    ++checked;
    CHECK(std::holds_alternative<LpPoint>(lp_feasible(lp)) == fm_feasible(lp));
  }
  CHECK(checked == 120);
}

TEST_CASE("degenerate inputs") {
  // no rows at all: the origin satisfies everything
  LinearProgram empty;
  empty.add_var();
  auto res = lp_feasible(empty);
  CHECK(std::holds_alternative<LpPoint>(res));

  // duplicated and redundant rows
  LinearProgram dup;
  dup.add_var();
  for (int i = 0; i < 4; ++i) dup.add_row({Rational(1)}, Rel::eq, Rational(5));
  auto res2 = lp_feasible(dup);
  auto* pt = std::get_if<LpPoint>(&res2);
  REQUIRE(pt);
  CHECK(pt->x[0] == 5);

  // zero-coefficient rows: 0 <= -1 is unsatisfiable on its own
  LinearProgram zero;
  zero.add_var();
  zero.add_row({Rational(0)}, Rel::le, Rational(-1));
  auto res3 = lp_feasible(zero);
  auto* cert = std::get_if<LpInfeasible>(&res3);
  REQUIRE(cert);
  CHECK(certifies_infeasibility(zero, cert->multipliers));

  // fractional data end to end
  LinearProgram frac;
  frac.add_var();
  frac.add_row({ratio(2, 3)}, Rel::eq, ratio(5, 7));
  auto res4 = lp_feasible(frac);
  auto* fpt = std::get_if<LpPoint>(&res4);
  REQUIRE(fpt);
  CHECK(fpt->x[0] == ratio(15, 14));
}

TEST_CASE("pivot cap raises a resource error") {
  LinearProgram lp;
  for (int j = 0; j < 6; ++j) lp.add_var();
  Rng rng(42);
  std::uniform_int_distribution<long> coeff(-5, 5);
  for (int i = 0; i < 10; ++i) {
    VecQ c(6);
    for (auto& q : c) q = Rational(coeff(rng));
    lp.add_row(std::move(c), Rel::le, Rational(1));
  }
  SolveOptions opts;
  opts.max_pivots = 1;
  CHECK_THROWS_AS(lp_feasible(lp, opts), Error);
}
