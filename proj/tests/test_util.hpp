#pragma once

// Shared generators and independent oracles for the test suites. The oracles
// here deliberately avoid the library's algorithms: hulls are computed by
// full subset enumeration, LP feasibility by Fourier-Motzkin elimination.

#include <random>
#include <utility>
#include <vector>

#include "opconvex/convexity.hpp"
#include "opconvex/ratlp.hpp"

namespace opconvex::testing {

using Rng = std::mt19937_64;

inline Operation random_operation(Rng& rng, std::size_t size, std::size_t arity) {
  std::size_t cells = 1;
  for (std::size_t i = 0; i < arity; ++i) cells *= size;
  std::uniform_int_distribution<std::size_t> pick(0, size - 1);
  std::vector<ElementId> table(cells);
  for (auto& v : table) v = pick(rng);
  return Operation(size, arity, std::move(table));
}

/// A random family of 1-3 unary/binary operations on a carrier of the given
/// size.
inline OperationFamily random_family(Rng& rng, std::size_t size) {
  std::uniform_int_distribution<int> nops(1, 3);
  std::uniform_int_distribution<int> arity(1, 2);
  std::vector<std::pair<std::string, Operation>> ops;
  int count = nops(rng);
  for (int i = 0; i < count; ++i)
    ops.emplace_back("g" + std::to_string(i), random_operation(rng, size, arity(rng)));
  return OperationFamily(Carrier::plain(size), std::move(ops));
}

inline Subset subset_from_mask(std::size_t universe, std::size_t mask) {
  Subset s(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if (mask >> i & 1) s.add(i);
  return s;
}

/// Oracle: the minimal closed superset by intersecting all closed supersets
/// over the full power set.
inline Subset oracle_convex_hull(const OperationFamily& family, const Subset& h) {
  const std::size_t n = family.carrier_size();
  Subset acc(n, true);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Subset s = subset_from_mask(n, mask);
    if (h.subset_of(s) && !is_convex_set(family, s)) acc = acc.intersect(s);
  }
  return acc;
}

inline Subset oracle_extreme_hull(const OperationFamily& family, const Subset& h) {
  const std::size_t n = family.carrier_size();
  Subset acc(n, true);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Subset s = subset_from_mask(n, mask);
    if (h.subset_of(s) && !is_extreme_set(family, s)) acc = acc.intersect(s);
  }
  return acc;
}

/// Oracle: Fourier-Motzkin feasibility for a system of rows over free
/// variables. Equalities are split into two inequalities first.
inline bool fm_feasible(const LinearProgram& lp) {
  std::vector<std::pair<VecQ, Rational>> rows;  // coeffs . x <= rhs
  auto push = [&](VecQ c, Rational r) { rows.emplace_back(std::move(c), std::move(r)); };
  for (const auto& row : lp.rows) {
    if (row.rel == Rel::le || row.rel == Rel::eq) push(row.coeffs, row.rhs);
    if (row.rel == Rel::ge || row.rel == Rel::eq)
      push(vec_scale(Rational(-1), row.coeffs), -row.rhs);
  }
  for (std::size_t j = 0; j < lp.num_vars && !lp.bounds.empty(); ++j) {
    if (lp.bounds[j].lower) {
      VecQ c(lp.num_vars, Rational(0));
      c[j] = -1;
      push(std::move(c), -*lp.bounds[j].lower);
    }
    if (lp.bounds[j].upper) {
      VecQ c(lp.num_vars, Rational(0));
      c[j] = 1;
      push(std::move(c), *lp.bounds[j].upper);
    }
  }
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    std::vector<std::pair<VecQ, Rational>> pos, neg, zero;
    for (auto& r : rows) {
      if (r.first[v] > 0)
        pos.push_back(std::move(r));
      else if (r.first[v] < 0)
        neg.push_back(std::move(r));
      else
        zero.push_back(std::move(r));
    }
    rows = std::move(zero);
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Rational a = p.first[v], b = -n.first[v];  // a, b > 0
        VecQ c = vec_add(vec_scale(b, p.first), vec_scale(a, n.first));
        rows.emplace_back(std::move(c), b * p.second + a * n.second);
      }
  }
  for (const auto& r : rows)
    if (r.second < 0) return false;
  return true;
}

}  // namespace opconvex::testing
