#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "opconvex/rational.hpp"

namespace opconvex {

enum class Rel { le, eq, ge };

struct LpRow {
  VecQ coeffs;
  Rel rel;
  Rational rhs;
};

struct VarBounds {
  std::optional<Rational> lower;  // nullopt = -inf
  std::optional<Rational> upper;  // nullopt = +inf
};

/// An exact-rational linear program. Variables are free unless bounds say
/// otherwise. The objective, when present, is minimized unless `maximize`.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<LpRow> rows;
  std::optional<VecQ> objective;
  bool maximize = false;
  std::vector<VarBounds> bounds;  // empty, or one entry per variable

  std::size_t add_var(std::optional<Rational> lower = std::nullopt,
                      std::optional<Rational> upper = std::nullopt);
  void add_row(VecQ coeffs, Rel rel, Rational rhs);
};

struct LpPoint {
  VecQ x;
};

/// Farkas-style refutation. The multipliers cover, in order: the user rows,
/// then per variable (ascending) its finite lower-bound row followed by its
/// finite upper-bound row. Every inequality is read in <= orientation (>=
/// rows and lower bounds contribute negated); multipliers of inequality rows
/// are nonnegative, equality-row multipliers may take either sign. Validity
/// means: the combined coefficient vector is zero and the combined rhs is
/// negative.
struct LpInfeasible {
  VecQ multipliers;
};

struct LpOptimum {
  VecQ x;
  Rational value;
};

struct LpRay {
  VecQ point;      // a feasible point
  VecQ direction;  // improving recession direction
};

struct SolveOptions {
  std::size_t max_pivots = 1'000'000;
};

using LpFeasResult = std::variant<LpPoint, LpInfeasible>;
using LpOptResult = std::variant<LpOptimum, LpRay, LpInfeasible>;

/// Every returned point, certificate, or ray has been re-checked against the
/// input in exact arithmetic; a failed re-check raises internal_error.
LpFeasResult lp_feasible(const LinearProgram& lp, const SolveOptions& opts = {});
LpOptResult lp_optimize(const LinearProgram& lp, const SolveOptions& opts = {});

// --- exact re-checkers (exposed for tests and callers) ----------------------

bool satisfies(const LinearProgram& lp, const VecQ& x);
bool certifies_infeasibility(const LinearProgram& lp, const VecQ& multipliers);
bool certifies_unboundedness(const LinearProgram& lp, const LpRay& ray);

}  // namespace opconvex
