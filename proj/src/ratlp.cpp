#include "opconvex/ratlp.hpp"

#include <algorithm>

namespace opconvex {

std::size_t LinearProgram::add_var(std::optional<Rational> lower, std::optional<Rational> upper) {
  if (bounds.size() < num_vars) bounds.resize(num_vars);
  bounds.push_back(VarBounds{std::move(lower), std::move(upper)});
  return num_vars++;
}

void LinearProgram::add_row(VecQ coeffs, Rel rel, Rational rhs) {
  rows.push_back(LpRow{std::move(coeffs), rel, std::move(rhs)});
}

namespace {

void validate(const LinearProgram& lp) {
  for (const auto& row : lp.rows)
    if (row.coeffs.size() != lp.num_vars)
      fail(Errc::invalid_argument, "row coefficient count != num_vars");
  if (!lp.bounds.empty() && lp.bounds.size() != lp.num_vars)
    fail(Errc::invalid_argument, "bounds count != num_vars");
  if (lp.objective && lp.objective->size() != lp.num_vars)
    fail(Errc::invalid_argument, "objective length != num_vars");
}

VarBounds bounds_of(const LinearProgram& lp, std::size_t j) {
  return lp.bounds.empty() ? VarBounds{} : lp.bounds[j];
}

// The constraint list in certificate order: user rows, then per variable its
// finite lower-bound row and finite upper-bound row.
std::vector<LpRow> certificate_rows(const LinearProgram& lp) {
  std::vector<LpRow> rows = lp.rows;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    VarBounds b = bounds_of(lp, j);
    if (b.lower) {
      VecQ e(lp.num_vars, Rational(0));
      e[j] = 1;
      rows.push_back(LpRow{std::move(e), Rel::ge, *b.lower});
    }
    if (b.upper) {
      VecQ e(lp.num_vars, Rational(0));
      e[j] = 1;
      rows.push_back(LpRow{std::move(e), Rel::le, *b.upper});
    }
  }
  return rows;
}

// Internal standard form: minimize c.z subject to A z = b, z >= 0.
//
// Variables with declared bounds [0, +inf) map to a single column; all others
// are split into a positive/negative pair, with finite bounds materialized as
// extra rows. Inequality rows gain a slack column; every row then gets an
// artificial column for phase 1.
struct Standardizer {
  const LinearProgram& lp;
  // per original variable: either a single column (col >= 0, neg_col == npos)
  // or a split pair
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos_col, neg_col;
  // internal rows, oriented to {le, eq}: pairs (coeffs over z, rhs) plus kind
  struct IRow {
    VecQ a;  // over z columns (sized later)
    Rational b;
    bool is_eq;
    std::size_t cert_index;  // position in certificate_rows order
  };
  std::vector<IRow> irows;
  std::size_t n_z = 0;  // structural z columns (before slacks/artificials)

  explicit Standardizer(const LinearProgram& lp_in) : lp(lp_in) {
    pos_col.assign(lp.num_vars, npos);
    neg_col.assign(lp.num_vars, npos);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      VarBounds b = bounds_of(lp, j);
      bool simple_nonneg = b.lower && *b.lower == 0 && !b.upper;
      pos_col[j] = n_z++;
      if (!simple_nonneg) neg_col[j] = n_z++;
    }
    std::size_t cert_i = 0;
    for (const auto& row : lp.rows) append_row(row, cert_i++);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      VarBounds b = bounds_of(lp, j);
      bool simple_nonneg = b.lower && *b.lower == 0 && !b.upper;
      if (b.lower) {
        if (!simple_nonneg) {
          VecQ e(lp.num_vars, Rational(0));
          e[j] = 1;
          append_row(LpRow{e, Rel::ge, *b.lower}, cert_i);
        }
        ++cert_i;  // certificate position exists even for structural bounds
      }
      if (b.upper) {
        VecQ e(lp.num_vars, Rational(0));
        e[j] = 1;
        append_row(LpRow{e, Rel::le, *b.upper}, cert_i++);
      }
    }
  }

  void append_row(const LpRow& row, std::size_t cert_index) {
    IRow ir;
    ir.a.assign(n_z, Rational(0));
    Rational sign = (row.rel == Rel::ge) ? -1 : 1;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      if (row.coeffs[j] == 0) continue;
      Rational c = sign * row.coeffs[j];
      ir.a[pos_col[j]] += c;
      if (neg_col[j] != npos) ir.a[neg_col[j]] -= c;
    }
    ir.b = sign * row.rhs;
    ir.is_eq = (row.rel == Rel::eq);
    ir.cert_index = cert_index;
    irows.push_back(std::move(ir));
  }

  VecQ to_user_point(const VecQ& z) const {
    VecQ x(lp.num_vars, Rational(0));
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      x[j] = z[pos_col[j]];
      if (neg_col[j] != npos) x[j] -= z[neg_col[j]];
    }
    return x;
  }

  VecQ objective_over_z() const {
    VecQ c(n_z, Rational(0));
    if (!lp.objective) return c;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      Rational cj = (*lp.objective)[j];
      if (lp.maximize) cj = -cj;
      c[pos_col[j]] += cj;
      if (neg_col[j] != npos) c[neg_col[j]] -= cj;
    }
    return c;
  }
};

// Dense full-tableau two-phase simplex with Bland's rule.
class Tableau {
 public:
  Tableau(const Standardizer& sf, const SolveOptions& opts)
      : sf_(sf), opts_(opts), m_(sf.irows.size()) {
    n_slack_ = 0;
    for (const auto& r : sf_.irows)
      if (!r.is_eq) ++n_slack_;
    n_ = sf_.n_z + n_slack_ + m_;  // + artificials
    art0_ = sf_.n_z + n_slack_;
    t_.assign(m_, VecQ(n_ + 1, Rational(0)));
    basis_.assign(m_, 0);

    std::size_t slack_i = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& r = sf_.irows[i];
      bool flip = r.b < 0;
      Rational s = flip ? -1 : 1;
      flip_.push_back(flip);
      for (std::size_t j = 0; j < sf_.n_z; ++j) t_[i][j] = s * r.a[j];
      if (!r.is_eq) t_[i][sf_.n_z + slack_i++] = s;
      t_[i][art0_ + i] = 1;
      t_[i][n_] = s * r.b;
      basis_[i] = art0_ + i;
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Runs phase 1; returns the optimal infeasibility measure (0 = feasible).
  Rational phase1() {
    // cost: minimize sum of artificials
    cost_.assign(n_ + 1, Rational(0));
    for (std::size_t j = art0_; j < n_; ++j) cost_[j] = 1;
    // price out the initial artificial basis
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= t_[i][j];
    run(/*allow_artificial=*/false);
    return -cost_[n_];  // objective value
  }

  /// Installs the phase-2 cost row (assumes a feasible basis) and optimizes.
  /// Returns the entering column of an unbounded direction, or npos at optimum.
  std::size_t phase2(const VecQ& c_z) {
    drive_out_artificials();
    cost_.assign(n_ + 1, Rational(0));
    for (std::size_t j = 0; j < sf_.n_z; ++j) cost_[j] = c_z[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (cost_[basis_[i]] == 0) continue;
      Rational f = cost_[basis_[i]];
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= f * t_[i][j];
    }
    return run(/*allow_artificial=*/false);
  }

  VecQ z_point() const {
    VecQ z(sf_.n_z, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < sf_.n_z) z[basis_[i]] = t_[i][n_];
    return z;
  }

  /// Phase-1 duals, unflipped: u_i = sigma_i * (1 - reduced cost of artificial i).
  /// Only meaningful while the phase-1 cost row is installed.
  VecQ phase1_duals() const {
    VecQ u(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      Rational y = Rational(1) - cost_[art0_ + i];
      u[i] = flip_[i] ? -y : y;
    }
    return u;
  }

  /// Recession direction in z space for an entering column with no blocker.
  VecQ ray_direction(std::size_t q) const {
    VecQ d(sf_.n_z, Rational(0));
    if (q < sf_.n_z) d[q] = 1;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < sf_.n_z) d[basis_[i]] = -t_[i][q];
    return d;
  }

  std::size_t pivots_used() const { return pivots_; }

 private:
  void pivot(std::size_t row, std::size_t col) {
    Rational p = t_[row][col];
    for (std::size_t j = 0; j <= n_; ++j) t_[row][j] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      Rational f = t_[i][col];
      for (std::size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[row][j];
    }
    if (cost_[col] != 0) {
      Rational f = cost_[col];
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= f * t_[row][j];
    }
    basis_[row] = col;
    if (++pivots_ > opts_.max_pivots)
      fail(Errc::resource_limit, "simplex pivot cap exceeded");
  }

  // Bland: entering = smallest-index column with negative reduced cost;
  // leaving = min ratio, ties by smallest basis index.
  std::size_t run(bool allow_artificial) {
    for (;;) {
      std::size_t q = npos;
      std::size_t limit = allow_artificial ? n_ : art0_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost_[j] < 0) {
          q = j;
          break;
        }
      }
      if (q == npos) return npos;  // optimal
      std::size_t row = npos;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][q] <= 0) continue;
        if (row == npos) {
          row = i;
          continue;
        }
        Rational cur = t_[i][n_] / t_[i][q];
        Rational best = t_[row][n_] / t_[row][q];
        if (cur < best || (cur == best && basis_[i] < basis_[row])) row = i;
      }
      if (row == npos) return q;  // unbounded along column q
      pivot(row, q);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art0_) continue;
      std::size_t col = npos;
      for (std::size_t j = 0; j < art0_; ++j)
        if (t_[i][j] != 0) {
          col = j;
          break;
        }
      if (col != npos) pivot(i, col);
      // An all-zero row is redundant; its artificial stays basic at value 0
      // and is never eligible to enter, so it is harmless.
    }
  }

  const Standardizer& sf_;
  SolveOptions opts_;
  std::size_t m_ = 0, n_ = 0, n_slack_ = 0, art0_ = 0;
  std::vector<VecQ> t_;
  VecQ cost_;
  std::vector<std::size_t> basis_;
  std::vector<bool> flip_;
  std::size_t pivots_ = 0;
};

LpInfeasible extract_infeasibility(const LinearProgram& lp, const Standardizer& sf,
                                   const Tableau& tab) {
  VecQ u = tab.phase1_duals();
  auto cert = certificate_rows(lp);
  VecQ mult(cert.size(), Rational(0));
  // lambda_i = -u_i for each internal row, placed at its certificate slot
  for (std::size_t i = 0; i < sf.irows.size(); ++i)
    mult[sf.irows[i].cert_index] = -u[i];
  // structural nonneg variables: recover the bound-row multiplier as the
  // residual combined coefficient
  std::size_t cert_i = lp.rows.size();
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    VarBounds b = bounds_of(lp, j);
    bool simple_nonneg = b.lower && *b.lower == 0 && !b.upper;
    if (b.lower) {
      if (simple_nonneg) {
        Rational residual = 0;
        for (std::size_t i = 0; i < sf.irows.size(); ++i)
          residual += (-u[i]) * sf.irows[i].a[sf.pos_col[j]];
        mult[cert_i] = residual;
      }
      ++cert_i;
    }
    if (b.upper) ++cert_i;
  }
  return LpInfeasible{std::move(mult)};
}

}  // namespace

bool satisfies(const LinearProgram& lp, const VecQ& x) {
  if (x.size() != lp.num_vars) return false;
  for (const auto& row : lp.rows) {
    Rational v = dot(row.coeffs, x);
    if (row.rel == Rel::le && !(v <= row.rhs)) return false;
    if (row.rel == Rel::ge && !(v >= row.rhs)) return false;
    if (row.rel == Rel::eq && v != row.rhs) return false;
  }
  for (std::size_t j = 0; j < lp.num_vars && !lp.bounds.empty(); ++j) {
    if (lp.bounds[j].lower && x[j] < *lp.bounds[j].lower) return false;
    if (lp.bounds[j].upper && x[j] > *lp.bounds[j].upper) return false;
  }
  return true;
}

bool certifies_infeasibility(const LinearProgram& lp, const VecQ& multipliers) {
  auto cert = certificate_rows(lp);
  if (multipliers.size() != cert.size()) return false;
  VecQ combined(lp.num_vars, Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < cert.size(); ++i) {
    const Rational& m = multipliers[i];
    Rational sign = (cert[i].rel == Rel::ge) ? -1 : 1;  // orient to <=
    if (cert[i].rel != Rel::eq && m < 0) return false;
    for (std::size_t j = 0; j < lp.num_vars; ++j) combined[j] += m * sign * cert[i].coeffs[j];
    rhs += m * sign * cert[i].rhs;
  }
  return is_zero(combined) && rhs < 0;
}

bool certifies_unboundedness(const LinearProgram& lp, const LpRay& ray) {
  if (!satisfies(lp, ray.point)) return false;
  if (ray.direction.size() != lp.num_vars || is_zero(ray.direction)) return false;
  for (const auto& row : lp.rows) {
    Rational v = dot(row.coeffs, ray.direction);
    if (row.rel == Rel::le && !(v <= 0)) return false;
    if (row.rel == Rel::ge && !(v >= 0)) return false;
    if (row.rel == Rel::eq && v != 0) return false;
  }
  for (std::size_t j = 0; j < lp.num_vars && !lp.bounds.empty(); ++j) {
    if (lp.bounds[j].lower && ray.direction[j] < 0) return false;
    if (lp.bounds[j].upper && ray.direction[j] > 0) return false;
  }
  if (!lp.objective) return false;
  Rational drift = dot(*lp.objective, ray.direction);
  return lp.maximize ? drift > 0 : drift < 0;
}

LpFeasResult lp_feasible(const LinearProgram& lp, const SolveOptions& opts) {
  validate(lp);
  Standardizer sf(lp);
  Tableau tab(sf, opts);
  Rational infeas = tab.phase1();
  if (infeas > 0) {
    LpInfeasible cert = extract_infeasibility(lp, sf, tab);
    if (!certifies_infeasibility(lp, cert.multipliers))
      fail(Errc::internal_error, "infeasibility certificate failed re-substitution");
    return cert;
  }
  VecQ x = sf.to_user_point(tab.z_point());
  if (!satisfies(lp, x)) fail(Errc::internal_error, "feasible point failed re-substitution");
  return LpPoint{std::move(x)};
}

LpOptResult lp_optimize(const LinearProgram& lp, const SolveOptions& opts) {
  validate(lp);
  if (!lp.objective) fail(Errc::invalid_argument, "lp_optimize requires an objective");
  Standardizer sf(lp);
  Tableau tab(sf, opts);
  Rational infeas = tab.phase1();
  if (infeas > 0) {
    LpInfeasible cert = extract_infeasibility(lp, sf, tab);
    if (!certifies_infeasibility(lp, cert.multipliers))
      fail(Errc::internal_error, "infeasibility certificate failed re-substitution");
    return cert;
  }
  std::size_t unbounded_col = tab.phase2(sf.objective_over_z());
  if (unbounded_col != Tableau::npos) {
    LpRay ray{sf.to_user_point(tab.z_point()), sf.to_user_point(tab.ray_direction(unbounded_col))};
    if (!certifies_unboundedness(lp, ray))
      fail(Errc::internal_error, "unboundedness ray failed re-substitution");
    return ray;
  }
  VecQ x = sf.to_user_point(tab.z_point());
  if (!satisfies(lp, x)) fail(Errc::internal_error, "optimal point failed re-substitution");
  Rational value = dot(*lp.objective, x);
  return LpOptimum{std::move(x), std::move(value)};
}

}  // namespace opconvex
