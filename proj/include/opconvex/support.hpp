#pragma once

#include <set>
#include <string>
#include <vector>

#include "opconvex/functions.hpp"

namespace opconvex {

/// A support-extension problem: f is convex on the carrier, affine on the
/// anchor set D, and D's extreme hull is the whole carrier; the engine then
/// produces an affine g with g <= f everywhere and g = f on D.
struct SupportInstance {
  OperationFamily omega;
  OrderedRange range;
  FunctionTable f;
  Subset d_set;
};

struct HypothesisItem {
  std::string name;
  bool pass;
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisItem> items;
  bool all_pass() const;
  std::vector<std::string> failures() const;
};

/// Named hypothesis checks:
///   d_nonempty, d_convex, f_convex, f_affine_on_d, extreme_hull_d_full,
///   range_chain_complete (finite poset: automatic; cone order: sharpness),
///   omega_mutually_distributive, range_mutually_distributive,
///   range_order_automorphism.
/// Checks named in `waive` are skipped and reported as skipped.
HypothesisReport verify_support_hypotheses(const SupportInstance& inst,
                                           const std::set<std::string>& waive = {});

struct SupportOptions {
  /// Attempt the solve even with failing hypothesis checks; an unsatisfiable
  /// system then surfaces as Errc::infeasible instead of a defect.
  bool override_preconditions = false;
  std::set<std::string> waive;
  std::size_t max_cells = kDefaultMaxCells;
  SolveOptions lp;
};

struct SupportCertificate {
  FunctionTable g;
  bool affine = false;
  bool dominated = false;
  bool agrees_on_d = false;
};

/// Finds a support certificate. Linear ranges go through one exact LP
/// (affinity equations, cone-membership rows for f-g via generator
/// multipliers, anchor equalities, and a fixed positive functional as the
/// objective for reproducibility). Finite ranges are searched exhaustively in
/// lexicographic value order. When every hypothesis check passed, an
/// unsatisfiable system is a broken guarantee and raises theorem_violation.
SupportCertificate support_extend(const SupportInstance& inst, const SupportOptions& opts = {});

/// Support at an interior point: requires reflexive families on both sides,
/// then delegates with D = {p}.
SupportCertificate support_at_point(const OperationFamily& omega, const OrderedRange& range,
                                    const FunctionTable& f, ElementId p,
                                    const SupportOptions& opts = {});

/// Re-derives the three conclusion checks; returns the names of the failing
/// ones ("affine", "dominated", "agrees_on_D"), empty on pass.
std::vector<std::string> verify_support_certificate(const SupportInstance& inst,
                                                    const FunctionTable& g);

struct WrappedSupport {
  SupportInstance instance;
  SupportCertificate certificate;
};

/// Support for subadditive maps on a finite abelian semigroup: checks
/// subadditivity, the ray conditions at p (f(np) = n f(p) to orbit closure,
/// and reachability x + y in orbit(p)), then runs the extension engine on the
/// one-operation instance built from the addition table.
WrappedSupport subadditive_support(std::size_t carrier_size, const Operation& addition,
                                   const std::vector<Rational>& f, ElementId p,
                                   const SupportOptions& opts = {});

struct SublinearCertificate {
  MatQ g;  // d x k linear minorant
};

struct SublinearWitness {
  std::size_t i, j;
  Rational t, s;
};

/// Sampled sublinearity of f (a hypothesis probe, not a gate): checks
/// f(t x + s y) <=_K t f(x) + s f(y) on in-sample combinations drawn from the
/// multiplier list.
std::optional<SublinearWitness> check_sampled_sublinearity(const std::vector<VecQ>& sample,
                                                           const std::vector<VecQ>& f_values,
                                                           const RationalCone& cone,
                                                           const std::vector<Rational>& multipliers);

/// LP for an exactly linear map g with g(x) <=_K f(x) on the sample and
/// g(p) = f(p). Infeasibility is a legitimate outcome on sampled data and is
/// reported as Errc::infeasible with the active constraint counts.
SublinearCertificate sublinear_support(const std::vector<VecQ>& sample,
                                       const std::vector<VecQ>& f_values, const RationalCone& cone,
                                       std::size_t p_index, const SolveOptions& opts = {});

struct Mt2Input {
  std::vector<MatQ> a_maps;  // domain side, d x d
  std::vector<MatQ> A_maps;  // range side, e x e
  RationalCone cone;         // order on Q^e
  std::vector<VecQ> grid;    // finite carrier in Q^d, closed under the a-combination
  std::vector<VecQ> f_values;
  std::size_t p_index = 0;
};

struct Mt2Compiled {
  SupportInstance instance;
  /// The two-variable collapse w*(x, y) = w(x, y, ..., y); its extreme hull of
  /// {p} covering the grid certifies interiority for the full operation.
  bool interior_via_reduction = false;
  bool interior_direct = false;
};

/// Verifies the four structural conditions (pairwise commutation, sums equal
/// to the identity, grid closure, order-automorphism matrices) and packages
/// the instance for the extension engine. Failures raise condition_failure
/// with labels "i".."iv"; a non-interior anchor raises not_interior.
Mt2Compiled mt2_compile(const Mt2Input& input, std::size_t max_cells = kDefaultMaxCells);

struct RiInstance {
  std::size_t dim = 0;
  std::vector<LpRow> membership;  // rational polytope, any mix of relations
  MatQ a;                         // additive part of w(u, v) = a(u) + v - a(v)
  VecQ p, x;
  unsigned n_max = 64;
};

struct RiCertificate {
  unsigned n = 0;
  /// Entries x_{-2} .. x_{2^{n+1}} in subscript order (index i holds x_{i-2}).
  std::vector<VecQ> chain;
  bool memberships_ok = false;
  bool identities_ok = false;
  /// Whether w maps the polytope into itself (checked by LP on each face).
  bool domain_closed = false;
};

/// Builds and verifies the dyadic interior certificate chain: finds the least
/// n <= n_max with p + 2^-n (p - x) inside the polytope, lays out the even
/// entries as dyadic combinations of p and x, fills odd entries through w, and
/// re-checks every membership and every interleaving identity
/// x_{2k} = w(x_{2k+1}, x_{2k-1}) exactly.
RiCertificate ri_certificate(const RiInstance& inst, std::size_t max_cells = kDefaultMaxCells);

struct DeltaInstance {
  std::vector<VecQ> sample;  // points in Q^k
  Rational s, t;             // both in (0,1)
  std::vector<VecQ> F;       // values in Q^m
  std::vector<Rational> f;   // scalar control values
  std::size_t p_index = 0;
  NormKind norm = NormKind::l1;
};

struct DeltaCertificate {
  std::vector<VecQ> A;
  std::vector<Rational> a;
};

/// Checks the delta convexity inequality on every in-sample combination, then
/// solves for tables A, a that are (s,t)-affine on in-sample triples, anchored
/// at p, and dominate: ||F(x) - A(x)|| <= f(x) - a(x) per sample point (the
/// lifted Lorenz membership, linearized through its generators). l2 with
/// m >= 2 is verification-only and raises unsupported_norm here.
DeltaCertificate delta_support(const DeltaInstance& inst, const SolveOptions& opts = {});

/// Failure names among {"affine", "anchor", "dominates"}; empty on pass.
/// Handles every norm (l2 through squared comparisons).
std::vector<std::string> verify_delta_certificate(const DeltaInstance& inst,
                                                  const std::vector<VecQ>& A,
                                                  const std::vector<Rational>& a);

}  // namespace opconvex
