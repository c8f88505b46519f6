#include "opconvex/cone.hpp"

namespace opconvex {

const char* norm_name(NormKind n) {
  switch (n) {
    case NormKind::l1: return "l1";
    case NormKind::linf: return "linf";
    case NormKind::l2: return "l2";
  }
  return "?";
}

PolyhedralCone make_polyhedral(std::size_t dim, std::vector<VecQ> generators) {
  if (dim < 1) fail(Errc::invalid_argument, "cone dimension must be >= 1");
  for (const auto& g : generators) {
    if (g.size() != dim) fail(Errc::dimension_mismatch, "generator dimension mismatch");
    if (is_zero(g)) fail(Errc::invalid_argument, "cone generators must be nonzero");
  }
  return PolyhedralCone{dim, std::move(generators)};
}

LorenzCone make_lorenz(Rational epsilon, std::size_t base_dim, NormKind norm) {
  if (epsilon <= 0) fail(Errc::invalid_argument, "Lorenz epsilon must be positive");
  if (base_dim < 1) fail(Errc::invalid_argument, "Lorenz base dimension must be >= 1");
  return LorenzCone{std::move(epsilon), base_dim, norm};
}

PolyhedralCone orthant(std::size_t dim) {
  std::vector<VecQ> gens;
  for (std::size_t i = 0; i < dim; ++i) {
    VecQ e(dim, Rational(0));
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return make_polyhedral(dim, std::move(gens));
}

std::size_t ambient_dim(const RationalCone& cone) {
  if (const auto* p = std::get_if<PolyhedralCone>(&cone)) return p->dim;
  return std::get<LorenzCone>(cone).ambient_dim();
}

bool norm_leq(const VecQ& v, NormKind norm, const Rational& bound) {
  switch (norm) {
    case NormKind::l1: return norm_l1(v) <= bound;
    case NormKind::linf: return norm_linf(v) <= bound;
    case NormKind::l2: return bound >= 0 && sq_norm_l2(v) <= bound * bound;
  }
  return false;
}

std::vector<VecQ> lorenz_generators(const LorenzCone& cone) {
  std::vector<VecQ> gens;
  const std::size_t d = cone.base_dim;
  if (cone.norm == NormKind::l1) {
    // extreme rays (+-e_i, eps)
    for (std::size_t i = 0; i < d; ++i) {
      for (int sign : {+1, -1}) {
        VecQ g(d + 1, Rational(0));
        g[i] = sign;
        g[d] = cone.epsilon;
        gens.push_back(std::move(g));
      }
    }
    return gens;
  }
  if (cone.norm == NormKind::linf) {
    // extreme rays (sigma, eps) over sign patterns sigma in {-1,+1}^d
    if (d > 20) fail(Errc::resource_limit, "linf Lorenz generator expansion too large");
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      VecQ g(d + 1, Rational(0));
      for (std::size_t i = 0; i < d; ++i) g[i] = (mask >> i & 1) ? 1 : -1;
      g[d] = cone.epsilon;
      gens.push_back(std::move(g));
    }
    return gens;
  }
  fail(Errc::unsupported_norm, "the l2 Lorenz cone is not polyhedral");
}

std::vector<VecQ> generators_of(const RationalCone& cone) {
  if (const auto* p = std::get_if<PolyhedralCone>(&cone)) return p->generators;
  return lorenz_generators(std::get<LorenzCone>(cone));
}

std::vector<VecQ> dual_cone(const PolyhedralCone& cone) { return cone.generators; }

bool lorenz_member(const LorenzCone& cone, const VecQ& point) {
  if (point.size() != cone.ambient_dim())
    fail(Errc::dimension_mismatch, "Lorenz membership dimension mismatch");
  VecQ x(point.begin(), point.end() - 1);
  const Rational& t = point.back();
  switch (cone.norm) {
    case NormKind::l1: return cone.epsilon * norm_l1(x) <= t;
    case NormKind::linf: return cone.epsilon * norm_linf(x) <= t;
    case NormKind::l2: return t >= 0 && cone.epsilon * cone.epsilon * sq_norm_l2(x) <= t * t;
  }
  return false;
}

bool lorenz_dual_member(const LorenzCone& cone, const VecQ& point) {
  if (point.size() != cone.ambient_dim())
    fail(Errc::dimension_mismatch, "Lorenz dual membership dimension mismatch");
  VecQ phi(point.begin(), point.end() - 1);
  const Rational& c = point.back();
  Rational bound = cone.epsilon * c;
  switch (cone.norm) {
    case NormKind::l1: return norm_linf(phi) <= bound;   // dual of l1
    case NormKind::linf: return norm_l1(phi) <= bound;   // dual of linf
    case NormKind::l2: return norm_leq(phi, NormKind::l2, bound);
  }
  return false;
}

namespace {

/// Feasibility of v = sum lambda_i g_i with lambda >= 0.
bool in_conic_hull(const std::vector<VecQ>& gens, const VecQ& v) {
  LinearProgram lp;
  for (std::size_t i = 0; i < gens.size(); ++i) lp.add_var(Rational(0));
  for (std::size_t coord = 0; coord < v.size(); ++coord) {
    VecQ row(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) row[i] = gens[i][coord];
    lp.add_row(std::move(row), Rel::eq, v[coord]);
  }
  return std::holds_alternative<LpPoint>(lp_feasible(lp));
}

}  // namespace

bool cone_member(const RationalCone& cone, const VecQ& v) {
  if (v.size() != ambient_dim(cone)) fail(Errc::dimension_mismatch, "cone membership dimension mismatch");
  if (const auto* lz = std::get_if<LorenzCone>(&cone)) return lorenz_member(*lz, v);
  return in_conic_hull(std::get<PolyhedralCone>(cone).generators, v);
}

bool cone_leq(const RationalCone& cone, const VecQ& y, const VecQ& z) {
  return cone_member(cone, vec_sub(z, y));
}

std::variant<SharpnessWitness, SharpnessRefutation> is_sharp(const RationalCone& cone) {
  if (const auto* lz = std::get_if<LorenzCone>(&cone)) {
    VecQ phi(lz->ambient_dim(), Rational(0));
    phi.back() = 1;  // strictly inside the dual: ||0||_* < epsilon * 1
    return SharpnessWitness{std::move(phi)};
  }
  const auto& pc = std::get<PolyhedralCone>(cone);
  LinearProgram lp;
  for (std::size_t j = 0; j < pc.dim; ++j) lp.add_var();
  for (const auto& g : pc.generators) lp.add_row(g, Rel::ge, Rational(1));
  auto res = lp_feasible(lp);
  if (auto* pt = std::get_if<LpPoint>(&res)) return SharpnessWitness{std::move(pt->x)};
  return SharpnessRefutation{std::move(std::get<LpInfeasible>(res).multipliers)};
}

std::optional<VecQ> is_salient_cone(const PolyhedralCone& cone) {
  // The lineality space is nontrivial iff some generator's negation lies in
  // the cone (a vanishing nonnegative combination singles out one generator).
  for (const auto& g : cone.generators) {
    VecQ neg = vec_scale(Rational(-1), g);
    if (in_conic_hull(cone.generators, neg)) return g;
  }
  return std::nullopt;
}

ControllabilityCertificate controllability_functional(const RationalCone& cone, NormKind norm) {
  if (norm == NormKind::l2)
    fail(Errc::unsupported_norm, "controllability construction supports l1/linf only");
  if (std::holds_alternative<PolyhedralCone>(cone)) {
    auto witness = is_sharp(cone);
    if (!std::holds_alternative<SharpnessWitness>(witness))
      fail(Errc::not_sharp, "controllability requires a sharp cone");
  }
  auto gens = generators_of(cone);
  const std::size_t d = ambient_dim(cone);
  LinearProgram lp;
  for (std::size_t j = 0; j < d; ++j) lp.add_var();
  VecQ objective(d, Rational(0));
  for (const auto& g : gens) {
    Rational n = norm == NormKind::l1 ? norm_l1(g) : norm_linf(g);
    lp.add_row(g, Rel::ge, n);
    objective = vec_add(objective, g);
  }
  lp.objective = objective;  // minimize total slack for a canonical optimum
  auto res = lp_optimize(lp);
  auto* opt = std::get_if<LpOptimum>(&res);
  if (!opt) fail(Errc::internal_error, "controllability LP must be feasible and bounded on a sharp cone");
  ControllabilityCertificate cert{std::move(opt->x), Rational(1)};
  for (const auto& g : gens) {
    Rational n = norm == NormKind::l1 ? norm_l1(g) : norm_linf(g);
    if (!(n <= cert.scale * dot(cert.phi, g)))
      fail(Errc::internal_error, "controllability certificate failed re-substitution");
  }
  return cert;
}

}  // namespace opconvex
