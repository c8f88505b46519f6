#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "opconvex/ratlp.hpp"

namespace opconvex {

enum class NormKind { l1, linf, l2 };

const char* norm_name(NormKind n);

/// A cone in Q^dim spanned by finitely many nonzero generators.
struct PolyhedralCone {
  std::size_t dim = 0;
  std::vector<VecQ> generators;
};

/// The cone {(x, t) : epsilon * ||x|| <= t} in Q^(base_dim+1). For the l1 and
/// linf norms this is polyhedral; l2 supports membership tests only.
struct LorenzCone {
  Rational epsilon;
  std::size_t base_dim = 0;
  NormKind norm = NormKind::linf;
  std::size_t ambient_dim() const { return base_dim + 1; }
};

using RationalCone = std::variant<PolyhedralCone, LorenzCone>;

PolyhedralCone make_polyhedral(std::size_t dim, std::vector<VecQ> generators);
LorenzCone make_lorenz(Rational epsilon, std::size_t base_dim, NormKind norm);
PolyhedralCone orthant(std::size_t dim);

std::size_t ambient_dim(const RationalCone& cone);

/// ||v|| <= bound, exactly; l2 goes through the squared comparison.
bool norm_leq(const VecQ& v, NormKind norm, const Rational& bound);

/// Extreme-ray generators of an l1/linf Lorenz cone (l2 is not polyhedral and
/// raises unsupported_norm). l1 yields 2*base_dim rays, linf 2^base_dim.
std::vector<VecQ> lorenz_generators(const LorenzCone& cone);

/// Generators for either kind, for LP-based constructions (l2 Lorenz raises).
std::vector<VecQ> generators_of(const RationalCone& cone);

/// The dual cone of a polyhedral cone as inequality normals: phi belongs to
/// the dual iff <g, phi> >= 0 for every listed normal g (one per generator).
std::vector<VecQ> dual_cone(const PolyhedralCone& cone);

bool lorenz_member(const LorenzCone& cone, const VecQ& point);

/// Dual membership under the phi(y) >= 0 convention: ||phi||_* <= epsilon * c
/// where ||.||_* is the dual norm (l1 <-> linf, l2 self-dual via squares).
bool lorenz_dual_member(const LorenzCone& cone, const VecQ& point);

/// Exact membership: polyhedral via LP over conic multipliers, Lorenz closed
/// form.
bool cone_member(const RationalCone& cone, const VecQ& v);

/// z - y in cone.
bool cone_leq(const RationalCone& cone, const VecQ& y, const VecQ& z);

struct SharpnessWitness {
  VecQ phi;  // <phi, g> >= 1 for every generator
};
struct SharpnessRefutation {
  VecQ multipliers;  // Farkas certificate for the witness system
};

/// A cone is sharp when its dual has an interior point; for finitely generated
/// cones that is the feasibility of <phi, g> >= 1 over the generators. Lorenz
/// cones are always sharp (the axis functional works).
std::variant<SharpnessWitness, SharpnessRefutation> is_sharp(const RationalCone& cone);

/// Pass (nullopt) iff the lineality space is trivial; otherwise a nonzero
/// witness y with y and -y both in the cone.
std::optional<VecQ> is_salient_cone(const PolyhedralCone& cone);

struct ControllabilityCertificate {
  VecQ phi;
  Rational scale;  // ||y|| <= scale * <phi, y> on the cone
};

/// Builds a norm-dominating functional on a sharp cone (l1/linf only): the LP
/// finds phi with <phi, g> >= ||g|| on every generator; conic combination and
/// the triangle inequality extend the bound to the whole cone.
ControllabilityCertificate controllability_functional(const RationalCone& cone, NormKind norm);

}  // namespace opconvex
