#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opconvex/algebra.hpp"
#include "opconvex/subset.hpp"

namespace opconvex {

/// A violating application of a named operation to a concrete argument tuple.
struct OperationWitness {
  std::string op;
  std::vector<ElementId> args;
};

/// Pass iff every operation maps tuples from E back into E. Witnesses are
/// enumerated lexicographically over (operation index, argument tuple).
std::optional<OperationWitness> is_convex_set(const OperationFamily& family, const Subset& e);

/// Pass iff whenever an operation's value lies in E, all arguments do.
std::optional<OperationWitness> is_extreme_set(const OperationFamily& family, const Subset& e);

/// Smallest closed superset of H: iterates H <- H u op-images(H) to a fixed
/// point (at most carrier-size rounds on a finite carrier).
Subset convex_hull(const OperationFamily& family, const Subset& h);

/// Smallest superset of H pulled back through every operation: whenever an
/// operation's value lands in the set, all argument coordinates are added.
Subset extreme_hull(const OperationFamily& family, const Subset& h);

/// Points p whose extreme hull of {p} is the whole carrier.
Subset omega_interior(const OperationFamily& family);

/// Complement of the interior. When the interior is nonempty this is the
/// largest proper extreme subset.
Subset omega_boundary(const OperationFamily& family);

}  // namespace opconvex
