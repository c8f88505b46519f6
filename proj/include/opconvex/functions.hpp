#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "opconvex/algebra.hpp"
#include "opconvex/cone.hpp"
#include "opconvex/convexity.hpp"
#include "opconvex/poset.hpp"

namespace opconvex {

/// Range of a map: a finite poset carrying its own operation tables.
struct FiniteRange {
  FinitePoset order;
  OperationFamily ops;  // over the poset carrier
};

/// Range Q^dim ordered by a cone; each operation is y-bar -> sum A_i y_i.
struct LinearRange {
  std::size_t dim = 0;
  RationalCone order;                             // ambient_dim == dim
  std::vector<std::string> names;                 // operation names, family order
  std::map<std::string, std::vector<MatQ>> coeffs;  // per name, one dim x dim matrix per slot

  std::size_t arity_of(const std::string& name) const;
  const std::vector<MatQ>& matrices(const std::string& name) const;
};

using OrderedRange = std::variant<FiniteRange, LinearRange>;

FiniteRange make_finite_range(FinitePoset order, OperationFamily ops);
LinearRange make_linear_range(std::size_t dim, RationalCone order,
                              std::vector<std::pair<std::string, std::vector<MatQ>>> ops);

/// A tabulated map from a finite carrier into the range.
class FunctionTable {
 public:
  static FunctionTable finite(std::vector<ElementId> values);
  static FunctionTable linear(std::vector<VecQ> values);

  bool is_finite() const { return std::holds_alternative<std::vector<ElementId>>(values_); }
  std::size_t size() const;
  ElementId id_at(std::size_t i) const { return std::get<std::vector<ElementId>>(values_)[i]; }
  const VecQ& vec_at(std::size_t i) const { return std::get<std::vector<VecQ>>(values_)[i]; }
  const std::vector<ElementId>& ids() const { return std::get<std::vector<ElementId>>(values_); }
  const std::vector<VecQ>& vecs() const { return std::get<std::vector<VecQ>>(values_); }

  bool operator==(const FunctionTable&) const = default;

 private:
  std::variant<std::vector<ElementId>, std::vector<VecQ>> values_;
};

/// Verifies shapes: shared index set, matching arities, table sizes, and the
/// value flavor of f against the range flavor. Throws family_mismatch.
void check_compatible(const FunctionTable& f, const OperationFamily& omega,
                      const OrderedRange& range);

/// f(op(x1..xn)) <= Op(f(x1)..f(xn)) for every operation and tuple; the first
/// violation in lexicographic (operation, tuple) order is returned.
std::optional<OperationWitness> is_convex_map(const FunctionTable& f, const OperationFamily& omega,
                                              const OrderedRange& range);
std::optional<OperationWitness> is_concave_map(const FunctionTable& f, const OperationFamily& omega,
                                               const OrderedRange& range);
std::optional<OperationWitness> is_affine_map(const FunctionTable& f, const OperationFamily& omega,
                                              const OrderedRange& range);

/// Restriction of the predicates to tuples drawn from a subset of the carrier.
std::optional<OperationWitness> is_affine_map_on(const FunctionTable& f,
                                                 const OperationFamily& omega,
                                                 const OrderedRange& range, const Subset& domain);

/// Pointwise supremum. Finite ranges use the poset's least upper bound and
/// raise no_supremum when one is missing; linear ranges are supported for
/// orthant orders only (componentwise max) and raise unsupported_order
/// otherwise, since general cone orders need not have suprema.
FunctionTable pointwise_sup(const std::vector<FunctionTable>& fs, const OrderedRange& range);

/// Pointwise infimum of a chain (raises not_a_chain when two tables are
/// pointwise incomparable).
FunctionTable pointwise_inf_chain(const std::vector<FunctionTable>& fs, const OrderedRange& range);

struct SectionWitness {
  std::string op;
  std::size_t slot = 0;  // 1-based
  std::string reason;
  std::vector<ElementId> fixed_args;  // finite flavor: the frozen other slots
  std::vector<ElementId> pair;        // offending elements, when applicable
};

/// Order-automorphism check for one slot of one range operation.
/// Finite flavor: every section must be an order-isomorphism of the poset.
/// Linear flavor: the slot matrix must be invertible and map the order cone
/// onto itself (generator images both ways; l2 Lorenz only for positive
/// multiples of the identity).
std::optional<SectionWitness> check_order_automorphism(const OrderedRange& range,
                                                       const std::string& name, std::size_t slot);

/// Monotonicity of every section in every slot of one range operation.
std::optional<SectionWitness> check_nondecreasing(const OrderedRange& range,
                                                  const std::string& name);

/// Range-side structural checks mirroring the domain-family ones. Finite
/// flavor checks tables exhaustively; linear flavor uses the exact matrix
/// identities (sum of slot matrices = identity for reflexivity; pairwise
/// commutation plus the sum-identity absorption for distributivity). The
/// result is a failure description, nullopt on pass.
std::optional<std::string> range_check_reflexive(const OrderedRange& range);
std::optional<std::string> range_check_mutually_distributive(const OrderedRange& range);

/// Order comparison of two function-table values at one point.
bool range_value_leq(const OrderedRange& range, const FunctionTable& f, const FunctionTable& g,
                     std::size_t point);

std::vector<std::string> range_op_names(const OrderedRange& range);
std::size_t range_op_arity(const OrderedRange& range, const std::string& name);

}  // namespace opconvex
