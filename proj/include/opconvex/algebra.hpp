#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opconvex/errors.hpp"

namespace opconvex {

using ElementId = std::size_t;

/// Global default for dense-table budgets (cells = carrier^arity).
inline constexpr std::size_t kDefaultMaxCells = 10'000'000;

struct Carrier {
  std::size_t size = 0;
  std::vector<std::string> labels;  // empty, or one distinct label per element

  static Carrier plain(std::size_t size);
  static Carrier labeled(std::vector<std::string> labels);
};

/// A finitary operation on a finite carrier, stored as a dense row-major
/// table: the first argument is the most significant index digit.
class Operation {
 public:
  Operation(std::size_t carrier_size, std::size_t arity, std::vector<ElementId> table,
            std::size_t max_cells = kDefaultMaxCells);

  std::size_t arity() const { return arity_; }
  std::size_t carrier_size() const { return carrier_size_; }
  const std::vector<ElementId>& table() const { return table_; }

  ElementId apply(std::span<const ElementId> args) const;

  /// No range checks; args must be valid.
  ElementId apply_unchecked(std::span<const ElementId> args) const {
    std::size_t idx = 0;
    for (ElementId a : args) idx = idx * carrier_size_ + a;
    return table_[idx];
  }

 private:
  std::size_t carrier_size_ = 0;
  std::size_t arity_ = 0;
  std::vector<ElementId> table_;
};

/// An indexed family of operations sharing one carrier. Index names keep the
/// order in which they were supplied; every enumeration below follows it.
class OperationFamily {
 public:
  OperationFamily(Carrier carrier, std::vector<std::pair<std::string, Operation>> ops);

  const Carrier& carrier() const { return carrier_; }
  std::size_t carrier_size() const { return carrier_.size; }
  std::size_t op_count() const { return ops_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const Operation& op(std::size_t index) const { return ops_[index]; }
  const Operation& op(const std::string& name) const { return ops_[index_of(name)]; }
  std::size_t index_of(const std::string& name) const;  // throws unknown_index

 private:
  Carrier carrier_;
  std::vector<std::string> names_;
  std::vector<Operation> ops_;
};

ElementId evaluate(const OperationFamily& family, const std::string& name,
                   std::span<const ElementId> args);

struct ReflexivityWitness {
  std::string op;
  ElementId x;
};

/// Checks op(x,...,x) = x for every operation and element; returns the
/// lexicographically first failure over (operation index, x).
std::optional<ReflexivityWitness> check_reflexive(const OperationFamily& family);

struct DistributivityWitness {
  std::string outer, inner;
  std::size_t slot;                    // 1-based slot of the outer operation
  std::vector<ElementId> outer_args;   // the arity(outer)-1 fixed arguments
  std::vector<ElementId> inner_args;   // arity(inner) arguments
  ElementId lhs, rhs;
};

/// Checks the slot-wise distributive identity
///   outer(x1..,inner(y1..ym),..xn) = inner(outer(..y1..),...,outer(..ym..))
/// for every ordered pair of operations and every slot. Enumeration order is
/// lexicographic over (outer index, inner index, slot, outer_args ++ inner_args)
/// with the last tuple coordinate varying fastest.
std::optional<DistributivityWitness> check_mutually_distributive(
    const OperationFamily& family, std::size_t max_cells = kDefaultMaxCells);

/// Re-evaluates a reported witness; true when it indeed violates the identity.
bool distributivity_witness_violates(const OperationFamily& family,
                                     const DistributivityWitness& w);

/// Builds the family of operations (x1..xk) -> (c1*x1+...+ck*xk) mod m on the
/// carrier {0..m-1}. Operation names are "g0", "g1", ... in list order.
OperationFamily build_modular_linear_family(long modulus,
                                            const std::vector<std::vector<long>>& coefficient_lists,
                                            std::size_t max_cells = kDefaultMaxCells);

/// Advances a mixed-radix tuple (each digit in [0, base)); returns false after
/// the last tuple. The last coordinate varies fastest.
bool next_tuple(std::vector<ElementId>& tuple, std::size_t base);

}  // namespace opconvex
