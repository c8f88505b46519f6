#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opconvex/algebra.hpp"
#include "opconvex/subset.hpp"

namespace opconvex {

/// A finite partial order given by its full comparability matrix. Reflexivity,
/// antisymmetry and transitivity are verified on construction.
class FinitePoset {
 public:
  FinitePoset(std::size_t size, std::vector<bool> leq_matrix);

  static FinitePoset total_order(std::size_t size);
  static FinitePoset antichain(std::size_t size);
  static FinitePoset divisibility(const std::vector<std::uint64_t>& values);

  std::size_t size() const { return n_; }
  bool leq(ElementId a, ElementId b) const { return leq_[a * n_ + b]; }
  bool comparable(ElementId a, ElementId b) const { return leq(a, b) || leq(b, a); }
  bool is_chain(const Subset& s) const;

  /// Least upper bound of a nonempty value multiset, when one exists.
  std::optional<ElementId> supremum_of(const std::vector<ElementId>& values) const;
  std::optional<ElementId> infimum_of(const std::vector<ElementId>& values) const;

  /// Relabels elements by a permutation: new_leq(p(a), p(b)) = leq(a, b).
  FinitePoset relabeled(const std::vector<ElementId>& perm) const;

  bool operator==(const FinitePoset&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> leq_;
};

/// Least element of a nonempty chain; in a finite poset this is its infimum.
ElementId infimum_of_chain(const FinitePoset& poset, const Subset& chain);

struct ChainCompletenessReport {
  bool pass;
  std::string note;
};

/// Finite posets are always lower chain-complete; the report carries the
/// finiteness argument as a note.
ChainCompletenessReport is_lower_chain_complete(const FinitePoset& poset);

/// A finite abelian group given by its addition table; inverses are computed
/// and all axioms verified on construction.
class GroupTable {
 public:
  GroupTable(Operation addition, ElementId zero);

  std::size_t size() const { return add_.carrier_size(); }
  ElementId zero() const { return zero_; }
  ElementId add(ElementId a, ElementId b) const {
    const ElementId args[2] = {a, b};
    return add_.apply_unchecked(args);
  }
  ElementId neg(ElementId a) const { return neg_[a]; }
  ElementId sub(ElementId a, ElementId b) const { return add(a, neg_[b]); }
  const Operation& addition() const { return add_; }

 private:
  Operation add_;
  ElementId zero_;
  std::vector<ElementId> neg_;
};

/// The data inducing an order x <= y iff y - x lies in the positive set S.
/// Two flavors:
///  - group: a finite abelian group table with S a stored subset;
///  - integer window: the carrier is the integer interval [lo, hi] with
///    ordinary addition, and membership uses the additive semigroup generated
///    by the S values (so a window of Z carries the intended order even though
///    sums may leave the window).
struct SemigroupOrderSpec {
  std::optional<GroupTable> group;
  Subset positives;  // over the group carrier or the window carrier

  std::optional<std::pair<long long, long long>> window;

  static SemigroupOrderSpec on_group(GroupTable g, Subset s);
  static SemigroupOrderSpec on_window(long long lo, long long hi, Subset s);
};

/// Builds the induced partial order; throws not_pointed / not_salient /
/// not_closed when S fails the corresponding requirement.
FinitePoset semigroup_order(const SemigroupOrderSpec& spec);

}  // namespace opconvex
