#include "opconvex/algebra.hpp"

#include <algorithm>
#include <set>

#include "opconvex/rational.hpp"

namespace opconvex {

Carrier Carrier::plain(std::size_t size) {
  if (size < 1) fail(Errc::invalid_argument, "carrier size must be >= 1");
  return Carrier{size, {}};
}

Carrier Carrier::labeled(std::vector<std::string> labels) {
  if (labels.empty()) fail(Errc::invalid_argument, "carrier size must be >= 1");
  std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() != labels.size())
    fail(Errc::invalid_argument, "carrier labels must be distinct");
  return Carrier{labels.size(), std::move(labels)};
}

namespace {

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base)
      fail(Errc::resource_limit, "operation table exceeds the configured cell budget");
    r *= base;
  }
  return r;
}

}  // namespace

Operation::Operation(std::size_t carrier_size, std::size_t arity, std::vector<ElementId> table,
                     std::size_t max_cells)
    : carrier_size_(carrier_size), arity_(arity), table_(std::move(table)) {
  if (carrier_size_ < 1) fail(Errc::invalid_argument, "operation carrier must be nonempty");
  if (arity_ < 1) fail(Errc::invalid_argument, "operation arity must be >= 1");
  std::size_t cells = checked_pow(carrier_size_, arity_, max_cells);
  if (table_.size() != cells)
    fail(Errc::invalid_argument, "operation table length must equal size^arity");
  for (ElementId v : table_)
    if (v >= carrier_size_)
      fail(Errc::invalid_argument, "operation table entry outside the carrier");
}

ElementId Operation::apply(std::span<const ElementId> args) const {
  if (args.size() != arity_) fail(Errc::arity_mismatch, "argument count != operation arity");
  for (ElementId a : args)
    if (a >= carrier_size_) fail(Errc::out_of_range, "argument outside the carrier");
  return apply_unchecked(args);
}

OperationFamily::OperationFamily(Carrier carrier, std::vector<std::pair<std::string, Operation>> ops)
    : carrier_(std::move(carrier)) {
  std::set<std::string> seen;
  for (auto& [name, op] : ops) {
    if (!seen.insert(name).second)
      fail(Errc::invalid_argument, "duplicate operation name: " + name);
    if (op.carrier_size() != carrier_.size)
      fail(Errc::invalid_argument, "operation '" + name + "' not on the shared carrier");
    names_.push_back(name);
    ops_.push_back(std::move(op));
  }
}

std::size_t OperationFamily::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) fail(Errc::unknown_index, "unknown operation name: " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

ElementId evaluate(const OperationFamily& family, const std::string& name,
                   std::span<const ElementId> args) {
  return family.op(name).apply(args);
}

std::optional<ReflexivityWitness> check_reflexive(const OperationFamily& family) {
  for (std::size_t g = 0; g < family.op_count(); ++g) {
    const Operation& op = family.op(g);
    std::vector<ElementId> diag(op.arity());
    for (ElementId x = 0; x < family.carrier_size(); ++x) {
      std::fill(diag.begin(), diag.end(), x);
      if (op.apply_unchecked(diag) != x) return ReflexivityWitness{family.names()[g], x};
    }
  }
  return std::nullopt;
}

bool next_tuple(std::vector<ElementId>& tuple, std::size_t base) {
  for (std::size_t i = tuple.size(); i-- > 0;) {
    if (++tuple[i] < base) return true;
    tuple[i] = 0;
  }
  return false;
}

namespace {

// Evaluates both sides of the distributive identity for a fixed witness shape.
std::pair<ElementId, ElementId> distributivity_sides(const Operation& outer, const Operation& inner,
                                                     std::size_t slot1,  // 1-based
                                                     const std::vector<ElementId>& outer_args,
                                                     const std::vector<ElementId>& inner_args) {
  std::size_t n = outer.arity();
  std::size_t k = slot1 - 1;
  std::vector<ElementId> full(n);
  for (std::size_t i = 0, j = 0; i < n; ++i)
    if (i != k) full[i] = outer_args[j++];

  full[k] = inner.apply_unchecked(inner_args);
  ElementId lhs = outer.apply_unchecked(full);

  std::vector<ElementId> rhs_args(inner.arity());
  for (std::size_t j = 0; j < inner.arity(); ++j) {
    full[k] = inner_args[j];
    rhs_args[j] = outer.apply_unchecked(full);
  }
  ElementId rhs = inner.apply_unchecked(rhs_args);
  return {lhs, rhs};
}

}  // namespace

std::optional<DistributivityWitness> check_mutually_distributive(const OperationFamily& family,
                                                                 std::size_t max_cells) {
  const std::size_t size = family.carrier_size();
  for (std::size_t g = 0; g < family.op_count(); ++g) {
    const Operation& outer = family.op(g);
    for (std::size_t b = 0; b < family.op_count(); ++b) {
      const Operation& inner = family.op(b);
      std::size_t tuple_len = outer.arity() - 1 + inner.arity();
      // cost guard: size^(n(outer)+n(inner)-1) tuples per slot
      std::size_t total = 1;
      for (std::size_t i = 0; i < tuple_len; ++i) {
        if (total > max_cells / size)
          fail(Errc::resource_limit, "distributivity check exceeds the configured cell budget");
        total *= size;
      }
      for (std::size_t slot = 1; slot <= outer.arity(); ++slot) {
        std::vector<ElementId> tuple(tuple_len, 0);
        do {
          std::vector<ElementId> outer_args(tuple.begin(), tuple.begin() + (outer.arity() - 1));
          std::vector<ElementId> inner_args(tuple.begin() + (outer.arity() - 1), tuple.end());
          auto [lhs, rhs] = distributivity_sides(outer, inner, slot, outer_args, inner_args);
          if (lhs != rhs)
            return DistributivityWitness{family.names()[g], family.names()[b], slot,
                                         std::move(outer_args), std::move(inner_args), lhs, rhs};
        } while (next_tuple(tuple, size));
      }
    }
  }
  return std::nullopt;
}

bool distributivity_witness_violates(const OperationFamily& family,
                                     const DistributivityWitness& w) {
  auto [lhs, rhs] = distributivity_sides(family.op(w.outer), family.op(w.inner), w.slot,
                                         w.outer_args, w.inner_args);
  return lhs != rhs;
}

OperationFamily build_modular_linear_family(long modulus,
                                            const std::vector<std::vector<long>>& coefficient_lists,
                                            std::size_t max_cells) {
  if (modulus < 2) fail(Errc::invalid_argument, "modulus must be >= 2");
  const std::size_t m = static_cast<std::size_t>(modulus);
  std::vector<std::pair<std::string, Operation>> ops;
  for (std::size_t idx = 0; idx < coefficient_lists.size(); ++idx) {
    const auto& coeffs = coefficient_lists[idx];
    if (coeffs.empty()) fail(Errc::invalid_argument, "empty coefficient tuple");
    std::size_t arity = coeffs.size();
    std::size_t cells = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (cells > max_cells / m)
        fail(Errc::resource_limit, "modular family exceeds the configured cell budget");
      cells *= m;
    }
    std::vector<ElementId> table(cells);
    std::vector<ElementId> tuple(arity, 0);
    std::size_t row = 0;
    do {
      long acc = 0;
      for (std::size_t i = 0; i < arity; ++i)
        acc = (acc + coeffs[i] % modulus * static_cast<long>(tuple[i])) % modulus;
      acc = ((acc % modulus) + modulus) % modulus;
      table[row++] = static_cast<ElementId>(acc);
    } while (next_tuple(tuple, m));
    ops.emplace_back("g" + std::to_string(idx), Operation(m, arity, std::move(table), max_cells));
  }
  return OperationFamily(Carrier::plain(m), std::move(ops));
}

}  // namespace opconvex
