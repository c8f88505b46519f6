#include "opconvex/convexity.hpp"

namespace opconvex {

namespace {

// Advances a tuple whose coordinates range over the listed members.
bool next_member_tuple(std::vector<std::size_t>& positions, std::size_t member_count) {
  for (std::size_t i = positions.size(); i-- > 0;) {
    if (++positions[i] < member_count) return true;
    positions[i] = 0;
  }
  return false;
}

void check_universe(const OperationFamily& family, const Subset& s) {
  if (s.universe_size() != family.carrier_size())
    fail(Errc::invalid_argument, "subset universe does not match the carrier");
}

}  // namespace

std::optional<OperationWitness> is_convex_set(const OperationFamily& family, const Subset& e) {
  check_universe(family, e);
  const auto members = e.indices();
  if (members.empty()) return std::nullopt;
  for (std::size_t g = 0; g < family.op_count(); ++g) {
    const Operation& op = family.op(g);
    std::vector<std::size_t> pos(op.arity(), 0);
    std::vector<ElementId> args(op.arity());
    do {
      for (std::size_t i = 0; i < pos.size(); ++i) args[i] = members[pos[i]];
      if (!e.contains(op.apply_unchecked(args)))
        return OperationWitness{family.names()[g], args};
    } while (next_member_tuple(pos, members.size()));
  }
  return std::nullopt;
}

std::optional<OperationWitness> is_extreme_set(const OperationFamily& family, const Subset& e) {
  check_universe(family, e);
  const std::size_t size = family.carrier_size();
  for (std::size_t g = 0; g < family.op_count(); ++g) {
    const Operation& op = family.op(g);
    std::vector<ElementId> args(op.arity(), 0);
    do {
      if (!e.contains(op.apply_unchecked(args))) continue;
      for (ElementId a : args)
        if (!e.contains(a)) return OperationWitness{family.names()[g], args};
    } while (next_tuple(args, size));
  }
  return std::nullopt;
}

Subset convex_hull(const OperationFamily& family, const Subset& h) {
  check_universe(family, h);
  Subset current = h;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto members = current.indices();
    if (members.empty()) break;
    for (std::size_t g = 0; g < family.op_count(); ++g) {
      const Operation& op = family.op(g);
      std::vector<std::size_t> pos(op.arity(), 0);
      std::vector<ElementId> args(op.arity());
      do {
        for (std::size_t i = 0; i < pos.size(); ++i) args[i] = members[pos[i]];
        ElementId v = op.apply_unchecked(args);
        if (!current.contains(v)) {
          current.add(v);
          changed = true;
        }
      } while (next_member_tuple(pos, members.size()));
    }
  }
  return current;
}

Subset extreme_hull(const OperationFamily& family, const Subset& h) {
  check_universe(family, h);
  Subset current = h;
  const std::size_t size = family.carrier_size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t g = 0; g < family.op_count(); ++g) {
      const Operation& op = family.op(g);
      std::vector<ElementId> args(op.arity(), 0);
      do {
        if (!current.contains(op.apply_unchecked(args))) continue;
        for (ElementId a : args) {
          if (!current.contains(a)) {
            current.add(a);
            changed = true;
          }
        }
      } while (next_tuple(args, size));
    }
  }
  return current;
}

Subset omega_interior(const OperationFamily& family) {
  const std::size_t size = family.carrier_size();
  Subset interior(size);
  for (ElementId p = 0; p < size; ++p) {
    Subset single(size);
    single.add(p);
    if (extreme_hull(family, single).full()) interior.add(p);
  }
  return interior;
}

Subset omega_boundary(const OperationFamily& family) {
  return omega_interior(family).complement();
}

}  // namespace opconvex
