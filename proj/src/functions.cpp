#include "opconvex/functions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace opconvex {

std::size_t LinearRange::arity_of(const std::string& name) const {
  return matrices(name).size();
}

const std::vector<MatQ>& LinearRange::matrices(const std::string& name) const {
  auto it = coeffs.find(name);
  if (it == coeffs.end()) fail(Errc::unknown_index, "unknown range operation: " + name);
  return it->second;
}

FiniteRange make_finite_range(FinitePoset order, OperationFamily ops) {
  if (ops.carrier_size() != order.size())
    fail(Errc::invalid_argument, "range operations must live on the poset carrier");
  return FiniteRange{std::move(order), std::move(ops)};
}

LinearRange make_linear_range(std::size_t dim, RationalCone order,
                              std::vector<std::pair<std::string, std::vector<MatQ>>> ops) {
  if (dim < 1) fail(Errc::invalid_argument, "range dimension must be >= 1");
  if (ambient_dim(order) != dim)
    fail(Errc::dimension_mismatch, "order cone does not match the range dimension");
  LinearRange r;
  r.dim = dim;
  r.order = std::move(order);
  for (auto& [name, mats] : ops) {
    if (mats.empty()) fail(Errc::invalid_argument, "range operation without slot matrices");
    for (const auto& m : mats)
      if (m.rows() != dim || m.cols() != dim)
        fail(Errc::dimension_mismatch, "slot matrix must be dim x dim");
    if (r.coeffs.count(name)) fail(Errc::invalid_argument, "duplicate range operation: " + name);
    r.names.push_back(name);
    r.coeffs.emplace(name, std::move(mats));
  }
  return r;
}

FunctionTable FunctionTable::finite(std::vector<ElementId> values) {
  FunctionTable t;
  t.values_ = std::move(values);
  return t;
}

FunctionTable FunctionTable::linear(std::vector<VecQ> values) {
  FunctionTable t;
  t.values_ = std::move(values);
  return t;
}

std::size_t FunctionTable::size() const {
  if (is_finite()) return ids().size();
  return vecs().size();
}

std::vector<std::string> range_op_names(const OrderedRange& range) {
  if (const auto* fr = std::get_if<FiniteRange>(&range)) return fr->ops.names();
  return std::get<LinearRange>(range).names;
}

std::size_t range_op_arity(const OrderedRange& range, const std::string& name) {
  if (const auto* fr = std::get_if<FiniteRange>(&range)) return fr->ops.op(name).arity();
  return std::get<LinearRange>(range).arity_of(name);
}

void check_compatible(const FunctionTable& f, const OperationFamily& omega,
                      const OrderedRange& range) {
  auto range_names = range_op_names(range);
  if (range_names != omega.names())
    fail(Errc::family_mismatch, "domain and range families index different operation sets");
  for (const auto& name : omega.names())
    if (omega.op(name).arity() != range_op_arity(range, name))
      fail(Errc::family_mismatch, "arity mismatch for operation '" + name + "'");
  if (f.size() != omega.carrier_size())
    fail(Errc::family_mismatch, "function table length != carrier size");
  if (const auto* fr = std::get_if<FiniteRange>(&range)) {
    if (!f.is_finite()) fail(Errc::family_mismatch, "finite range needs element-id values");
    for (ElementId v : f.ids())
      if (v >= fr->order.size()) fail(Errc::out_of_range, "function value outside the range carrier");
  } else {
    const auto& lr = std::get<LinearRange>(range);
    if (f.is_finite()) fail(Errc::family_mismatch, "linear range needs vector values");
    for (const auto& v : f.vecs())
      if (v.size() != lr.dim) fail(Errc::dimension_mismatch, "function value dimension mismatch");
  }
}

namespace {

VecQ apply_linear_op(const LinearRange& lr, const std::string& name,
                     const std::vector<const VecQ*>& args) {
  const auto& mats = lr.matrices(name);
  VecQ acc(lr.dim, Rational(0));
  for (std::size_t i = 0; i < mats.size(); ++i) acc = vec_add(acc, mats[i].apply(*args[i]));
  return acc;
}

enum class Cmp { convex, concave, affine };

std::optional<OperationWitness> check_map(const FunctionTable& f, const OperationFamily& omega,
                                          const OrderedRange& range, Cmp mode,
                                          const Subset* domain) {
  check_compatible(f, omega, range);
  std::vector<ElementId> members;
  if (domain) {
    members = domain->indices();
  } else {
    members.resize(omega.carrier_size());
    for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  }
  if (members.empty()) return std::nullopt;

  const auto* fr = std::get_if<FiniteRange>(&range);
  const auto* lr = std::get_if<LinearRange>(&range);

  for (std::size_t g = 0; g < omega.op_count(); ++g) {
    const Operation& op = omega.op(g);
    const std::string& name = omega.names()[g];
    std::vector<std::size_t> pos(op.arity(), 0);
    std::vector<ElementId> args(op.arity());
    do {
      for (std::size_t i = 0; i < pos.size(); ++i) args[i] = members[pos[i]];
      ElementId image = op.apply_unchecked(args);
      bool ok;
      if (fr) {
        std::vector<ElementId> vals(op.arity());
        for (std::size_t i = 0; i < args.size(); ++i) vals[i] = f.id_at(args[i]);
        ElementId lhs = f.id_at(image);
        ElementId rhs = fr->ops.op(name).apply_unchecked(vals);
        switch (mode) {
          case Cmp::convex: ok = fr->order.leq(lhs, rhs); break;
          case Cmp::concave: ok = fr->order.leq(rhs, lhs); break;
          case Cmp::affine: ok = lhs == rhs; break;
        }
      } else {
        std::vector<const VecQ*> vals(op.arity());
        for (std::size_t i = 0; i < args.size(); ++i) vals[i] = &f.vec_at(args[i]);
        const VecQ& lhs = f.vec_at(image);
        VecQ rhs = apply_linear_op(*lr, name, vals);
        switch (mode) {
          case Cmp::convex: ok = cone_leq(lr->order, lhs, rhs); break;
          case Cmp::concave: ok = cone_leq(lr->order, rhs, lhs); break;
          case Cmp::affine: ok = lhs == rhs; break;
        }
      }
      if (!ok) return OperationWitness{name, args};
    } while ([&] {
      for (std::size_t i = pos.size(); i-- > 0;) {
        if (++pos[i] < members.size()) return true;
        pos[i] = 0;
      }
      return false;
    }());
  }
  return std::nullopt;
}

}  // namespace

std::optional<OperationWitness> is_convex_map(const FunctionTable& f, const OperationFamily& omega,
                                              const OrderedRange& range) {
  return check_map(f, omega, range, Cmp::convex, nullptr);
}

std::optional<OperationWitness> is_concave_map(const FunctionTable& f, const OperationFamily& omega,
                                               const OrderedRange& range) {
  return check_map(f, omega, range, Cmp::concave, nullptr);
}

std::optional<OperationWitness> is_affine_map(const FunctionTable& f, const OperationFamily& omega,
                                              const OrderedRange& range) {
  return check_map(f, omega, range, Cmp::affine, nullptr);
}

std::optional<OperationWitness> is_affine_map_on(const FunctionTable& f,
                                                 const OperationFamily& omega,
                                                 const OrderedRange& range, const Subset& domain) {
  return check_map(f, omega, range, Cmp::affine, &domain);
}

bool range_value_leq(const OrderedRange& range, const FunctionTable& f, const FunctionTable& g,
                     std::size_t point) {
  if (const auto* fr = std::get_if<FiniteRange>(&range))
    return fr->order.leq(f.id_at(point), g.id_at(point));
  const auto& lr = std::get<LinearRange>(range);
  return cone_leq(lr.order, f.vec_at(point), g.vec_at(point));
}

namespace {

bool is_orthant_order(const RationalCone& cone) {
  const auto* pc = std::get_if<PolyhedralCone>(&cone);
  if (!pc) return false;
  for (const auto& g : pc->generators)
    for (const auto& c : g)
      if (c < 0) return false;
  for (std::size_t i = 0; i < pc->dim; ++i) {
    VecQ e(pc->dim, Rational(0));
    e[i] = 1;
    if (!cone_member(cone, e)) return false;
  }
  return true;
}

}  // namespace

FunctionTable pointwise_sup(const std::vector<FunctionTable>& fs, const OrderedRange& range) {
  if (fs.empty()) fail(Errc::invalid_argument, "pointwise_sup needs a nonempty family");
  const std::size_t n = fs.front().size();
  for (const auto& f : fs)
    if (f.size() != n) fail(Errc::family_mismatch, "function tables of different lengths");
  if (const auto* fr = std::get_if<FiniteRange>(&range)) {
    std::vector<ElementId> out(n);
    for (std::size_t p = 0; p < n; ++p) {
      std::vector<ElementId> vals;
      for (const auto& f : fs) vals.push_back(f.id_at(p));
      auto sup = fr->order.supremum_of(vals);
      if (!sup)
        fail(Errc::no_supremum, "no least upper bound at point " + std::to_string(p));
      out[p] = *sup;
    }
    return FunctionTable::finite(std::move(out));
  }
  const auto& lr = std::get<LinearRange>(range);
  if (!is_orthant_order(lr.order))
    fail(Errc::unsupported_order,
         "pointwise suprema are defined here only for orthant cone orders");
  std::vector<VecQ> out(n, VecQ(lr.dim, Rational(0)));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t c = 0; c < lr.dim; ++c) {
      Rational best = fs.front().vec_at(p)[c];
      for (const auto& f : fs) best = std::max(best, f.vec_at(p)[c]);
      out[p][c] = best;
    }
  return FunctionTable::linear(std::move(out));
}

FunctionTable pointwise_inf_chain(const std::vector<FunctionTable>& fs, const OrderedRange& range) {
  if (fs.empty()) fail(Errc::invalid_argument, "pointwise_inf_chain needs a nonempty chain");
  const std::size_t n = fs.front().size();
  for (const auto& f : fs)
    if (f.size() != n) fail(Errc::family_mismatch, "function tables of different lengths");
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      bool le = true, ge = true;
      for (std::size_t p = 0; p < n; ++p) {
        le = le && range_value_leq(range, fs[i], fs[j], p);
        ge = ge && range_value_leq(range, fs[j], fs[i], p);
      }
      if (!le && !ge)
        fail(Errc::not_a_chain, "tables " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are pointwise incomparable");
    }
  // In a finite chain the pointwise infimum is attained by a least member.
  std::size_t least = 0;
  for (std::size_t i = 1; i < fs.size(); ++i) {
    bool below = true;
    for (std::size_t p = 0; p < n && below; ++p)
      below = range_value_leq(range, fs[i], fs[least], p);
    if (below) least = i;
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (!range_value_leq(range, fs[least], fs[i], p))
        fail(Errc::no_infimum, "chain has no least member at point " + std::to_string(p));
  return fs[least];
}

namespace {

std::optional<SectionWitness> finite_automorphism_check(const FiniteRange& fr,
                                                        const std::string& name,
                                                        std::size_t slot) {
  const Operation& op = fr.ops.op(name);
  const std::size_t size = fr.order.size();
  const std::size_t k = slot - 1;
  std::vector<ElementId> fixed(op.arity() > 1 ? op.arity() - 1 : 0, 0);
  do {
    std::vector<ElementId> full(op.arity());
    auto section = [&](ElementId u) {
      for (std::size_t i = 0, j = 0; i < op.arity(); ++i)
        if (i != k) full[i] = fixed[j++];
      full[k] = u;
      return op.apply_unchecked(full);
    };
    std::vector<ElementId> image(size);
    std::vector<bool> hit(size, false);
    for (ElementId u = 0; u < size; ++u) {
      image[u] = section(u);
      if (hit[image[u]]) {
        ElementId other = 0;
        while (image[other] != image[u]) ++other;
        return SectionWitness{name, slot, "section is not injective", fixed, {other, u}};
      }
      hit[image[u]] = true;
    }
    for (ElementId u = 0; u < size; ++u)
      for (ElementId v = 0; v < size; ++v) {
        if (fr.order.leq(u, v) && !fr.order.leq(image[u], image[v]))
          return SectionWitness{name, slot, "section is not order preserving", fixed, {u, v}};
        if (fr.order.leq(image[u], image[v]) && !fr.order.leq(u, v))
          return SectionWitness{name, slot, "section inverse is not order preserving", fixed, {u, v}};
      }
  } while (!fixed.empty() && next_tuple(fixed, size));
  return std::nullopt;
}

std::optional<SectionWitness> linear_automorphism_check(const LinearRange& lr,
                                                        const std::string& name,
                                                        std::size_t slot) {
  const MatQ& a = lr.matrices(name)[slot - 1];
  auto inv = a.inverse();
  if (!inv) return SectionWitness{name, slot, "slot matrix is singular", {}, {}};
  if (const auto* lz = std::get_if<LorenzCone>(&lr.order); lz && lz->norm == NormKind::l2) {
    Rational t;
    if (a.is_scalar_multiple_of_identity(&t) && t > 0) return std::nullopt;
    fail(Errc::unsupported_norm,
         "l2 Lorenz order: automorphism check supports positive multiples of the identity only");
  }
  for (const auto& g : generators_of(lr.order)) {
    if (!cone_member(lr.order, a.apply(g)))
      return SectionWitness{name, slot, "matrix image leaves the order cone", {}, {}};
    if (!cone_member(lr.order, inv->apply(g)))
      return SectionWitness{name, slot, "matrix preimage leaves the order cone", {}, {}};
  }
  return std::nullopt;
}

}  // namespace

std::optional<SectionWitness> check_order_automorphism(const OrderedRange& range,
                                                       const std::string& name, std::size_t slot) {
  if (slot < 1 || slot > range_op_arity(range, name))
    fail(Errc::out_of_range, "slot outside the operation arity");
  if (const auto* fr = std::get_if<FiniteRange>(&range))
    return finite_automorphism_check(*fr, name, slot);
  return linear_automorphism_check(std::get<LinearRange>(range), name, slot);
}

std::optional<SectionWitness> check_nondecreasing(const OrderedRange& range,
                                                  const std::string& name) {
  if (const auto* fr = std::get_if<FiniteRange>(&range)) {
    const Operation& op = fr->ops.op(name);
    const std::size_t size = fr->order.size();
    for (std::size_t slot = 1; slot <= op.arity(); ++slot) {
      const std::size_t k = slot - 1;
      std::vector<ElementId> fixed(op.arity() > 1 ? op.arity() - 1 : 0, 0);
      do {
        std::vector<ElementId> full(op.arity());
        auto section = [&](ElementId u) {
          for (std::size_t i = 0, j = 0; i < op.arity(); ++i)
            if (i != k) full[i] = fixed[j++];
          full[k] = u;
          return op.apply_unchecked(full);
        };
        for (ElementId u = 0; u < size; ++u)
          for (ElementId v = 0; v < size; ++v)
            if (fr->order.leq(u, v) && !fr->order.leq(section(u), section(v)))
              return SectionWitness{name, slot, "section decreases", fixed, {u, v}};
      } while (!fixed.empty() && next_tuple(fixed, size));
    }
    return std::nullopt;
  }
  const auto& lr = std::get<LinearRange>(range);
  const auto& mats = lr.matrices(name);
  for (std::size_t slot = 1; slot <= mats.size(); ++slot) {
    const MatQ& a = mats[slot - 1];
    if (const auto* lz = std::get_if<LorenzCone>(&lr.order); lz && lz->norm == NormKind::l2) {
      Rational t;
      if (a.is_scalar_multiple_of_identity(&t) && t >= 0) continue;
      fail(Errc::unsupported_norm,
           "l2 Lorenz order: monotonicity check supports nonnegative multiples of the identity only");
    }
    for (const auto& g : generators_of(lr.order))
      if (!cone_member(lr.order, a.apply(g)))
        return SectionWitness{name, slot, "matrix image leaves the order cone", {}, {}};
  }
  return std::nullopt;
}

std::optional<std::string> range_check_reflexive(const OrderedRange& range) {
  if (const auto* fr = std::get_if<FiniteRange>(&range)) {
    if (auto w = check_reflexive(fr->ops))
      return "operation '" + w->op + "' is not idempotent at " + std::to_string(w->x);
    return std::nullopt;
  }
  const auto& lr = std::get<LinearRange>(range);
  for (const auto& name : lr.names) {
    const auto& mats = lr.matrices(name);
    MatQ sum(lr.dim, lr.dim);
    for (const auto& m : mats) sum = sum + m;
    if (!sum.is_identity()) return "slot matrices of '" + name + "' do not sum to the identity";
  }
  return std::nullopt;
}

std::optional<std::string> range_check_mutually_distributive(const OrderedRange& range) {
  if (const auto* fr = std::get_if<FiniteRange>(&range)) {
    if (auto w = check_mutually_distributive(fr->ops)) {
      std::ostringstream os;
      os << "'" << w->outer << "' does not distribute over '" << w->inner << "' in slot "
         << w->slot;
      return os.str();
    }
    return std::nullopt;
  }
  const auto& lr = std::get<LinearRange>(range);
  for (const auto& outer : lr.names) {
    const auto& om = lr.matrices(outer);
    for (const auto& inner : lr.names) {
      const auto& im = lr.matrices(inner);
      MatQ inner_sum(lr.dim, lr.dim);
      for (const auto& m : im) inner_sum = inner_sum + m;
      for (std::size_t k = 0; k < om.size(); ++k) {
        for (const auto& b : im)
          if (!(om[k] * b == b * om[k]))
            return "slot matrices of '" + outer + "' and '" + inner + "' do not commute";
        for (std::size_t i = 0; i < om.size(); ++i) {
          if (i == k) continue;
          if (!(inner_sum * om[i] == om[i]))
            return "'" + inner + "' does not absorb the off-slot matrices of '" + outer +
                   "' (slot sums are not the identity on their range)";
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace opconvex
