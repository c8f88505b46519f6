#include "opconvex/poset.hpp"

#include <algorithm>
#include <set>

namespace opconvex {

FinitePoset::FinitePoset(std::size_t size, std::vector<bool> leq_matrix)
    : n_(size), leq_(std::move(leq_matrix)) {
  if (n_ < 1) fail(Errc::invalid_argument, "poset must be nonempty");
  if (leq_.size() != n_ * n_) fail(Errc::invalid_argument, "leq matrix must be size x size");
  for (std::size_t a = 0; a < n_; ++a)
    if (!leq(a, a)) fail(Errc::invalid_argument, "leq is not reflexive");
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (a != b && leq(a, b) && leq(b, a))
        fail(Errc::invalid_argument, "leq is not antisymmetric");
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      if (!leq(a, b)) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (leq(b, c) && !leq(a, c)) fail(Errc::invalid_argument, "leq is not transitive");
    }
}

FinitePoset FinitePoset::total_order(std::size_t size) {
  std::vector<bool> m(size * size, false);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = a; b < size; ++b) m[a * size + b] = true;
  return FinitePoset(size, std::move(m));
}

FinitePoset FinitePoset::antichain(std::size_t size) {
  std::vector<bool> m(size * size, false);
  for (std::size_t a = 0; a < size; ++a) m[a * size + a] = true;
  return FinitePoset(size, std::move(m));
}

FinitePoset FinitePoset::divisibility(const std::vector<std::uint64_t>& values) {
  const std::size_t n = values.size();
  std::vector<bool> m(n * n, false);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      m[a * n + b] = values[a] != 0 && values[b] % values[a] == 0;
  return FinitePoset(n, std::move(m));
}

bool FinitePoset::is_chain(const Subset& s) const {
  const auto xs = s.indices();
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!comparable(xs[i], xs[j])) return false;
  return true;
}

std::optional<ElementId> FinitePoset::supremum_of(const std::vector<ElementId>& values) const {
  std::vector<ElementId> ubs;
  for (ElementId u = 0; u < n_; ++u) {
    bool ub = true;
    for (ElementId v : values) ub = ub && leq(v, u);
    if (ub) ubs.push_back(u);
  }
  for (ElementId u : ubs) {
    bool least = true;
    for (ElementId w : ubs) least = least && leq(u, w);
    if (least) return u;
  }
  return std::nullopt;
}

std::optional<ElementId> FinitePoset::infimum_of(const std::vector<ElementId>& values) const {
  std::vector<ElementId> lbs;
  for (ElementId u = 0; u < n_; ++u) {
    bool lb = true;
    for (ElementId v : values) lb = lb && leq(u, v);
    if (lb) lbs.push_back(u);
  }
  for (ElementId u : lbs) {
    bool greatest = true;
    for (ElementId w : lbs) greatest = greatest && leq(w, u);
    if (greatest) return u;
  }
  return std::nullopt;
}

FinitePoset FinitePoset::relabeled(const std::vector<ElementId>& perm) const {
  if (perm.size() != n_) fail(Errc::invalid_argument, "permutation size mismatch");
  std::vector<bool> m(n_ * n_, false);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) m[perm[a] * n_ + perm[b]] = leq(a, b);
  return FinitePoset(n_, std::move(m));
}

ElementId infimum_of_chain(const FinitePoset& poset, const Subset& chain) {
  const auto xs = chain.indices();
  if (xs.empty()) fail(Errc::empty_chain, "infimum of the empty chain is undefined");
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!poset.comparable(xs[i], xs[j]))
        fail(Errc::not_a_chain, "elements " + std::to_string(xs[i]) + " and " +
                                    std::to_string(xs[j]) + " are incomparable");
  for (ElementId candidate : xs) {
    bool least = true;
    for (ElementId other : xs) least = least && poset.leq(candidate, other);
    if (least) return candidate;
  }
  // Unreachable: a finite chain always has a least element.
  fail(Errc::internal_error, "finite chain without a least element");
}

ChainCompletenessReport is_lower_chain_complete(const FinitePoset&) {
  return {true,
          "every nonempty chain in a finite poset has a least element, which is its infimum"};
}

GroupTable::GroupTable(Operation addition, ElementId zero)
    : add_(std::move(addition)), zero_(zero) {
  if (add_.arity() != 2) fail(Errc::invalid_argument, "group addition must be binary");
  const std::size_t n = add_.carrier_size();
  if (zero_ >= n) fail(Errc::out_of_range, "zero element outside the carrier");
  for (ElementId a = 0; a < n; ++a) {
    if (add(zero_, a) != a || add(a, zero_) != a)
      fail(Errc::invalid_argument, "zero is not an identity for the addition table");
    for (ElementId b = 0; b < n; ++b) {
      if (add(a, b) != add(b, a))
        fail(Errc::invalid_argument, "addition table is not commutative");
      for (ElementId c = 0; c < n; ++c)
        if (add(add(a, b), c) != add(a, add(b, c)))
          fail(Errc::invalid_argument, "addition table is not associative");
    }
  }
  neg_.assign(n, 0);
  for (ElementId a = 0; a < n; ++a) {
    bool found = false;
    for (ElementId b = 0; b < n; ++b) {
      if (add(a, b) == zero_) {
        neg_[a] = b;
        found = true;
        break;
      }
    }
    if (!found) fail(Errc::invalid_argument, "addition table has no inverse for an element");
  }
}

SemigroupOrderSpec SemigroupOrderSpec::on_group(GroupTable g, Subset s) {
  if (s.universe_size() != g.size())
    fail(Errc::invalid_argument, "positive set must live on the group carrier");
  SemigroupOrderSpec spec;
  spec.group = std::move(g);
  spec.positives = std::move(s);
  return spec;
}

SemigroupOrderSpec SemigroupOrderSpec::on_window(long long lo, long long hi, Subset s) {
  if (lo > hi) fail(Errc::invalid_argument, "empty integer window");
  if (s.universe_size() != static_cast<std::size_t>(hi - lo + 1))
    fail(Errc::invalid_argument, "positive set must live on the window carrier");
  SemigroupOrderSpec spec;
  spec.window = {lo, hi};
  spec.positives = std::move(s);
  return spec;
}

namespace {

FinitePoset group_semigroup_order(const GroupTable& g, const Subset& s) {
  const std::size_t n = g.size();
  if (!s.contains(g.zero())) fail(Errc::not_pointed, "0 is not in S");
  for (ElementId a : s.indices()) {
    if (a != g.zero() && s.contains(g.neg(a)))
      fail(Errc::not_salient, "nonzero element " + std::to_string(a) + " has both signs in S");
  }
  for (ElementId a : s.indices())
    for (ElementId b : s.indices())
      if (!s.contains(g.add(a, b)))
        fail(Errc::not_closed, "S is not closed: " + std::to_string(a) + "+" + std::to_string(b) +
                               " leaves S");
  std::vector<bool> m(n * n, false);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y) m[x * n + y] = s.contains(g.sub(y, x));
  return FinitePoset(n, std::move(m));
}

FinitePoset window_semigroup_order(long long lo, long long hi, const Subset& s) {
  const long long span = hi - lo;
  auto value_of = [&](std::size_t idx) { return lo + static_cast<long long>(idx); };
  std::vector<long long> gen;
  for (std::size_t idx : s.indices()) gen.push_back(value_of(idx));
  if (std::find(gen.begin(), gen.end(), 0) == gen.end())
    fail(Errc::not_pointed, "0 is not in S");
  bool has_pos = false, has_neg = false;
  long long pos = 0, neg = 0;
  for (long long v : gen) {
    if (v > 0) { has_pos = true; pos = v; }
    if (v < 0) { has_neg = true; neg = v; }
  }
  if (has_pos && has_neg)
    fail(Errc::not_salient, "S generates both " + std::to_string(pos * -neg) + " and its negation");

  // One-signed generators: reachable sums are monotone, so exploring within
  // the window span is exhaustive for the differences that matter.
  std::set<long long> closure(gen.begin(), gen.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<long long> snapshot(closure.begin(), closure.end());
    for (long long a : snapshot)
      for (long long b : gen) {
        long long c = a + b;
        if (c < -span || c > span) continue;
        if (closure.insert(c).second) changed = true;
      }
  }
  const std::size_t n = static_cast<std::size_t>(span + 1);
  std::vector<bool> m(n * n, false);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      m[x * n + y] = closure.count(value_of(y) - value_of(x)) > 0;
  return FinitePoset(n, std::move(m));
}

}  // namespace

FinitePoset semigroup_order(const SemigroupOrderSpec& spec) {
  if (spec.group) return group_semigroup_order(*spec.group, spec.positives);
  if (spec.window) return window_semigroup_order(spec.window->first, spec.window->second, spec.positives);
  fail(Errc::invalid_argument, "semigroup order spec has no carrier");
}

}  // namespace opconvex
