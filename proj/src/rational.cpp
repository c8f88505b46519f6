#include "opconvex/rational.hpp"

#include <sstream>

namespace opconvex {

std::optional<Rational> try_parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string num = text, den = "1";
  if (auto pos = text.find('/'); pos != std::string::npos) {
    num = text.substr(0, pos);
    den = text.substr(pos + 1);
  }
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  mpz_class n(num), d(den);
  if (d == 0) return std::nullopt;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  auto q = try_parse_rational(text);
  if (!q) fail(Errc::schema_error, "invalid rational literal: '" + text + "'");
  return *q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

VecQ vec_add(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "vector size mismatch");
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecQ vec_sub(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "vector size mismatch");
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

VecQ vec_scale(const Rational& c, const VecQ& a) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

Rational dot(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "vector size mismatch");
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

Rational norm_l1(const VecQ& a) {
  Rational r = 0;
  for (const auto& x : a) r += abs(x);
  return r;
}

Rational norm_linf(const VecQ& a) {
  Rational r = 0;
  for (const auto& x : a) {
    Rational m = abs(x);
    if (m > r) r = m;
  }
  return r;
}

Rational sq_norm_l2(const VecQ& a) {
  Rational r = 0;
  for (const auto& x : a) r += x * x;
  return r;
}

bool is_zero(const VecQ& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

std::string to_string(const VecQ& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ", ";
    os << a[i].get_str();
  }
  os << ')';
  return os.str();
}

MatQ MatQ::identity(std::size_t n) {
  MatQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

VecQ MatQ::apply(const VecQ& v) const {
  if (v.size() != cols_) fail(Errc::dimension_mismatch, "matrix-vector size mismatch");
  VecQ r(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

MatQ MatQ::operator*(const MatQ& rhs) const {
  if (cols_ != rhs.rows_) fail(Errc::dimension_mismatch, "matrix product shape mismatch");
  MatQ r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) r.at(i, j) += at(i, k) * rhs.at(k, j);
    }
  return r;
}

MatQ MatQ::operator+(const MatQ& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(Errc::dimension_mismatch, "matrix sum shape mismatch");
  MatQ r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + rhs.a_[i];
  return r;
}

bool MatQ::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool MatQ::is_scalar_multiple_of_identity(Rational* scalar) const {
  if (rows_ != cols_ || rows_ == 0) return false;
  const Rational& s = at(0, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? s : Rational(0))) return false;
  if (scalar) *scalar = s;
  return true;
}

std::optional<MatQ> MatQ::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  MatQ work(*this);
  MatQ inv = MatQ::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    }
    Rational p = work.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || work.at(i, col) == 0) continue;
      Rational f = work.at(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        work.at(i, j) -= f * work.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

bool VecQLess::operator()(const VecQ& a, const VecQ& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace opconvex
