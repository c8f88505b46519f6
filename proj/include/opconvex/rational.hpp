#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "opconvex/errors.hpp"

namespace opconvex {

/// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
/// denominator) as long as construction goes through the helpers below.
using Rational = mpq_class;
using VecQ = std::vector<Rational>;

inline Rational ratio(long num, long den = 1) {
  if (den == 0) fail(Errc::invalid_argument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q" with arbitrary-precision parts.
std::optional<Rational> try_parse_rational(const std::string& text);
Rational parse_rational(const std::string& text);  // throws schema_error

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

// --- small exact vector helpers ---------------------------------------------

VecQ vec_add(const VecQ& a, const VecQ& b);
VecQ vec_sub(const VecQ& a, const VecQ& b);
VecQ vec_scale(const Rational& c, const VecQ& a);
Rational dot(const VecQ& a, const VecQ& b);
Rational norm_l1(const VecQ& a);
Rational norm_linf(const VecQ& a);
Rational sq_norm_l2(const VecQ& a);
bool is_zero(const VecQ& a);
std::string to_string(const VecQ& a);

/// Dense exact matrix, row-major.
class MatQ {
 public:
  MatQ() = default;
  MatQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static MatQ identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  VecQ apply(const VecQ& v) const;
  MatQ operator*(const MatQ& rhs) const;
  MatQ operator+(const MatQ& rhs) const;
  bool operator==(const MatQ& rhs) const = default;
  bool is_identity() const;
  bool is_scalar_multiple_of_identity(Rational* scalar = nullptr) const;

  /// Exact Gauss-Jordan inverse; nullopt when singular.
  std::optional<MatQ> inverse() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Strict lexicographic comparison, usable as a std::map comparator for VecQ.
struct VecQLess {
  bool operator()(const VecQ& a, const VecQ& b) const;
};

}  // namespace opconvex
