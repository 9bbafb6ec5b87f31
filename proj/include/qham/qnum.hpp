#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qham {

using Rational = mpq_class;
using Integer = mpz_class;

/// Mixing two scalars whose radical parts live in different quadratic fields.
class RadicandMismatchError : public std::invalid_argument {
 public:
  explicit RadicandMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// Division by zero, inverse of zero, shift_scale with zero scale, and similar.
class InvalidOperandError : public std::domain_error {
 public:
  explicit InvalidOperandError(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

struct RadicandParts {
  std::int64_t scale;     // s
  std::int64_t radicand;  // m squarefree, k = s^2 * m
};

/// Factor k >= 1 as s^2 * m with m squarefree.
RadicandParts normalize_radicand(std::int64_t k);

/// Element a + b*sqrt(m) of Q(sqrt(m)), m squarefree >= 1.
/// Rational values always carry m normalized away (m = 1 forces b = 0, and any
/// value with b = 0 is radicand-compatible with every other scalar).
class QuadScalar {
 public:
  QuadScalar() : m_(1) {}
  QuadScalar(long v) : a_(v), m_(1) {}  // NOLINT: implicit by design
  QuadScalar(Rational a) : a_(std::move(a)), m_(1) { a_.canonicalize(); }
  QuadScalar(Rational a, Rational b, std::int64_t m);

  /// sqrt(k) as a scalar: s*sqrt(m) with (s, m) = normalize_radicand(k).
  static QuadScalar sqrt_of(std::int64_t k);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  std::int64_t radicand() const { return m_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);
  QuadScalar operator-() const;

  QuadScalar inverse() const;

  /// *this += c * y, the fused step used by matrix kernels.
  void add_mul(const QuadScalar& c, const QuadScalar& y);
  /// *this += c * v for an integer v.
  void add_mul_int(const QuadScalar& c, std::int64_t v);

  double to_double() const;

  /// Canonical 3-token form "a + b*sqrt(m)", e.g. "3/2 + -1*sqrt(2)".
  std::string to_string() const;
  /// Accepts the canonical form plus compact forms "a", "b*sqrt(m)".
  static QuadScalar parse(std::string_view text);

  friend bool operator==(const QuadScalar& x, const QuadScalar& y);
  friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }

 private:
  // Shared radicand for a binary op; throws RadicandMismatchError when both
  // radical parts are nonzero over distinct fields.
  static std::int64_t joint_radicand(const QuadScalar& x, const QuadScalar& y);
  void fold_if_rational();

  Rational a_;
  Rational b_;
  std::int64_t m_;
};

QuadScalar operator+(QuadScalar x, const QuadScalar& y);
QuadScalar operator-(QuadScalar x, const QuadScalar& y);
QuadScalar operator*(QuadScalar x, const QuadScalar& y);
QuadScalar operator/(QuadScalar x, const QuadScalar& y);
std::ostream& operator<<(std::ostream& os, const QuadScalar& s);

/// Dense univariate polynomial over QuadScalar, coefficients lowest-first.
/// The zero polynomial has no coefficients and degree -1.
class QuadPolynomial {
 public:
  QuadPolynomial() = default;
  explicit QuadPolynomial(std::vector<QuadScalar> coeffs);
  static QuadPolynomial constant(QuadScalar c);
  static QuadPolynomial monomial(QuadScalar c, std::size_t degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<QuadScalar>& coefficients() const { return coeffs_; }
  QuadScalar coefficient(std::size_t k) const;
  const QuadScalar& leading_coefficient() const;

  QuadScalar eval(const QuadScalar& t) const;

  QuadPolynomial& operator+=(const QuadPolynomial& o);
  QuadPolynomial& operator-=(const QuadPolynomial& o);
  QuadPolynomial operator*(const QuadPolynomial& o) const;
  QuadPolynomial operator*(const QuadScalar& c) const;

  /// q(t) = p(alpha*t + beta); alpha must be nonzero.
  QuadPolynomial shift_scale(const QuadScalar& alpha, const QuadScalar& beta) const;

  std::string to_string() const;  // human form in the variable t

  friend bool operator==(const QuadPolynomial& p, const QuadPolynomial& q) {
    return p.coeffs_ == q.coeffs_;
  }
  friend bool operator!=(const QuadPolynomial& p, const QuadPolynomial& q) { return !(p == q); }

 private:
  void trim();
  std::vector<QuadScalar> coeffs_;
};

QuadPolynomial operator+(QuadPolynomial p, const QuadPolynomial& q);
QuadPolynomial operator-(QuadPolynomial p, const QuadPolynomial& q);

}  // namespace qham
