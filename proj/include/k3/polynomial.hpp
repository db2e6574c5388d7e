#pragma once

#include "k3/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3 {

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending degree. The zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> ascending);
  IntPolynomial(std::initializer_list<long> ascending);

  static IntPolynomial monomial(std::size_t degree, const Integer& coeff = 1);
  static IntPolynomial constant(const Integer& c);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const Integer& leading() const;
  Integer coefficient(std::size_t i) const;
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  Integer operator()(const Integer& x) const;
  Rational operator()(const Rational& x) const;

  IntPolynomial derivative() const;
  /// p(-x)
  IntPolynomial negated_argument() const;
  /// x^deg * p(1/x)
  IntPolynomial reversed() const;
  /// +1 if reversed() == p, -1 if reversed() == -p, 0 otherwise.
  int reciprocity_sign() const;

  Integer content() const;
  /// Divided by content, leading coefficient positive.
  IntPolynomial primitive_part() const;

  std::string to_string(char var = 'x') const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Integer& s, const IntPolynomial& p);
  IntPolynomial operator-() const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Quotient when `divisor` divides `p` exactly over the integers.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& p, const IntPolynomial& divisor);

/// Primitive gcd over Q (positive leading coefficient); gcd(0, 0) = 0.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

/// p / gcd(p, p'), primitive.
IntPolynomial squarefree_part(const IntPolynomial& p);

unsigned long euler_phi(unsigned long n);

/// The n-th cyclotomic polynomial.
IntPolynomial cyclotomic(unsigned long n);

/// Sturm chain of a squarefree polynomial, used to count distinct real roots
/// in half-open intervals with exact rational arithmetic.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& squarefree);

  /// Number of distinct real roots in (a, b]; a must not be a root.
  std::size_t count_roots(const Rational& a, const Rational& b) const;
  /// Number of distinct real roots in (a, +inf); a must not be a root.
  std::size_t count_roots_above(const Rational& a) const;
  std::size_t count_all_roots() const;

 private:
  std::size_t variations(const Rational& x) const;
  std::size_t variations_at_infinity(bool positive) const;
  std::vector<IntPolynomial> chain_;
};

/// Upper bound on the absolute value of every complex root (Cauchy).
Rational root_bound(const IntPolynomial& p);

}  // namespace k3
