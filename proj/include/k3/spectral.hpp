#pragma once

// Dynamical classification of lattice isometries.
//
// Off-unit-circle eigenvalues are located exactly with Sturm sequences. This
// is only complete when such eigenvalues are real, which holds for lattices
// with min(n+, n-) <= 1; other signatures are rejected.

#include "k3/linalg.hpp"
#include "k3/polynomial.hpp"

#include <optional>
#include <string>

namespace k3 {

/// Exact test m^T g m == g. Throws std::invalid_argument on dimension mismatch.
bool is_isometry(const IntMatrix& m, const IntMatrix& g);

enum class DynamicsClass { Elliptic, Parabolic, Hyperbolic };
std::string to_string(DynamicsClass c);

struct EntropyReport {
  DynamicsClass cls = DynamicsClass::Elliptic;
  IntPolynomial char_poly;
  int reciprocity = 0;  ///< +1 / -1 if x^n p(1/x) = +-p(x), 0 otherwise
  /// Certified enclosure lo <= radius <= hi (exact 1 when not hyperbolic).
  Rational radius_lo = 1, radius_hi = 1;
  double radius = 1.0;
  double entropy = 0.0;
  /// Finite order of an elliptic map.
  unsigned long order = 0;
  /// Factor owning the eigenvalue of largest modulus (hyperbolic only).
  std::optional<IntPolynomial> salem_factor;
  int salem_reciprocity = 0;
  /// The dominant eigenvalue is negative (the factor is Salem in -x).
  bool dominant_negative = false;
};

/// Throws std::invalid_argument if m is not an isometry of g, and
/// std::domain_error for degenerate or unsupported signatures.
EntropyReport entropy(const IntMatrix& m, const IntMatrix& g);

/// Largest order n with euler_phi(n) <= degree (used for cyclotomic trial division).
unsigned long max_cyclotomic_order(long degree);

/// Removes every cyclotomic factor (with multiplicity); returns the orders
/// removed and the remaining cofactor, made primitive.
struct CyclotomicSplit {
  std::vector<unsigned long> orders;
  IntPolynomial rest;
};
CyclotomicSplit split_cyclotomic(const IntPolynomial& p);

}  // namespace k3
