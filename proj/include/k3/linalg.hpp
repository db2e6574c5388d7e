#pragma once

// Exact integer linear algebra over arbitrary-precision integers.
//
// Everything here works on GMP integers and rationals; there is no floating
// point anywhere in this header or its implementation. Determinants use
// fraction-free (Bareiss) elimination, Smith forms carry their unimodular
// transforms, and inertia is read off an exact symmetric elimination.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace k3 {

using Integer = mpz_class;
using Rational = mpq_class;

class IntPolynomial;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const Integer& at(std::size_t i, std::size_t j) const;

  IntMatrix transposed() const;
  /// Principal submatrix on the given (ordered) index list.
  IntMatrix principal(std::span<const std::size_t> indices) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& s, const IntMatrix& m);
std::vector<Integer> operator*(const IntMatrix& m, std::span<const Integer> v);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Block-diagonal sum of the given matrices (all square).
IntMatrix direct_sum(std::span<const IntMatrix> blocks);

/// Exact determinant by fraction-free elimination. Throws std::invalid_argument
/// on non-square input.
Integer determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix d;  ///< diagonal, nonnegative, d(i,i) | d(i+1,i+1)
  IntMatrix u;  ///< unimodular, rows x rows
  IntMatrix v;  ///< unimodular, cols x cols

  /// The diagonal entries d(0,0), d(1,1), ... (length min(rows, cols)).
  std::vector<Integer> invariants() const;
};

/// U * m * V == D with U, V unimodular.
SmithForm smith_normal_form(const IntMatrix& m);

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia of a symmetric matrix. Throws std::invalid_argument if
/// the matrix is not symmetric.
Inertia inertia(const IntMatrix& m);

/// det(xI - m), monic. Throws std::invalid_argument on non-square input.
IntPolynomial characteristic_polynomial(const IntMatrix& m);

/// p(m) evaluated by Horner's rule.
IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m);

/// Classical adjugate: adj(m) * m == det(m) * I.
IntMatrix adjugate(const IntMatrix& m);

/// Exact inverse of a unimodular matrix. Throws std::domain_error otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

IntMatrix power(const IntMatrix& m, unsigned long exponent);

std::size_t rank(const IntMatrix& m);

/// Basis of the rational kernel {x : m x = 0}, each vector scaled to a
/// primitive integer vector whose first nonzero entry is positive.
std::vector<std::vector<Integer>> kernel_basis(const IntMatrix& m);

}  // namespace k3
