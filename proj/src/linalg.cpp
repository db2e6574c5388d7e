#include "k3/linalg.hpp"

#include "k3/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace k3 {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

const Integer& IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix::at");
  return (*this)(i, j);
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::principal(std::span<const std::size_t> indices) const {
  IntMatrix s(indices.size(), indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b) s(a, b) = at(indices[a], indices[b]);
  return s;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum: dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntMatrix operator*(const Integer& s, const IntMatrix& m) {
  IntMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = s * m(i, j);
  return c;
}

std::vector<Integer> operator*(const IntMatrix& m, std::span<const Integer> v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  std::vector<Integer> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << (i + 1 == m.rows() ? "]]" : "]\n");
  }
  if (m.rows() == 0) os << "[]";
  return os;
}

IntMatrix direct_sum(std::span<const IntMatrix> blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) throw std::invalid_argument("direct_sum: non-square block");
    n += b.rows();
  }
  IntMatrix out(n, n);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(offset + i, offset + j) = b(i, j);
    offset += b.rows();
  }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && a(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      a.swap_rows(k, pivot);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<Integer> SmithForm::invariants() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(d.rows(), d.cols());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Smallest nonzero |entry| in the lower-right block starting at (t, t).
bool locate_min_pivot(const IntMatrix& a, std::size_t t, std::size_t& row, std::size_t& col) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs(a(i, j));
      if (!found || v < best) {
        best = v;
        row = i;
        col = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& a = s.d;
  const std::size_t steps = std::min(a.rows(), a.cols());

  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pr = t, pc = t;
    if (!locate_min_pivot(a, t, pr, pc)) break;

    for (;;) {
      a.swap_rows(t, pr);
      s.u.swap_rows(t, pr);
      a.swap_cols(t, pc);
      s.v.swap_cols(t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_row_multiple(i, t, -q);
        s.u.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col_multiple(j, t, -q);
        s.v.add_col_multiple(j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A smaller remainder appeared in row/column t; pivot on it.
        Integer best = abs(a(t, t));
        pr = t;
        pc = t;
        for (std::size_t i = t + 1; i < a.rows(); ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < best) {
            best = abs(a(i, t));
            pr = i;
            pc = t;
          }
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < best) {
            best = abs(a(t, j));
            pr = t;
            pc = j;
          }
        continue;
      }

      // Row and column are clear; enforce divisibility of the remaining block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < a.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            s.u.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
      pr = t;
      pc = t;
    }

    if (a(t, t) < 0) {
      a.negate_row(t);
      s.u.negate_row(t);
    }
  }
  return s;
}

Inertia inertia(const IntMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("inertia: matrix is not symmetric");
  std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);

  Inertia result;
  // Congruence elimination; `a` always holds the remaining Schur complement.
  auto remove = [&](std::vector<std::size_t> drop) {
    std::sort(drop.rbegin(), drop.rend());
    for (std::size_t d : drop) {
      a.erase(a.begin() + static_cast<long>(d));
      for (auto& row : a) row.erase(row.begin() + static_cast<long>(d));
    }
  };

  while (!a.empty()) {
    const std::size_t k = a.size();
    std::size_t pivot = k;
    for (std::size_t i = 0; i < k; ++i)
      if (a[i][i] != 0) {
        pivot = i;
        break;
      }
    if (pivot < k) {
      const Rational p = a[pivot][pivot];
      (p > 0 ? result.positive : result.negative) += 1;
      for (std::size_t i = 0; i < k; ++i) {
        if (i == pivot || a[i][pivot] == 0) continue;
        const Rational f = a[i][pivot] / p;
        for (std::size_t j = 0; j < k; ++j) a[i][j] -= f * a[pivot][j];
      }
      remove({pivot});
      continue;
    }

    // All diagonal entries vanish: use a hyperbolic 2x2 block [[0,b],[b,0]].
    std::size_t bi = k, bj = k;
    for (std::size_t i = 0; i < k && bi == k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (a[i][j] != 0) {
          bi = i;
          bj = j;
          break;
        }
    if (bi == k) {
      result.zero += k;
      break;
    }
    result.positive += 1;
    result.negative += 1;
    const Rational b = a[bi][bj];
    // Schur complement: a_rest - B * [[0,1/b],[1/b,0]] * B^T
    std::vector<std::vector<Rational>> next = a;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        next[i][j] -= (a[i][bi] * a[bj][j] + a[i][bj] * a[bi][j]) / b;
    a = std::move(next);
    remove({bi, bj});
  }
  return result;
}

IntPolynomial characteristic_polynomial(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("characteristic_polynomial: matrix is not square");
  // Faddeev-LeVerrier; every division below is exact over the integers.
  const std::size_t n = m.rows();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IntMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    IntMatrix am = m * mk;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    Integer q;
    mpz_divexact_ui(q.get_mpz_t(), trace.get_mpz_t(), k);
    c[n - k] = -q;
  }
  return IntPolynomial(std::move(c));
}

IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("evaluate: matrix is not square");
  IntMatrix acc(m.rows(), m.cols());
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t d = 0; d < m.rows(); ++d) acc(d, d) += c[i];
  }
  return acc;
}

IntMatrix adjugate(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("adjugate: matrix is not square");
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  std::vector<std::size_t> rows_keep, cols_keep;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Integer cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Integer(-cof);
    }
  return adj;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const Integer d = determinant(m);
  if (d != 1 && d != -1) throw std::domain_error("unimodular_inverse: determinant is not +-1");
  return d * adjugate(m);
}

IntMatrix power(const IntMatrix& m, unsigned long exponent) {
  if (!m.is_square()) throw std::invalid_argument("power: matrix is not square");
  IntMatrix result = IntMatrix::identity(m.rows());
  IntMatrix base = m;
  while (exponent > 0) {
    if (exponent & 1UL) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> to_rational(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  auto a = to_rational(m);
  return rref(a, m.cols()).size();
}

std::vector<std::vector<Integer>> kernel_basis(const IntMatrix& m) {
  auto a = to_rational(m);
  const auto pivots = rref(a, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<std::vector<Integer>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(m.cols());
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a[r][free];

    Integer lcm_den = 1;
    for (const auto& q : x) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> v(m.cols());
    Integer g = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rational scaled = x[i] * lcm_den;
      v[i] = scaled.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
    }
    const auto first = std::find_if(v.begin(), v.end(), [](const Integer& z) { return z != 0; });
    if (first != v.end() && *first < 0) g = -g;
    for (auto& z : v) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace k3
