#pragma once

// Slow, independent reference computations used to validate the library.

#include <random>
#include <vector>

#include "k3/linalg.hpp"

namespace oracle {

using k3::IntMatrix;
using k3::Integer;
using k3::Rational;

// Gaussian elimination over Q.
inline Rational det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

// det(xI - m) by interpolation at x = 0..n; ascending coefficients.
inline std::vector<Rational> charpoly(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Rational> xs(n + 1), ys(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? Integer(static_cast<long>(k)) : Integer(0)) - m(i, j);
    xs[k] = static_cast<long>(k);
    ys[k] = det(a);
  }
  // Newton divided differences, then expand.
  std::vector<Rational> c = ys;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = n; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rational> poly(1, c[n]);
  for (std::size_t i = n; i-- > 0;) {
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * xs[i];
    }
    next[0] += c[i];
    poly = std::move(next);
  }
  poly.resize(n + 1);
  return poly;
}

struct Signature {
  std::size_t pos = 0, neg = 0, zero = 0;
};

// Descartes' rule is exact for polynomials with only real roots, which is the
// case for characteristic polynomials of symmetric matrices.
inline Signature inertia(const IntMatrix& m) {
  const std::vector<Rational> p = charpoly(m);
  Signature s;
  while (s.zero < p.size() && p[s.zero] == 0) ++s.zero;
  auto variations = [&](bool negate) {
    std::size_t v = 0;
    int last = 0;
    for (std::size_t i = s.zero; i < p.size(); ++i) {
      int sg = sgn(p[i]);
      if (negate && i % 2 == 1) sg = -sg;
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++v;
      last = sg;
    }
    return v;
  };
  s.pos = variations(false);
  s.neg = variations(true);
  return s;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

// Product of random elementary operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> f(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    u.add_row_multiple(a, b, f(rng));
  }
  return u;
}

}  // namespace oracle
