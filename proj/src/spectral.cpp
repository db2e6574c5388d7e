#include "k3/spectral.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace k3 {

bool is_isometry(const IntMatrix& m, const IntMatrix& g) {
  if (!m.is_square() || !g.is_square() || m.rows() != g.rows())
    throw std::invalid_argument("is_isometry: dimension mismatch");
  return m.transposed() * g * m == g;
}

std::string to_string(DynamicsClass c) {
  switch (c) {
    case DynamicsClass::Elliptic: return "elliptic";
    case DynamicsClass::Parabolic: return "parabolic";
    case DynamicsClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

unsigned long max_cyclotomic_order(long degree) {
  if (degree < 1) return 0;
  // euler_phi(n) >= sqrt(n / 2), so no order beyond 2 * degree^2 qualifies.
  const unsigned long limit = 2UL * static_cast<unsigned long>(degree) * static_cast<unsigned long>(degree) + 2;
  unsigned long best = 1;
  for (unsigned long n = 1; n <= limit; ++n)
    if (euler_phi(n) <= static_cast<unsigned long>(degree)) best = n;
  return best;
}

CyclotomicSplit split_cyclotomic(const IntPolynomial& p) {
  CyclotomicSplit out;
  out.rest = p.primitive_part();
  const unsigned long top = max_cyclotomic_order(p.degree());
  for (unsigned long n = 1; n <= top && out.rest.degree() > 0; ++n) {
    if (euler_phi(n) > static_cast<unsigned long>(out.rest.degree())) continue;
    const IntPolynomial phi = cyclotomic(n);
    while (out.rest.degree() >= phi.degree()) {
      auto q = divide_exact(out.rest, phi);
      if (!q) break;
      out.rest = std::move(*q);
      out.orders.push_back(n);
    }
  }
  return out;
}

namespace {

// Largest real root above 1 of a squarefree q with at least one such root,
// enclosed in (lo, hi] with hi - lo below 2^-48.
std::pair<Rational, Rational> largest_root_above_one(const IntPolynomial& q) {
  const SturmSequence s(q);
  Rational lo = 1;
  Rational hi = root_bound(q);
  Rational width(1, 1);
  mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), 48);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (s.count_roots_above(mid) >= 1) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

}  // namespace

EntropyReport entropy(const IntMatrix& m, const IntMatrix& g) {
  if (!g.is_symmetric()) throw std::invalid_argument("entropy: Gram matrix is not symmetric");
  if (!is_isometry(m, g)) throw std::invalid_argument("entropy: matrix is not an isometry of the lattice");
  const Inertia sig = inertia(g);
  if (sig.zero != 0) throw std::domain_error("entropy: degenerate lattice");
  if (std::min(sig.positive, sig.negative) > 1)
    throw std::domain_error("entropy: signature (" + std::to_string(sig.positive) + "," +
                            std::to_string(sig.negative) + ") is not supported");

  EntropyReport rep;
  rep.char_poly = characteristic_polynomial(m);
  rep.reciprocity = rep.char_poly.reciprocity_sign();

  IntPolynomial s = squarefree_part(rep.char_poly);
  for (const IntPolynomial& lin : {IntPolynomial{-1, 1}, IntPolynomial{1, 1}})
    if (auto q = divide_exact(s, lin)) s = std::move(*q);

  std::size_t above = 0, below = 0;
  if (s.degree() >= 1) {
    above = SturmSequence(s).count_roots_above(1);
    below = SturmSequence(s.negated_argument().primitive_part()).count_roots_above(1);
  }

  if (above + below == 0) {
    const CyclotomicSplit split = split_cyclotomic(rep.char_poly);
    if (split.rest.degree() == 0) {
      unsigned long n = 1;
      for (auto o : split.orders) n = std::lcm(n, o);
      const IntMatrix id = IntMatrix::identity(m.rows());
      if (power(m, n) == id) {
        rep.cls = DynamicsClass::Elliptic;
        for (unsigned long d = 1; d <= n; ++d)
          if (n % d == 0 && power(m, d) == id) {
            rep.order = d;
            break;
          }
        return rep;
      }
    }
    rep.cls = DynamicsClass::Parabolic;
    return rep;
  }

  rep.cls = DynamicsClass::Hyperbolic;
  Rational lo = 0, hi = 0;
  if (above) std::tie(lo, hi) = largest_root_above_one(s);
  if (below) {
    auto [nlo, nhi] = largest_root_above_one(s.negated_argument().primitive_part());
    if (nlo > hi || !above) {
      lo = nlo;
      hi = nhi;
      rep.dominant_negative = true;
    }
  }
  rep.radius_lo = lo;
  rep.radius_hi = hi;
  rep.radius = Rational((lo + hi) / 2).get_d();
  rep.entropy = std::log(rep.radius);

  // Every irreducible factor other than the one owning the dominant root has
  // all roots on the unit circle (its other roots would have product of
  // modulus < 1), hence is cyclotomic. Removing cyclotomic factors from the
  // squarefree part therefore leaves exactly that factor.
  const CyclotomicSplit split = split_cyclotomic(s);
  rep.salem_factor = split.rest;
  rep.salem_reciprocity = split.rest.reciprocity_sign();
  return rep;
}

}  // namespace k3
