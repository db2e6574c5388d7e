#include "k3/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace k3 {

IntPolynomial::IntPolynomial(std::vector<Integer> ascending) : coeffs_(std::move(ascending)) {
  trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> ascending) {
  for (long c : ascending) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::monomial(std::size_t degree, const Integer& coeff) {
  std::vector<Integer> c(degree + 1);
  c[degree] = coeff;
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Integer& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Integer IntPolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Integer(0);
}

Integer IntPolynomial::operator()(const Integer& x) const {
  Integer acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Rational IntPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::negated_argument() const {
  std::vector<Integer> c = coeffs_;
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::reversed() const {
  std::vector<Integer> c(coeffs_.rbegin(), coeffs_.rend());
  return IntPolynomial(std::move(c));
}

int IntPolynomial::reciprocity_sign() const {
  if (is_zero()) return 0;
  // A zero constant term makes x^deg p(1/x) drop degree, so p cannot be reciprocal.
  if (coeffs_.front() == 0) return 0;
  const IntPolynomial r = reversed();
  if (r == *this) return 1;
  if (r == -*this) return -1;
  return 0;
}

Integer IntPolynomial::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  Integer g = content();
  if (leading() < 0) g = -g;
  std::vector<Integer> c = coeffs_;
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Integer> c = coeffs_;
  for (auto& x : c) x = -x;
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const Integer& s, const IntPolynomial& p) {
  std::vector<Integer> c = p.coeffs_;
  for (auto& x : c) x *= s;
  return IntPolynomial(std::move(c));
}

std::optional<IntPolynomial> divide_exact(const IntPolynomial& p, const IntPolynomial& divisor) {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (p.is_zero()) return IntPolynomial{};
  if (p.degree() < divisor.degree()) return std::nullopt;
  std::vector<Integer> rem = p.coefficients();
  const auto& d = divisor.coefficients();
  const std::size_t dn = d.size();
  std::vector<Integer> q(rem.size() - dn + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = rem[k + dn - 1];
    if (top == 0) continue;
    if (top % d.back() != 0) return std::nullopt;
    q[k] = top / d.back();
    for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= q[k] * d[j];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

namespace {

// Pseudo-remainder of a by b, rescaled so that it is a positive multiple of
// the true remainder over Q.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> r = a.coefficients();
  const auto& d = b.coefficients();
  const std::size_t dn = d.size();
  const Integer& lc = d.back();
  long steps = 0;
  while (r.size() >= dn && !r.empty()) {
    const Integer top = r.back();
    const std::size_t shift = r.size() - dn;
    for (auto& x : r) x *= lc;
    for (std::size_t j = 0; j < dn; ++j) r[shift + j] -= top * d[j];
    ++steps;
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  IntPolynomial out(std::move(r));
  // The accumulated factor lc^steps is negative only for lc < 0 and odd steps.
  if (steps % 2 == 1 && lc < 0) out = -out;
  return out;
}

}  // namespace

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial x = a.primitive_part();
  IntPolynomial y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPolynomial r = pseudo_remainder(x, y).primitive_part();
    x = std::move(y);
    y = std::move(r);
  }
  return x.primitive_part();
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() <= 0) return p.primitive_part();
  const IntPolynomial g = gcd(p, p.derivative());
  auto q = divide_exact(p.primitive_part(), g);
  if (!q) throw std::logic_error("squarefree_part: gcd does not divide");
  return q->primitive_part();
}

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPolynomial cyclotomic(unsigned long n) {
  if (n == 0) throw std::invalid_argument("cyclotomic: order must be positive");
  // Phi_d for every divisor d of n, smallest first: x^d - 1 over the product
  // of the earlier Phi_e with e | d.
  std::vector<unsigned long> divisors;
  for (unsigned long d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  std::vector<IntPolynomial> phi;
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    IntPolynomial p = IntPolynomial::monomial(divisors[i]) - IntPolynomial{1};
    for (std::size_t j = 0; j < i; ++j) {
      if (divisors[i] % divisors[j] != 0) continue;
      auto q = divide_exact(p, phi[j]);
      if (!q) throw std::logic_error("cyclotomic: inexact division");
      p = std::move(*q);
    }
    phi.push_back(std::move(p));
  }
  return phi.back();
}

SturmSequence::SturmSequence(const IntPolynomial& squarefree) {
  if (squarefree.is_zero()) throw std::invalid_argument("SturmSequence: zero polynomial");
  chain_.push_back(squarefree);
  if (squarefree.degree() == 0) return;
  chain_.push_back(squarefree.derivative());
  while (chain_.back().degree() > 0) {
    const IntPolynomial& a = chain_[chain_.size() - 2];
    const IntPolynomial& b = chain_.back();
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // Positive rescaling keeps sign variations intact; the content removal
    // only divides by a positive integer.
    const Integer c = r.content();
    std::vector<Integer> coeffs = (-r).coefficients();
    for (auto& x : coeffs) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    chain_.emplace_back(std::move(coeffs));
  }
}

std::size_t SturmSequence::variations(const Rational& x) const {
  std::size_t count = 0;
  int last = 0;
  for (const auto& p : chain_) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::size_t SturmSequence::variations_at_infinity(bool positive) const {
  std::size_t count = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = sgn(p.leading());
    if (!positive && p.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::size_t SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  if (b <= a) return 0;
  const std::size_t va = variations(a);
  const std::size_t vb = variations(b);
  return va >= vb ? va - vb : 0;
}

std::size_t SturmSequence::count_roots_above(const Rational& a) const {
  const std::size_t va = variations(a);
  const std::size_t vi = variations_at_infinity(true);
  return va >= vi ? va - vi : 0;
}

std::size_t SturmSequence::count_all_roots() const {
  const std::size_t vm = variations_at_infinity(false);
  const std::size_t vp = variations_at_infinity(true);
  return vm >= vp ? vm - vp : 0;
}

Rational root_bound(const IntPolynomial& p) {
  if (p.degree() <= 0) return 0;
  const auto& c = p.coefficients();
  Integer maxc = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (abs(c[i]) > maxc) maxc = abs(c[i]);
  Rational bound(maxc, abs(c.back()));
  bound.canonicalize();
  return bound + 1;
}

}  // namespace k3
