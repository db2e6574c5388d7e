#include "doctest.h"
#include "k3/polynomial.hpp"

using namespace k3;

TEST_CASE("polynomial arithmetic") {
  const IntPolynomial p{1, 1};   // 1 + x
  const IntPolynomial q{-1, 1};  // -1 + x
  CHECK(p * q == IntPolynomial{-1, 0, 1});
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  CHECK(p.to_string() == "x + 1");
  CHECK(IntPolynomial{0, -2, 0, 1}.to_string() == "x^3 - 2x");
  CHECK(IntPolynomial{}.to_string() == "0");
  CHECK(IntPolynomial{1, 2, 3}(Integer(2)) == 17);
  CHECK(IntPolynomial{1, 2, 3}(Rational(1, 2)) == Rational(11, 4));
  CHECK(IntPolynomial{1, 2, 3}.derivative() == IntPolynomial{2, 6});
  CHECK(IntPolynomial{1, 2, 3}.negated_argument() == IntPolynomial{1, -2, 3});
  CHECK(IntPolynomial{1, 2, 3}.reversed() == IntPolynomial{3, 2, 1});
  CHECK(IntPolynomial{6, 4, 2}.content() == 2);
  CHECK(IntPolynomial{-6, -4, -2}.primitive_part() == IntPolynomial{3, 2, 1});
}

TEST_CASE("reciprocity sign") {
  CHECK(IntPolynomial{1, -3, 1}.reciprocity_sign() == 1);
  CHECK(IntPolynomial{-1, 0, 1}.reciprocity_sign() == -1);
  CHECK(IntPolynomial{2, 1}.reciprocity_sign() == 0);
  // Lehmer's polynomial
  CHECK(IntPolynomial{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}.reciprocity_sign() == 1);
}

TEST_CASE("exact division and gcd") {
  const IntPolynomial a{-1, 0, 1};
  const IntPolynomial b{1, 1};
  CHECK(divide_exact(a, b) == IntPolynomial{-1, 1});
  CHECK_FALSE(divide_exact(a, IntPolynomial{2, 1}).has_value());
  CHECK(gcd(a, IntPolynomial{1, 2, 1}) == b);
  CHECK(gcd(IntPolynomial{}, IntPolynomial{}).is_zero());
  CHECK(gcd(IntPolynomial{2, 2}, IntPolynomial{}) == b);
  CHECK(squarefree_part(IntPolynomial{1, 2, 1}) == b);
  CHECK(squarefree_part(IntPolynomial{-1, 1} * IntPolynomial{-1, 1} * IntPolynomial{1, 0, 1}) ==
        IntPolynomial{-1, 1, -1, 1});
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == IntPolynomial{-1, 1});
  CHECK(cyclotomic(2) == IntPolynomial{1, 1});
  CHECK(cyclotomic(4) == IntPolynomial{1, 0, 1});
  CHECK(cyclotomic(6) == IntPolynomial{1, -1, 1});
  CHECK(cyclotomic(12) == IntPolynomial{1, 0, -1, 0, 1});
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(30) == 8);
  for (unsigned long n = 1; n <= 40; ++n) {
    CHECK(cyclotomic(n).degree() == static_cast<long>(euler_phi(n)));
    // x^n - 1 is the product of cyclotomic(d) over d | n.
    IntPolynomial prod{1};
    for (unsigned long d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic(d);
    CHECK(prod == IntPolynomial::monomial(n) - IntPolynomial{1});
  }
}

TEST_CASE("Sturm root counting") {
  const SturmSequence s(IntPolynomial{-2, 0, 1});  // x^2 - 2
  CHECK(s.count_all_roots() == 2);
  CHECK(s.count_roots_above(0) == 1);
  CHECK(s.count_roots(Rational(7, 5), Rational(3, 2)) == 1);
  CHECK(s.count_roots(Rational(3, 2), 2) == 0);
  CHECK(s.count_roots(-2, 2) == 2);

  // Lehmer's polynomial has exactly two real roots, one in (1, 1.2).
  const SturmSequence l(IntPolynomial{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  CHECK(l.count_all_roots() == 2);
  CHECK(l.count_roots(1, Rational(6, 5)) == 1);
  CHECK(l.count_roots_above(Rational(6, 5)) == 0);

  CHECK(SturmSequence(IntPolynomial{1, 0, 1}).count_all_roots() == 0);
  CHECK(SturmSequence(IntPolynomial{0, -1, 0, 1}).count_all_roots() == 3);
}

TEST_CASE("root bound") {
  const IntPolynomial p{-6, 11, -6, 1};  // roots 1, 2, 3
  CHECK(root_bound(p) >= 3);
  CHECK(root_bound(IntPolynomial{1, 0, 1}) >= 1);
}
