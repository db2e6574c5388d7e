#include "doctest.h"
#include "k3/linalg.hpp"
#include "k3/polynomial.hpp"
#include "oracles.hpp"

using namespace k3;

TEST_CASE("determinant of small matrices") {
  CHECK(determinant(IntMatrix{{2, -1}, {-1, 2}}) == 3);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("determinant agrees with rational elimination") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto m = oracle::random_matrix(rng, 1 + t % 6, 1 + t % 6, -9, 9);
    CHECK(Rational(determinant(m)) == oracle::det(m));
  }
}

TEST_CASE("determinant does not overflow") {
  IntMatrix m(3, 3);
  const Integer big("123456789012345678901234567890");
  for (std::size_t i = 0; i < 3; ++i) m(i, i) = big;
  CHECK(determinant(m) == big * big * big);
}

TEST_CASE("Smith normal form") {
  const IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const SmithForm s = smith_normal_form(m);
  CHECK(s.u * m * s.v == s.d);
  CHECK(s.invariants() == std::vector<Integer>{2, 6, 12});
  CHECK(abs(determinant(s.u)) == 1);
  CHECK(abs(determinant(s.v)) == 1);

  const SmithForm r = smith_normal_form(IntMatrix{{1, 2, 3}, {2, 4, 6}});
  CHECK(r.invariants() == std::vector<Integer>{1, 0});
  CHECK(r.d.rows() == 2);
  CHECK(r.d.cols() == 3);
}

TEST_CASE("inertia") {
  CHECK(inertia(IntMatrix{{0, 1}, {1, 0}}) == Inertia{1, 1, 0});
  CHECK(inertia(IntMatrix{{-2, 1}, {1, -2}}) == Inertia{0, 2, 0});
  CHECK(inertia(IntMatrix{{1, 1}, {1, 1}}) == Inertia{1, 0, 1});
  CHECK(inertia(IntMatrix{{0, 0}, {0, 0}}) == Inertia{0, 0, 2});
  CHECK_THROWS_AS(inertia(IntMatrix{{0, 1}, {0, 0}}), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const auto s = oracle::random_symmetric(rng, 1 + t % 5, -3, 3);
    const Inertia in = inertia(s);
    const auto ref = oracle::inertia(s);
    CHECK(in.positive == ref.pos);
    CHECK(in.negative == ref.neg);
    CHECK(in.zero == ref.zero);
  }
}

TEST_CASE("characteristic polynomial") {
  CHECK(characteristic_polynomial(IntMatrix{{2, 1}, {1, 2}}) == IntPolynomial{3, -4, 1});
  CHECK(characteristic_polynomial(IntMatrix(0, 0)) == IntPolynomial{1});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const auto m = oracle::random_matrix(rng, 1 + t % 5, 1 + t % 5, -5, 5);
    const auto p = characteristic_polynomial(m);
    const auto ref = oracle::charpoly(m);
    REQUIRE(p.degree() == static_cast<long>(ref.size()) - 1);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(Rational(p.coefficient(i)) == ref[i]);
    CHECK(evaluate(p, m) == IntMatrix(m.rows(), m.rows()));
  }
}

TEST_CASE("adjugate, inverse and powers") {
  const IntMatrix m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  const IntMatrix adj = adjugate(m);
  CHECK(adj * m == determinant(m) * IntMatrix::identity(3));
  CHECK(adjugate(IntMatrix{{5}}) == IntMatrix{{1}});

  const IntMatrix u{{1, 2}, {0, 1}};
  CHECK(unimodular_inverse(u) * u == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), std::domain_error);

  CHECK(power(u, 0) == IntMatrix::identity(2));
  CHECK(power(u, 5) == IntMatrix{{1, 10}, {0, 1}});
}

TEST_CASE("rank and kernel") {
  const IntMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(rank(m) == 2);
  const auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == std::vector<Integer>{1, 1, -1});
  CHECK(m * std::span<const Integer>(k[0]) == std::vector<Integer>{0, 0, 0});

  // Affine A2: the kernel is spanned by (1, 1, 1).
  const IntMatrix a2{{-2, 1, 1}, {1, -2, 1}, {1, 1, -2}};
  CHECK(kernel_basis(a2) == std::vector<std::vector<Integer>>{{1, 1, 1}});
  CHECK(kernel_basis(IntMatrix::identity(3)).empty());
}

TEST_CASE("direct sums and principal submatrices") {
  const std::vector<IntMatrix> blocks = {IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{-2}}};
  const IntMatrix s = direct_sum(blocks);
  CHECK(s == IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -2}});
  const std::vector<std::size_t> idx = {2, 0};
  CHECK(s.principal(idx) == IntMatrix{{-2, 0}, {0, 0}});
}
