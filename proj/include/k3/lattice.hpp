#pragma once

// Even lattices given by Gram matrices.
//
// Expression grammar (whitespace between tokens is ignored):
//   expr  := term ('+' term)*
//   term  := atom twist? power?
//   atom  := 'U' | 'A' int | 'D' int | 'E' int
//   twist := '(' int ')'
//   power := '^' int
//
// Root lattices are negative definite. Basis order inside each block:
//   U    e, f with e.f = 1
//   A_l  chain 0 - 1 - ... - (l-1)
//   D_m  chain 0 - ... - (m-2), node m-1 attached to node m-3
//   E_n  chain 0 - ... - (n-2), node n-1 attached to node 2
// Basis labels are "<summand>.<atom>.<node>", summands numbered from 0 after
// powers are expanded, e.g. "0.U.e", "3.A1.0", "1.D4(2).3".

#include "k3/errors.hpp"
#include "k3/linalg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace k3 {

enum class Atom { U, A, D, E };

struct LatticeTerm {
  Atom atom = Atom::U;
  unsigned index = 0;  ///< l, m or n; unused for U
  Integer twist = 1;
  unsigned power = 1;
  std::size_t offset = 0;  ///< byte offset of the atom in the source text

  friend bool operator==(const LatticeTerm& a, const LatticeTerm& b) {
    return a.atom == b.atom && a.index == b.index && a.twist == b.twist && a.power == b.power;
  }
};

struct LatticeExpr {
  std::vector<LatticeTerm> terms;
  friend bool operator==(const LatticeExpr&, const LatticeExpr&) = default;
};

/// Throws ParseError carrying the byte offset of the problem.
LatticeExpr parse_lattice_expr(std::string_view text);

/// Canonical text: "U(2)+A1^9".
std::string to_string(const LatticeExpr& e);
std::string atom_name(const LatticeTerm& t);

/// Largest total rank a single expression may expand to.
inline constexpr std::size_t kMaxLatticeRank = 4096;

struct GramLattice {
  IntMatrix gram;
  std::vector<std::string> labels;

  std::size_t rank() const { return gram.rows(); }
  bool is_even() const;
};

/// Negative-definite Dynkin Gram matrix (A: l>=1, D: m>=4, E: n in {6,7,8}).
IntMatrix root_gram(Atom atom, unsigned index);

/// Throws std::length_error if the expansion exceeds kMaxLatticeRank.
GramLattice gram(const LatticeExpr& e);
GramLattice gram(std::string_view text);

/// Elementary divisors > 1 of the Gram matrix, ascending. Throws
/// std::domain_error for a degenerate lattice.
std::vector<Integer> discriminant_group(const GramLattice& l);

/// A generator of L*/L: its cyclic order and a rational lift in basis
/// coordinates (so gram * lift is integral).
struct DiscriminantGenerator {
  Integer order;
  std::vector<Rational> lift;
};

std::vector<DiscriminantGenerator> discriminant_generators(const GramLattice& l);

/// x^T G x reduced into [0, 2).
Rational discriminant_quadratic_value(const IntMatrix& gram, const std::vector<Rational>& x);

struct TwoElementaryInvariants {
  std::size_t rank = 0;
  std::size_t a = 0;
  int delta = 0;
  friend bool operator==(const TwoElementaryInvariants&, const TwoElementaryInvariants&) = default;
};

/// Throws std::domain_error when L is odd, degenerate, or L*/L is not an
/// elementary abelian 2-group.
TwoElementaryInvariants two_elementary_invariants(const GramLattice& l);

/// (rank - a + 2) / 2; throws std::invalid_argument on parity or range violations.
unsigned fixed_locus_component_count(long rank, long a);

}  // namespace k3
