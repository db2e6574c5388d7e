#include "k3/lattice.hpp"

#include <cctype>
#include <stdexcept>

namespace k3 {

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  LatticeExpr parse() {
    LatticeExpr e;
    skip_ws();
    if (at_end()) fail("empty lattice expression");
    e.terms.push_back(term());
    skip_ws();
    while (!at_end()) {
      if (s_[pos_] != '+') fail(std::string("unexpected character '") + s_[pos_] + "'");
      ++pos_;
      skip_ws();
      e.terms.push_back(term());
      skip_ws();
    }
    return e;
  }

 private:
  LatticeTerm term() {
    LatticeTerm t;
    t.offset = pos_;
    if (at_end()) fail("expected a lattice atom");
    const char c = s_[pos_];
    switch (c) {
      case 'U':
        t.atom = Atom::U;
        ++pos_;
        break;
      case 'A':
      case 'D':
      case 'E': {
        ++pos_;
        t.atom = c == 'A' ? Atom::A : c == 'D' ? Atom::D : Atom::E;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail(std::string("atom ") + c + " needs an index");
        const std::size_t at = pos_;
        const unsigned long n = small_uint();
        if (t.atom == Atom::A && n < 1) fail_at("A_l needs l >= 1", at);
        if (t.atom == Atom::D && n < 4) fail_at("D_m needs m >= 4", at);
        if (t.atom == Atom::E && (n < 6 || n > 8)) fail_at("E_n needs n in {6,7,8}", at);
        t.index = static_cast<unsigned>(n);
        break;
      }
      default:
        fail(std::string("unknown lattice atom '") + c + "'");
    }
    skip_ws();
    if (!at_end() && s_[pos_] == '(') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      t.twist = signed_int();
      if (t.twist == 0) fail_at("twist must be nonzero", at);
      skip_ws();
      if (at_end() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      skip_ws();
    }
    if (!at_end() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a power");
      const unsigned long k = small_uint();
      if (k < 1) fail_at("power must be >= 1", at);
      t.power = static_cast<unsigned>(k);
    }
    return t;
  }

  unsigned long small_uint() {
    const std::size_t start = pos_;
    unsigned long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > kMaxLatticeRank) fail_at("integer too large", start);
      ++pos_;
    }
    return v;
  }

  Integer signed_int() {
    const std::size_t start = pos_;
    bool neg = false;
    if (!at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail_at("expected an integer", start);
    Integer v(std::string(s_.substr(digits, pos_ - digits)));
    return neg ? Integer(-v) : v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at, 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LatticeExpr parse_lattice_expr(std::string_view text) { return ExprParser(text).parse(); }

std::string atom_name(const LatticeTerm& t) {
  std::string s;
  switch (t.atom) {
    case Atom::U: s = "U"; break;
    case Atom::A: s = "A" + std::to_string(t.index); break;
    case Atom::D: s = "D" + std::to_string(t.index); break;
    case Atom::E: s = "E" + std::to_string(t.index); break;
  }
  if (t.twist != 1) s += "(" + t.twist.get_str() + ")";
  return s;
}

std::string to_string(const LatticeExpr& e) {
  std::string s;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    if (i) s += "+";
    s += atom_name(e.terms[i]);
    if (e.terms[i].power != 1) s += "^" + std::to_string(e.terms[i].power);
  }
  return s;
}

bool GramLattice::is_even() const {
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (!mpz_even_p(gram(i, i).get_mpz_t())) return false;
  return true;
}

IntMatrix root_gram(Atom atom, unsigned n) {
  if (atom == Atom::U) return IntMatrix{{0, 1}, {1, 0}};
  if ((atom == Atom::A && n < 1) || (atom == Atom::D && n < 4) ||
      (atom == Atom::E && (n < 6 || n > 8)))
    throw std::invalid_argument("root_gram: index out of range");
  IntMatrix g(n, n);
  for (unsigned i = 0; i < n; ++i) g(i, i) = -2;
  auto join = [&](unsigned a, unsigned b) { g(a, b) = g(b, a) = 1; };
  switch (atom) {
    case Atom::A:
      for (unsigned i = 0; i + 1 < n; ++i) join(i, i + 1);
      break;
    case Atom::D:
      for (unsigned i = 0; i + 2 < n; ++i) join(i, i + 1);
      join(n - 1, n - 3);
      break;
    case Atom::E:
      for (unsigned i = 0; i + 2 < n; ++i) join(i, i + 1);
      join(n - 1, 2);
      break;
    case Atom::U:
      break;
  }
  return g;
}

GramLattice gram(const LatticeExpr& e) {
  std::size_t total = 0;
  for (const auto& t : e.terms) {
    const std::size_t block = t.atom == Atom::U ? 2 : t.index;
    total += block * t.power;
    if (total > kMaxLatticeRank) throw std::length_error("lattice expression exceeds the rank limit");
  }
  GramLattice out;
  out.gram = IntMatrix(total, total);
  out.labels.reserve(total);
  std::size_t offset = 0;
  std::size_t summand = 0;
  for (const auto& t : e.terms) {
    const IntMatrix block = t.twist * root_gram(t.atom, t.index);
    const std::string name = atom_name(t);
    for (unsigned copy = 0; copy < t.power; ++copy, ++summand) {
      for (std::size_t i = 0; i < block.rows(); ++i) {
        for (std::size_t j = 0; j < block.cols(); ++j) out.gram(offset + i, offset + j) = block(i, j);
        const std::string node = t.atom == Atom::U ? (i == 0 ? "e" : "f") : std::to_string(i);
        out.labels.push_back(std::to_string(summand) + "." + name + "." + node);
      }
      offset += block.rows();
    }
  }
  return out;
}

GramLattice gram(std::string_view text) { return gram(parse_lattice_expr(text)); }

std::vector<Integer> discriminant_group(const GramLattice& l) {
  const auto snf = smith_normal_form(l.gram);
  std::vector<Integer> out;
  for (const auto& d : snf.invariants()) {
    if (d == 0) throw std::domain_error("discriminant group of a degenerate lattice");
    if (d > 1) out.push_back(d);
  }
  return out;
}

std::vector<DiscriminantGenerator> discriminant_generators(const GramLattice& l) {
  // With U G V = D, the columns V e_i / d_i satisfy G x = U^{-1} e_i, which is
  // integral; they generate L*/L with orders d_i.
  const auto snf = smith_normal_form(l.gram);
  const auto inv = snf.invariants();
  std::vector<DiscriminantGenerator> out;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (inv[i] == 0) throw std::domain_error("discriminant group of a degenerate lattice");
    if (inv[i] == 1) continue;
    DiscriminantGenerator g;
    g.order = inv[i];
    g.lift.resize(l.rank());
    for (std::size_t r = 0; r < l.rank(); ++r) {
      g.lift[r] = Rational(snf.v(r, i), inv[i]);
      g.lift[r].canonicalize();
    }
    out.push_back(std::move(g));
  }
  return out;
}

Rational discriminant_quadratic_value(const IntMatrix& g, const std::vector<Rational>& x) {
  if (g.rows() != x.size() || !g.is_square())
    throw std::invalid_argument("discriminant_quadratic_value: dimension mismatch");
  Rational q = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (g(i, j) != 0 && x[j] != 0) row += g(i, j) * x[j];
    q += x[i] * row;
  }
  // Reduce into [0, 2).
  Rational half = q / 2;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  q -= 2 * Rational(fl);
  return q;
}

TwoElementaryInvariants two_elementary_invariants(const GramLattice& l) {
  if (!l.gram.is_symmetric()) throw std::domain_error("Gram matrix is not symmetric");
  if (!l.is_even()) throw std::domain_error("lattice is not even");
  const auto gens = discriminant_generators(l);
  TwoElementaryInvariants t;
  t.rank = l.rank();
  for (const auto& g : gens) {
    if (g.order != 2) throw std::domain_error("discriminant group is not 2-elementary (order " +
                                              g.order.get_str() + ")");
    ++t.a;
    // q takes integer values on all of L*/L iff it does on each generator,
    // because 2 b(x, y) is integral for a 2-elementary form.
    const Rational q = discriminant_quadratic_value(l.gram, g.lift);
    if (q.get_den() != 1) t.delta = 1;
  }
  return t;
}

unsigned fixed_locus_component_count(long rank, long a) {
  if (a < 0 || rank < a) throw std::invalid_argument("need 0 <= a <= rank");
  if ((rank + a) % 2 != 0) throw std::invalid_argument("rank + a must be even");
  return static_cast<unsigned>((rank - a + 2) / 2);
}

}  // namespace k3
