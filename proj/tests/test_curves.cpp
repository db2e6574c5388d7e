#include "doctest.h"
#include "k3/curves.hpp"

using namespace k3;

namespace {

std::string nm(const std::string& p, std::size_t i) { return p + std::to_string(i); }

// Star with arms of the given lengths around the node "x0".
CurveConfig star(const std::vector<std::size_t>& arms) {
  CurveConfig c;
  c.add_curve("x0");
  std::size_t next = 1;
  for (std::size_t len : arms) {
    std::string prev = "x0";
    for (std::size_t k = 0; k < len; ++k) {
      const std::string cur = nm("x", next++);
      c.add_curve(cur);
      c.set_meet(prev, cur, 1);
      prev = cur;
    }
  }
  return c;
}

CurveConfig cycle(std::size_t n) {
  CurveConfig c;
  for (std::size_t i = 0; i < n; ++i) c.add_curve(nm("x", i));
  if (n == 2) {
    c.set_meet("x0", "x1", 2);
  } else {
    for (std::size_t i = 0; i < n; ++i) c.set_meet(nm("x", i), nm("x", (i + 1) % n), 1);
  }
  return c;
}

// Affine D_{b+4}: chain y0..yb with two leaves at each end.
CurveConfig dstar(std::size_t b) {
  CurveConfig c;
  for (std::size_t i = 0; i <= b; ++i) c.add_curve(nm("y", i));
  for (const char* l : {"a1", "a2", "b1", "b2"}) c.add_curve(l);
  for (std::size_t i = 0; i < b; ++i) c.set_meet(nm("y", i), nm("y", i + 1), 1);
  if (b == 0) {
    for (const char* l : {"a1", "a2", "b1", "b2"}) c.set_meet("y0", l, 1);
  } else {
    c.set_meet("y0", "a1", 1);
    c.set_meet("y0", "a2", 1);
    c.set_meet(nm("y", b), "b1", 1);
    c.set_meet(nm("y", b), "b2", 1);
  }
  return c;
}

std::vector<std::size_t> all(const CurveConfig& c) {
  std::vector<std::size_t> v(c.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

DivisorClass with_multiplicities(const CurveConfig& c, const KodairaFiber& f) {
  DivisorClass d(c.size());
  for (std::size_t i = 0; i < f.components.size(); ++i) d[f.components[i]] = f.multiplicities[i];
  return d;
}

}  // namespace

TEST_CASE("curve configurations") {
  CurveConfig c({"A", "B"});
  c.add_curve("C");
  c.set_meet("A", "B", 1);
  CHECK(c.meet("B", "A") == 1);
  CHECK(c.meet("A", "A") == -2);
  CHECK(c.meet("A", "C") == 0);
  CHECK_THROWS_AS(c.add_curve("A"), ValidationError);
  CHECK_THROWS_AS(c.set_meet("A", "A", 1), ValidationError);
  CHECK_THROWS_AS(c.set_meet("A", "B", -1), ValidationError);
  CHECK_THROWS_AS(c.index("Z"), ValidationError);
  CHECK_FALSE(c.find("Z").has_value());
  CHECK(c.restricted({2, 0}) == IntMatrix{{-2, 0}, {0, -2}});
}

TEST_CASE("divisors and pairing") {
  CurveConfig c({"A", "B", "C"});
  c.set_meet("A", "B", 1);
  c.set_meet("B", "C", 1);
  const DivisorClass d(c, {{"A", 1}, {"B", 2}, {"C", 1}});
  CHECK(d.to_string(c) == "A + 2 B + C");
  CHECK(d.support() == std::vector<std::size_t>{0, 1, 2});
  CHECK(d.is_effective());
  CHECK(pairing(d, d, c) == -2 - 8 - 2 + 2 * (2 + 2));
  CHECK(pairing(d, DivisorClass::curve(c, "B"), c) == 1 + 2 * -2 + 1);
  CHECK((d - d).is_zero());
  CHECK_FALSE((DivisorClass::curve(c, "A") - d).is_effective());
  CHECK_THROWS_AS(pairing(d, DivisorClass(2), c), std::invalid_argument);
  CHECK(is_connected(c, {0, 1, 2}));
  CHECK_FALSE(is_connected(c, {0, 2}));
}

TEST_CASE("cycles are I_n") {
  for (std::size_t n = 2; n <= 18; ++n) {
    CAPTURE(n);
    const CurveConfig c = cycle(n);
    const KodairaFiber f = classify_fiber(c, all(c));
    CHECK(f.kind == FiberKind::In);
    CHECK(f.n == n);
    CHECK(f.component_count() == n);
    CHECK_FALSE(f.additive());
    for (const auto& m : f.multiplicities) CHECK(m == 1);
    // canonical order walks the cycle
    for (std::size_t i = 0; i + 1 < n && n > 2; ++i) CHECK(c.meet(f.components[i], f.components[i + 1]) == 1);
    CHECK(component_group(f).order() == n);
    CHECK(root_lattice_of(f).atom == Atom::A);
    CHECK(root_lattice_of(f).index == n - 1);
    const auto verdict = is_fiber_class(with_multiplicities(c, f), c);
    CHECK(verdict.ok);
    CHECK(verdict.self_intersection == 0);
  }
  CHECK(classify_fiber(cycle(2), all(cycle(2))).label() == "I2/III");
  CHECK(classify_fiber(cycle(3), all(cycle(3))).label() == "I3/IV");
  CHECK(classify_fiber(cycle(6), all(cycle(6))).label() == "I6");
}

TEST_CASE("affine D is I_b*") {
  for (std::size_t b = 0; b <= 14; ++b) {
    CAPTURE(b);
    const CurveConfig c = dstar(b);
    const KodairaFiber f = classify_fiber(c, all(c));
    CHECK(f.kind == FiberKind::InStar);
    CHECK(f.n == b);
    CHECK(f.component_count() == b + 5);
    CHECK(f.label() == "I" + std::to_string(b) + "*");
    if (b > 0) {
      std::vector<Integer> expect(b + 5, 2);
      expect[0] = expect[1] = expect[b + 3] = expect[b + 4] = 1;
      CHECK(f.multiplicities == expect);
    }
    const ComponentGroup g = component_group(f);
    CHECK(g.order() == 4);
    CHECK(g.to_string() == (b % 2 == 0 ? "(Z/2)^2" : "Z/4"));
    CHECK(root_lattice_of(f).atom == Atom::D);
    CHECK(root_lattice_of(f).index == b + 4);
    CHECK(is_fiber_class(with_multiplicities(c, f), c).ok);
  }
}

TEST_CASE("exceptional fibers") {
  struct Row {
    std::vector<std::size_t> arms;
    FiberKind kind;
    const char* label;
    unsigned group;
    unsigned e;
  };
  const Row rows[] = {{{2, 2, 2}, FiberKind::IVStar, "IV*", 3, 6},
                      {{3, 3, 1}, FiberKind::IIIStar, "III*", 2, 7},
                      {{1, 2, 5}, FiberKind::IIStar, "II*", 1, 8}};
  for (const Row& r : rows) {
    CAPTURE(r.label);
    const CurveConfig c = star(r.arms);
    const KodairaFiber f = classify_fiber(c, all(c));
    CHECK(f.kind == r.kind);
    CHECK(f.label() == r.label);
    CHECK(f.component_count() == component_count_of_label(r.label));
    CHECK(f.components[0] == 0);
    CHECK(component_group(f).order() == r.group);
    CHECK(root_lattice_of(f).atom == Atom::E);
    CHECK(root_lattice_of(f).index == r.e);
    CHECK(f.multiplicities[0] == (r.e == 6 ? 3 : r.e == 7 ? 4 : 6));
    CHECK(is_fiber_class(with_multiplicities(c, f), c).ok);
  }
  CHECK(component_group(classify_fiber(star({2, 2, 2}), all(star({2, 2, 2})))).to_string() == "Z/3");
  CHECK(component_group(classify_fiber(star({1, 2, 5}), all(star({1, 2, 5})))).to_string() == "trivial");
}

TEST_CASE("component group order equals the root lattice discriminant") {
  std::vector<std::pair<CurveConfig, KodairaFiber>> fibers;
  for (std::size_t n = 2; n <= 9; ++n) fibers.emplace_back(cycle(n), classify_fiber(cycle(n), all(cycle(n))));
  for (std::size_t b = 0; b <= 6; ++b) fibers.emplace_back(dstar(b), classify_fiber(dstar(b), all(dstar(b))));
  for (const auto& arms : {std::vector<std::size_t>{2, 2, 2}, {3, 3, 1}, {1, 2, 5}})
    fibers.emplace_back(star(arms), classify_fiber(star(arms), all(star(arms))));
  for (const auto& [c, f] : fibers) {
    CAPTURE(f.label());
    const LatticeTerm t = root_lattice_of(f);
    LatticeExpr e;
    e.terms.push_back(t);
    Integer order = 1;
    for (const auto& d : discriminant_group(gram(e))) order *= d;
    CHECK(order == component_group(f).order());
  }
}

TEST_CASE("non-fibers are rejected") {
  // finite A3 chain
  CurveConfig chain({"p", "q", "r"});
  chain.set_meet("p", "q", 1);
  chain.set_meet("q", "r", 1);
  CHECK_THROWS_AS(classify_fiber(chain, all(chain)), ValidationError);
  CHECK_THROWS_AS(classify_fiber(chain, std::vector<std::size_t>{0, 2}), ValidationError);
  CHECK_THROWS_AS(classify_fiber(chain, std::vector<std::size_t>{}), ValidationError);

  // E8 alone is finite type, so it is not a fiber either
  CurveConfig e8 = star({1, 2, 4});
  CHECK_THROWS_AS(classify_fiber(e8, all(e8)), ValidationError);

  // wrong multiplicities on an I4
  const CurveConfig c = cycle(4);
  DivisorClass d(c, {{"x0", 1}, {"x1", 2}, {"x2", 1}, {"x3", 1}});
  const FiberVerdict v = is_fiber_class(d, c);
  CHECK_FALSE(v.ok);
  CHECK(v.self_intersection != 0);
  CHECK_FALSE(v.diagnostic.empty());
  CHECK_THROWS_AS(is_fiber_class(DivisorClass(c, {{"x0", -1}}), c), std::invalid_argument);

  // a multiple of a fiber is not primitive
  const FiberVerdict twice = is_fiber_class(DivisorClass(c, {{"x0", 2}, {"x1", 2}, {"x2", 2}, {"x3", 2}}), c);
  CHECK_FALSE(twice.ok);
}

TEST_CASE("fiber labels") {
  CHECK(component_count_of_label("I4") == 4);
  CHECK(component_count_of_label("I12*") == 17);
  CHECK(component_count_of_label("I0*") == 5);
  CHECK(component_count_of_label("III") == 2);
  CHECK(component_count_of_label("IV") == 3);
  CHECK(component_count_of_label("II*") == 9);
  CHECK_THROWS_AS(component_count_of_label("I"), std::invalid_argument);
  CHECK_THROWS_AS(component_count_of_label("V*"), std::invalid_argument);
  const KodairaFiber f = classify_fiber(cycle(2), all(cycle(2)));
  CHECK(label_matches(f, "I2"));
  CHECK(label_matches(f, "III"));
  CHECK_FALSE(label_matches(f, "I3"));
}

TEST_CASE("fixed curve constraints") {
  // Two fixed curves C1, C2 and an I2 fiber H1 + H2 meeting each of them twice.
  CurveConfig c({"C1", "C2", "H1", "H2"});
  c.set_meet("H1", "H2", 2);
  c.set_meet("C1", "H1", 1);
  c.set_meet("C1", "H2", 1);
  c.set_meet("C2", "H1", 1);
  c.set_meet("C2", "H2", 1);
  const DivisorClass f(c, {{"H1", 1}, {"H2", 1}});
  CHECK(theta_violations(c, {"C1", "C2"}, {{"F", f}}).empty());

  c.set_meet("C1", "C2", 1);
  const auto v = theta_violations(c, {"C1", "C2"}, {});
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "fixed curves C1 and C2 meet");

  c.set_meet("C1", "C2", 0);
  c.set_meet("C2", "H2", 0);
  const auto w = theta_violations(c, {"C1", "C2"}, {{"F", f}});
  CHECK(w.size() == 2);
  CHECK(w[0] == "C.H2 = 1, expected 2");
}
