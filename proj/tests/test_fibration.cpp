#include "doctest.h"
#include "k3/cases.hpp"
#include "k3/fibration.hpp"

using namespace k3;

namespace {

// Inverse of the negated intersection matrix of the non-identity
// components, by rational Gauss-Jordan.
Rational inverse_entry(const CurveConfig& cfg, const KodairaFiber& f, std::size_t o, std::size_t p, std::size_t q) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < f.components.size(); ++i)
    if (i != o) keep.push_back(i);
  const std::size_t n = keep.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = -Rational(cfg.meet(f.components[keep[i]], f.components[keep[j]]));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    const Rational d = a[c][c];
    for (auto& x : a[c]) x /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational m = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= m * a[c][j];
    }
  }
  auto at = [&](std::size_t x) {
    return static_cast<std::size_t>(std::find(keep.begin(), keep.end(), x) - keep.begin());
  };
  return a[at(p)][n + at(q)];
}

CurveConfig cycle_config(std::size_t n) {
  CurveConfig c;
  for (std::size_t i = 0; i < n; ++i) c.add_curve("x" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) c.set_meet(i, (i + 1) % n, 1);
  return c;
}

CurveConfig dstar_config(std::size_t b) {
  CurveConfig c;
  for (std::size_t i = 0; i <= b; ++i) c.add_curve("y" + std::to_string(i));
  for (const char* l : {"a1", "a2", "b1", "b2"}) c.add_curve(l);
  for (std::size_t i = 0; i < b; ++i) c.set_meet(i, i + 1, 1);
  c.set_meet("y0", "a1", 1);
  c.set_meet("y0", "a2", 1);
  c.set_meet("y" + std::to_string(b), "b1", 1);
  c.set_meet("y" + std::to_string(b), "b2", 1);
  return c;
}

CurveConfig e6_config() {
  CurveConfig c({"x0", "x1", "x2", "x3", "x4", "x5", "x6"});
  c.set_meet("x0", "x1", 1);
  c.set_meet("x1", "x2", 1);
  c.set_meet("x0", "x3", 1);
  c.set_meet("x3", "x4", 1);
  c.set_meet("x0", "x5", 1);
  c.set_meet("x5", "x6", 1);
  return c;
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<std::size_t> simple_positions(const KodairaFiber& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.components.size(); ++i)
    if (f.multiplicities[i] == 1) out.push_back(i);
  return out;
}

// I4 fiber x0..x3 with sections O on x0 and P on x2, plus the fiber class itself.
struct I4Model {
  CurveConfig cfg;
  FibrationModel model;
};

I4Model i4_model(bool complete) {
  I4Model m;
  m.cfg = cycle_config(4);
  m.cfg.add_curve("O");
  m.cfg.add_curve("P");
  m.cfg.set_meet("O", "x0", 1);
  m.cfg.set_meet("P", "x2", 1);
  const DivisorClass f(m.cfg, {{"x0", 1}, {"x1", 1}, {"x2", 1}, {"x3", 1}});
  m.model.rho = 10;
  m.model.fiber_label = "F";
  m.model.fiber_class = f;
  m.model.zero_section = "O";
  m.model.sections = {"O", "P"};
  m.model.reducible.push_back(ReducibleFiber{"F", "I4", f, 0, {}});
  m.model.fibers_complete = complete;
  return m;
}

}  // namespace

TEST_CASE("Shioda-Tate rank") {
  CHECK(shioda_tate_rank(20, {9, 9}) == 2);
  CHECK(shioda_tate_rank(20, {9, 9, 2}) == 1);
  CHECK(shioda_tate_rank(12, {}) == 10);
  CHECK(shioda_tate_rank(12, {4}) == 7);
  CHECK_THROWS_AS(shioda_tate_rank(4, {9}), std::domain_error);
  CHECK_THROWS_AS(shioda_tate_rank(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(shioda_tate_rank(10, {0}), std::invalid_argument);
}

TEST_CASE("evidence kind names") {
  for (auto k : {EvidenceKind::ShiodaTate, EvidenceKind::Lemma54Case1, EvidenceKind::Lemma54Case2,
                 EvidenceKind::HeightPositive, EvidenceKind::AdditiveSameComponent})
    CHECK(evidence_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(evidence_kind_from_string("case3"), std::invalid_argument);
}

TEST_CASE("local contributions match the inverse Cartan matrix") {
  std::vector<std::pair<CurveConfig, KodairaFiber>> fibers;
  for (std::size_t n = 2; n <= 9; ++n) {
    CurveConfig c = n == 2 ? CurveConfig({"x0", "x1"}) : cycle_config(n);
    if (n == 2) c.set_meet("x0", "x1", 2);
    fibers.emplace_back(c, classify_fiber(c, iota(c.size())));
  }
  for (std::size_t b = 1; b <= 6; ++b) {
    const CurveConfig c = dstar_config(b);
    fibers.emplace_back(c, classify_fiber(c, iota(c.size())));
  }
  fibers.emplace_back(e6_config(), classify_fiber(e6_config(), iota(7)));
  for (const auto& [cfg, f] : fibers) {
    CAPTURE(f.label());
    const auto simple = simple_positions(f);
    for (auto o : simple)
      for (auto p : simple)
        for (auto q : simple) {
          const Rational c = local_contribution(f, o, p, q);
          CHECK(c == local_contribution(f, o, q, p));
          if (p == o || q == o) {
            CHECK(c == 0);
          } else {
            CHECK(c == inverse_entry(cfg, f, o, p, q));
          }
        }
  }
}

TEST_CASE("local contribution rejects non-reduced components") {
  const CurveConfig c = dstar_config(2);
  const KodairaFiber f = classify_fiber(c, iota(c.size()));
  CHECK_THROWS_AS(local_contribution(f, 0, 2, 2), ValidationError);
  CHECK_THROWS_AS(local_contribution(f, 0, 99, 1), std::out_of_range);
}

TEST_CASE("height pairing on an I4 model") {
  I4Model m = i4_model(true);
  const auto fibers = resolve(m.cfg, m.model);
  REQUIRE(fibers.size() == 1);
  CHECK(m.cfg.name(fibers[0].incidence.at("P")) == "x2");
  CHECK(height_pairing(m.cfg, m.model, fibers, "P") == 3);
  CHECK(height_pairing(m.cfg, m.model, fibers, "O") == 0);
  CHECK(height_pairing(m.cfg, m.model, fibers, "P", "O") == 0);
  const EvidenceOutcome ev = infinite_order_certificate(m.cfg, m.model, fibers, "P");
  REQUIRE(ev);
  CHECK(ev.evidence->kind == EvidenceKind::HeightPositive);
  CHECK(ev.evidence->detail == "<P,P> = 3");
  CHECK_THROWS_AS(infinite_order_certificate(m.cfg, m.model, fibers, "O"), std::invalid_argument);
  CHECK_THROWS_AS(height_pairing(m.cfg, m.model, fibers, "x1"), ValidationError);

  // A fiber with unknown components leaves the height undefined.
  m.model.reducible.push_back(ReducibleFiber{"extra", "I2", std::nullopt, 2, {}});
  const auto more = resolve(m.cfg, m.model);
  CHECK(more[1].component_count == 2);
  CHECK_THROWS_AS(height_pairing(m.cfg, m.model, more, "P"), ValidationError);
  CHECK_FALSE(infinite_order_certificate(m.cfg, m.model, more, "P"));
}

TEST_CASE("height evidence needs a complete fiber list") {
  const I4Model m = i4_model(false);
  const auto fibers = resolve(m.cfg, m.model);
  const EvidenceOutcome ev = infinite_order_certificate(m.cfg, m.model, fibers, "P");
  CHECK_FALSE(ev);
  CHECK(ev.failure.find("not declared complete") != std::string::npos);
}

TEST_CASE("additive fiber with P and O on one component") {
  CurveConfig c = dstar_config(2);
  c.add_curve("O");
  c.add_curve("P");
  c.set_meet("O", "a1", 1);
  c.set_meet("P", "a1", 1);
  FibrationModel model;
  model.rho = 12;
  const KodairaFiber f = classify_fiber(c, std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
  DivisorClass d(c.size());
  for (std::size_t i = 0; i < f.components.size(); ++i) d[f.components[i]] = f.multiplicities[i];
  model.fiber_label = "F";
  model.fiber_class = d;
  model.zero_section = "O";
  model.sections = {"O", "P"};
  model.reducible.push_back(ReducibleFiber{"F", "I2*", d, 0, {}});
  const auto fibers = resolve(c, model);
  const EvidenceOutcome ev = infinite_order_certificate(c, model, fibers, "P");
  REQUIRE(ev);
  CHECK(ev.evidence->kind == EvidenceKind::AdditiveSameComponent);
}

TEST_CASE("resolve rejects inconsistent models") {
  I4Model m = i4_model(true);
  m.model.reducible[0].section_meets["P"] = "x1";
  CHECK_THROWS_AS(resolve(m.cfg, m.model), ValidationError);

  m = i4_model(true);
  m.model.zero_section = "Q";
  CHECK_THROWS_AS(resolve(m.cfg, m.model), ValidationError);

  m = i4_model(true);
  m.cfg.set_meet("P", "x3", 1);
  CHECK_THROWS_AS(resolve(m.cfg, m.model), ValidationError);
}

TEST_CASE("fixed-curve criterion on a synthetic cycle") {
  // C1, C2 fixed; the I4 cycle C1 H1 C2 H2 contains both.
  CurveConfig c({"C1", "C2", "H1", "H2", "G1", "G2"});
  for (const char* h : {"H1", "H2"}) {
    c.set_meet("C1", h, 1);
    c.set_meet("C2", h, 1);
  }
  const DivisorClass e(c, {{"C1", 1}, {"C2", 1}, {"H1", 1}, {"H2", 1}});
  auto one = lemma54_check(e, c, {"C1", "C2"}, 12);
  REQUIRE(one);
  CHECK(one.evidence->kind == EvidenceKind::Lemma54Case1);
  CHECK_FALSE(lemma54_check(e, c, {"C1", "C2"}, 5));
  CHECK(lemma54_check(e, c, {"C1", "C2"}, 6));

  // The I2 G1 + G2 misses both fixed curves; with C1 alone fixed it is case 2.
  c.set_meet("G1", "G2", 2);
  const DivisorClass g(c, {{"G1", 1}, {"G2", 1}});
  auto neither = lemma54_check(g, c, {"C1", "C2"}, 12);
  CHECK_FALSE(neither);
  CHECK(neither.failure.find("neither k nor k-1") != std::string::npos);
  auto two = lemma54_check(g, c, {"C1"}, 12);
  REQUIRE(two);
  CHECK(two.evidence->kind == EvidenceKind::Lemma54Case2);
  CHECK_FALSE(lemma54_check(g, c, {"C1"}, 4));
  CHECK(lemma54_check(g, c, {"C1"}, 5));

  c.set_meet("C1", "G1", 1);
  auto touching = lemma54_check(g, c, {"C1"}, 12);
  CHECK_FALSE(touching);
  CHECK(touching.failure.find("C_i.E = 0 fails") != std::string::npos);

  CHECK_THROWS_AS(lemma54_check(DivisorClass(c, {{"H1", 1}}), c, {"C1"}, 12), ValidationError);
}

TEST_CASE("two-fibration certificate on the rank 12 record") {
  const CaseRecord rec = select_cases(builtin_cases(), "rho12", std::nullopt).at(0);
  const CurveConfig& cfg = rec.config.cfg;
  auto make = [&](const CandidateSpec& s) {
    FibrationCandidate f;
    f.label = s.divisor;
    f.e = rec.config.divisor(s.divisor);
    f.r = s.r;
    f.a = s.a;
    f.b = s.b;
    f.evidence = MWEvidence{s.plan, ""};
    return f;
  };
  const FibrationCandidate e1 = make(rec.candidates[0]);
  const FibrationCandidate e2 = make(rec.candidates[1]);
  CHECK(pairing(e1.e, e1.e, cfg) == 0);
  CHECK(pairing(e2.e, e2.e, cfg) == 0);
  CHECK(pairing(e1.e, e2.e, cfg) == 2);

  const Cor36Report forward = cor36_verify(e1, e2, rec.pivot, rec.witness, cfg);
  const Cor36Report backward = cor36_verify(e2, e1, rec.pivot, rec.witness, cfg);
  CHECK(forward.pass);
  CHECK(backward.pass);
  CHECK(forward.first_failure().empty());
  REQUIRE(forward.clauses.size() == 5);
  CHECK(forward.clauses[2].detail == "E1.E2 = 2");

  const Cor36Report same = cor36_verify(e1, e1, rec.pivot, rec.witness, cfg);
  CHECK_FALSE(same.pass);
  CHECK(same.first_failure() == "c");

  FibrationCandidate bad = e1;
  bad.evidence.reset();
  bad.evidence_failure = "none";
  CHECK(cor36_verify(bad, e2, rec.pivot, rec.witness, cfg).first_failure() == "b");

  FibrationCandidate neg = e1;
  neg.a = 0;
  CHECK_THROWS_AS(cor36_verify(neg, e2, rec.pivot, rec.witness, cfg), ValidationError);
  FibrationCandidate heavy = e1;
  heavy.b = 5;
  CHECK_THROWS_AS(cor36_verify(heavy, e2, rec.pivot, rec.witness, cfg), ValidationError);
}
