#include "doctest.h"
#include "k3/cases.hpp"
#include "k3/verify.hpp"
#include "oracles.hpp"

using namespace k3;

namespace {

const CaseRecord& row(const std::vector<CaseRecord>& all, const std::string& name) {
  for (const auto& r : all)
    if (r.row_name() == name) return r;
  throw std::out_of_range(name);
}

std::vector<std::string> statuses(const CaseReport& rep) {
  std::vector<std::string> out;
  for (const auto& c : rep.checks) out.push_back(c.name + "=" + to_string(c.status));
  return out;
}

}  // namespace

TEST_CASE("built-in rows in canonical order") {
  const auto all = builtin_cases();
  std::vector<std::string> names;
  for (const auto& r : all) names.push_back(r.row_name());
  CHECK(names == std::vector<std::string>{"rho11[t=0]", "rho11[t=1]", "rho11[t=2]", "rho12", "rho13", "rho14",
                                          "rho15", "rho16", "rho17", "rho18-delta0", "rho18-delta1", "rho19",
                                          "rho20", "singular-k3[variant=none]", "singular-k3[variant=I2]",
                                          "singular-k3[variant=III]"});
}

TEST_CASE("record invariants") {
  for (const auto& r : builtin_cases()) {
    CAPTURE(r.row_name());
    CHECK(r.candidates.size() == 2);
    const auto& cfg = r.config.cfg;
    for (const auto& c : r.candidates) {
      const DivisorClass& e = r.config.divisor(c.divisor);
      CHECK(pairing(e, e, cfg) == 0);
    }
    if (r.triple) {
      const auto inv = two_elementary_invariants(gram(r.lattice));
      CHECK(static_cast<long>(inv.rank) == (*r.triple)[0]);
      CHECK(static_cast<long>(inv.a) == (*r.triple)[1]);
      CHECK(inv.delta == (*r.triple)[2]);
      REQUIRE(r.k.has_value());
      CHECK(*r.k == static_cast<long>(r.fixed.size()));
      CHECK(fixed_locus_component_count((*r.triple)[0], (*r.triple)[1]) == *r.k);
    }
    std::vector<std::pair<std::string, DivisorClass>> fibers;
    if (r.phi)
      for (const auto& rf : r.phi->second.reducible)
        if (rf.divisor) fibers.emplace_back(rf.label, *rf.divisor);
    if (!r.fixed.empty()) CHECK(theta_violations(cfg, r.fixed, fibers).empty());
  }
}

TEST_CASE("rank 13 record") {
  const CaseRecord r = select_cases(builtin_cases(), "rho13", std::nullopt).at(0);
  const CurveConfig& cfg = r.config.cfg;
  for (int i = 1; i <= 7; ++i) {
    const std::string h = "H" + std::to_string(i);
    CHECK(cfg.meet("C1", h) == 1);
    CHECK(cfg.meet("C3", h) == 1);
    CHECK(cfg.meet("C3", h + "'") == 2);
    CHECK(cfg.meet(h, h + "'") == 2);
  }
  const KodairaFiber f = classify_fiber(cfg, r.config.divisor("phi.0").support());
  CHECK(f.label() == "I0*");
  // the central component is the one of multiplicity 2
  for (std::size_t i = 0; i < f.components.size(); ++i)
    CHECK((f.multiplicities[i] == 2) == (cfg.name(f.components[i]) == "C2"));
  CHECK(r.config.divisor("phi.0")[cfg.index("C2")] == 2);
}

TEST_CASE("rank 20 record") {
  const CaseRecord r = select_cases(builtin_cases(), "rho20", std::nullopt).at(0);
  const CurveConfig& cfg = r.config.cfg;
  for (const auto& c : r.candidates) {
    const KodairaFiber f = classify_fiber(cfg, r.config.divisor(c.divisor).support());
    CHECK(f.label() == "IV*");
    CHECK(c.plan == EvidenceKind::AdditiveSameComponent);
  }
  REQUIRE(r.phi.has_value());
  std::vector<std::string> labels;
  for (const auto& rf : r.phi->second.reducible) {
    REQUIRE(rf.divisor.has_value());
    labels.push_back(classify_fiber(cfg, rf.divisor->support()).label());
  }
  CHECK(std::count(labels.begin(), labels.end(), "II*") == 1);
  CHECK(std::count(labels.begin(), labels.end(), "I6*") == 1);
}

TEST_CASE("single-record verification") {
  const auto all = builtin_cases();
  const CaseReport rep = verify_case(row(all, "rho12"));
  CHECK(rep.pass());
  CHECK(rep.find("E1-fiber")->detail.find("I4") != std::string::npos);
  CHECK(rep.find("E1-mw")->detail.find("lemma54-case1") != std::string::npos);
  CHECK(rep.find("E2-mw")->detail.find("lemma54-case1") != std::string::npos);
  CHECK(rep.find("cor36")->status == CheckStatus::Pass);
  CHECK(rep.find("cor36")->detail.find("E1.E2 = 2") != std::string::npos);

  const CaseReport rho20 = verify_case(row(all, "rho20"));
  CHECK(rho20.pass());
  CHECK(rho20.find("E1-mw")->detail.find("additive-same-component") != std::string::npos);
  CHECK(rho20.find("E2-mw")->detail.find("additive-same-component") != std::string::npos);

  CHECK(verify_case(row(all, "rho11[t=1]")).pass());
  CHECK(verify_case(row(all, "rho11[t=2]")).pass());
}

TEST_CASE("check order") {
  const CaseReport rep = verify_case(row(builtin_cases(), "rho14"));
  std::vector<std::string> names;
  for (const auto& c : rep.checks)
    if (c.status != CheckStatus::Info) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"lattice-invariants", "theta-constraints", "phi-fibers", "E1-fiber",
                                          "E2-fiber", "E1-mw", "E2-mw", "cor36"});
}

TEST_CASE("singular K3 rows") {
  const auto all = builtin_cases();
  const std::vector<std::pair<std::string, long>> ranks = {
      {"singular-k3[variant=none]", 2}, {"singular-k3[variant=I2]", 1}, {"singular-k3[variant=III]", 1}};
  for (const auto& [name, st] : ranks) {
    CAPTURE(name);
    const CaseRecord& r = row(all, name);
    const CurveConfig& cfg = r.config.cfg;
    for (const auto& c : r.candidates) {
      const DivisorClass& e = r.config.divisor(c.divisor);
      const KodairaFiber f = classify_fiber(cfg, e.support());
      CHECK(f.label() == "I12*");
      CHECK(f.component_count() == 17);
      std::vector<Integer> mult(17, 2);
      mult[0] = mult[1] = mult[15] = mult[16] = 1;
      CHECK(f.multiplicities == mult);
      CHECK(pairing(DivisorClass::curve(cfg, c.zero), e, cfg) == 1);
      CHECK(pairing(DivisorClass::curve(cfg, c.section), e, cfg) == 1);
      const FibrationModel m = candidate_model(r, c);
      CHECK(shioda_tate_rank(resolve(cfg, m), m.rho) == 2 - static_cast<long>(c.extra.size()));
    }
    REQUIRE(r.phi.has_value());
    CHECK(shioda_tate_rank(resolve(cfg, r.phi->second), r.phi->second.rho) == st);
    const CaseReport rep = verify_case(r);
    CHECK(rep.pass());
  }
  // The I12* section height in the variant without an extra fiber, frozen.
  const CaseRecord& none = row(all, "singular-k3[variant=none]");
  const CandidateSpec& e1 = none.candidates[0];
  const FibrationModel m = candidate_model(none, e1);
  CHECK(height_pairing(none.config.cfg, m, resolve(none.config.cfg, m), e1.section) == 0);
}

TEST_CASE("dump and load round trip") {
  const auto all = builtin_cases();
  std::string text;
  for (const auto& r : all) text += dump_case(r);
  const auto back = load_cases(text);
  REQUIRE(back.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CAPTURE(all[i].row_name());
    CHECK(back[i].row_name() == all[i].row_name());
    CHECK(back[i].config.cfg == all[i].config.cfg);
    CHECK(dump_case(back[i]) == dump_case(all[i]));
    CHECK(statuses(verify_case(back[i])) == statuses(verify_case(all[i])));
  }
  CHECK(load_cases("").empty());
  CHECK(load_cases("# nothing here\n").empty());
}

TEST_CASE("case file errors") {
  CHECK_THROWS_AS(load_cases("case x:\n  rho: 3\nend\n"), ParseError);
  CHECK_THROWS_AS(load_cases("case x:\n  bogus: 1\nend\n"), ParseError);
  CHECK_THROWS_AS(load_cases("curves: [A]\n"), ParseError);
  std::string text = dump_case(builtin_cases()[3]);
  const auto pos = text.find("  pivot:");
  REQUIRE(pos != std::string::npos);
  text.erase(pos, text.find('\n', pos) - pos + 1);
  CHECK_THROWS_AS(load_cases(text), ParseError);
}

TEST_CASE("selecting rows") {
  const auto all = builtin_cases();
  CHECK(select_cases(all, "rho11", std::nullopt).size() == 3);
  CHECK(select_cases(all, "rho11", std::string("1")).size() == 1);
  CHECK(select_cases(all, "rho11[t=2]", std::nullopt).size() == 1);
  CHECK(select_cases(all, "rho18-delta0", std::nullopt).size() == 1);
  CHECK(select_cases(all, "singular-k3", std::string("III")).size() == 1);
  CHECK(select_cases(all, "rho99", std::nullopt).empty());
}

TEST_CASE("Q-basis of the rank 11 configuration") {
  const QBasisVerdict v = qbasis_check();
  REQUIRE(v.gram.rows() == 11);
  CHECK(v.gram == v.gram.transposed());
  CHECK(Rational(v.det) == oracle::det(v.gram));
  CHECK(v.det == 8192);
  CHECK(v.ok());

  const text::ConfigSection cfg = qbasis_config();
  auto names = qbasis_curves();
  CHECK(names.size() == 11);
  names.pop_back();
  const QBasisVerdict minor = qbasis_check(cfg.cfg, names);
  CHECK(minor.gram.rows() == 10);
  CHECK(Rational(minor.det) == oracle::det(minor.gram));

  auto dup = qbasis_curves();
  dup.back() = dup.front();
  const QBasisVerdict d = qbasis_check(cfg.cfg, dup);
  CHECK(d.det == 0);
  CHECK_FALSE(d.ok());
  CHECK_THROWS_AS(qbasis_check(cfg.cfg, {"C", "nope"}), ValidationError);
}

TEST_CASE("mutation kit") {
  const auto all = builtin_cases();
  const auto kit = mutation_kit();
  CHECK(kit.size() >= 6);
  for (const auto& m : kit) {
    CAPTURE(m.name);
    CaseRecord r = row(all, m.row);
    REQUIRE(verify_case(r).pass());
    m.apply(r);
    const CaseReport rep = verify_case(r);
    const CheckResult* first = rep.first_failure();
    REQUIRE(first != nullptr);
    CHECK(first->name == m.check);
    const auto fails = std::count_if(rep.checks.begin(), rep.checks.end(),
                                     [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
    CHECK(fails == 1);
  }
}
