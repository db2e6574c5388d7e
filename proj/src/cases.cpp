#include "k3/cases.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace k3 {

const CandidateSpec& CaseRecord::candidate(const std::string& name) const {
  for (const auto& c : candidates)
    if (c.divisor == name) return c;
  throw ValidationError("record " + id + " has no candidate '" + name + "'");
}

CandidateSpec& CaseRecord::candidate(const std::string& name) {
  return const_cast<CandidateSpec&>(static_cast<const CaseRecord&>(*this).candidate(name));
}

std::string CaseRecord::row_name() const {
  if (params.empty()) return id;
  std::string s = id + "[";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + params[i].first + "=" + params[i].second;
  return s + "]";
}

namespace {

using Terms = std::vector<std::pair<std::string, long>>;

std::string nm(const std::string& p, int i, const std::string& suffix = "") { return p + std::to_string(i) + suffix; }

void curves(CaseRecord& r, const std::vector<std::string>& names) {
  for (const auto& n : names) r.config.cfg.add_curve(n);
}

void meet(CaseRecord& r, const std::string& a, const std::string& b, long m = 1) { r.config.cfg.set_meet(a, b, m); }

void chain(CaseRecord& r, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i + 1 < names.size(); ++i) meet(r, names[i], names[i + 1]);
}

void divisor(CaseRecord& r, const std::string& label, const Terms& terms) {
  r.config.divisors.emplace_back(label, DivisorClass(r.config.cfg, terms));
}

CaseRecord base(const std::string& id, std::array<long, 3> triple, const std::string& lattice,
                std::vector<std::string> fixed) {
  CaseRecord r;
  r.id = id;
  r.triple = triple;
  r.lattice = lattice;
  r.rho = triple[0];
  r.k = (triple[0] - triple[1] + 2) / 2;
  r.fixed = std::move(fixed);
  return r;
}

std::vector<std::string> fixed_curves(int k) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(nm("C", i == 10 ? 0 : i));
  return out;
}

// Fibration phi whose reducible fibers are the given (divisor label, type) pairs.
void set_phi(CaseRecord& r, const std::string& zero, const std::vector<std::string>& sections,
             const std::vector<std::pair<std::string, std::string>>& fibers, bool complete) {
  FibrationModel m;
  m.rho = r.rho;
  m.fiber_label = fibers.front().first;
  m.fiber_class = r.config.divisor(m.fiber_label);
  m.zero_section = zero;
  m.sections = sections;
  for (const auto& [label, type] : fibers) {
    ReducibleFiber rf;
    rf.label = label;
    rf.kodaira = type;
    rf.divisor = r.config.divisor(label);
    m.reducible.push_back(std::move(rf));
  }
  m.fibers_complete = complete;
  r.phi = std::make_pair(std::string("phi"), std::move(m));
}

CandidateSpec& candidate(CaseRecord& r, const std::string& label, const Terms& terms, const std::string& type,
                         const std::string& rr, long a, long b, EvidenceKind plan) {
  divisor(r, label, terms);
  CandidateSpec c;
  c.divisor = label;
  c.type = type;
  c.r = rr;
  c.a = a;
  c.b = b;
  c.plan = plan;
  r.candidates.push_back(std::move(c));
  return r.candidates.back();
}

constexpr auto kCase1 = EvidenceKind::Lemma54Case1;
constexpr auto kCase2 = EvidenceKind::Lemma54Case2;

CaseRecord rho11(long t) {
  CaseRecord r = base("rho11", {11, 11, 1}, "U(2)+A1^9", {"C"});
  r.params = {{"t", std::to_string(t)}};
  curves(r, {"C", "H", "gH"});
  meet(r, "C", "H", 2);
  meet(r, "C", "gH", 2);
  if (t) meet(r, "H", "gH", t);
  candidate(r, "E1", {{"H", 1}, {"C", 1}}, "I2", "H", 1, 1, kCase1);
  candidate(r, "E2", {{"gH", 1}, {"C", 1}}, "I2", "gH", 1, 1, kCase1);
  r.pivot = "C";
  r.witness = TriplePointWitness{"C", "H", "gH"};
  r.qbasis = true;
  r.flags = {"H.gH = t is a free parameter of the template",
             "the witness (C, H, gH) stands for the two points of H, gH and C in common"};
  return r;
}

CaseRecord rho12() {
  CaseRecord r = base("rho12", {12, 10, 1}, "U+A1^10", fixed_curves(2));
  curves(r, {"C1", "C2"});
  for (int i = 1; i <= 10; ++i) curves(r, {nm("H", i), nm("H", i, "'")});
  std::vector<std::pair<std::string, std::string>> fibers;
  for (int i = 1; i <= 10; ++i) {
    meet(r, "C1", nm("H", i));
    meet(r, "C2", nm("H", i));
    meet(r, "C2", nm("H", i, "'"), 2);
    meet(r, nm("H", i), nm("H", i, "'"), 2);
    divisor(r, nm("phi.", i), {{nm("H", i), 1}, {nm("H", i, "'"), 1}});
    fibers.emplace_back(nm("phi.", i), "I2");
  }
  set_phi(r, "C1", {"C1"}, fibers, true);
  candidate(r, "E1", {{"C1", 1}, {"H1", 1}, {"C2", 1}, {"H2", 1}}, "I4", "H1", 1, 1, kCase1);
  candidate(r, "E2", {{"C1", 1}, {"H1", 1}, {"C2", 1}, {"H3", 1}}, "I4", "H1", 1, 1, kCase1);
  r.pivot = "C1";
  r.flags = {"Hi is the component of the i-th fiber met by the section C1",
             "C2.Hi' = 2 follows from C.Hi' = 2 with C1.Hi' = 0"};
  return r;
}

CaseRecord rho13() {
  CaseRecord r = base("rho13", {13, 9, 1}, "U+D4+A1^7", fixed_curves(3));
  curves(r, {"C1", "C2", "C3", "F1", "F2", "F3", "F4"});
  for (int i = 1; i <= 7; ++i) curves(r, {nm("H", i), nm("H", i, "'")});
  for (int i = 1; i <= 4; ++i) meet(r, "C2", nm("F", i));
  meet(r, "C1", "F1");
  for (int i = 2; i <= 4; ++i) meet(r, "C3", nm("F", i));
  divisor(r, "phi.0", {{"C2", 2}, {"F1", 1}, {"F2", 1}, {"F3", 1}, {"F4", 1}});
  std::vector<std::pair<std::string, std::string>> fibers = {{"phi.0", "I0*"}};
  for (int i = 1; i <= 7; ++i) {
    meet(r, nm("H", i), nm("H", i, "'"), 2);
    meet(r, "C1", nm("H", i));
    meet(r, "C3", nm("H", i));
    meet(r, "C3", nm("H", i, "'"), 2);
    divisor(r, nm("phi.", i), {{nm("H", i), 1}, {nm("H", i, "'"), 1}});
    fibers.emplace_back(nm("phi.", i), "I2");
  }
  set_phi(r, "C1", {"C1"}, fibers, true);
  candidate(r, "E1", {{"C2", 1}, {"F1", 1}, {"C1", 1}, {"H1", 1}, {"C3", 1}, {"F2", 1}}, "I6", "F1", 1, 1, kCase1);
  candidate(r, "E2", {{"C2", 1}, {"F1", 1}, {"C1", 1}, {"H2", 1}, {"C3", 1}, {"F2", 1}}, "I6", "F1", 1, 1, kCase1);
  r.pivot = "C1";
  r.flags = {"F1 and Hi are the components met by the section C1"};
  return r;
}

CaseRecord rho14() {
  CaseRecord r = base("rho14", {14, 8, 1}, "U+D4+D4+A1^4", fixed_curves(4));
  const std::vector<std::string> p = {"", "'", "''", "'''"};
  curves(r, {"C1", "C2", "C3", "C4", "F12", "F24", "F24'", "F24''", "F13", "F34", "F34'", "F34''"});
  for (const auto& s : p) curves(r, {"F14" + s, "F44" + s});
  for (auto x : {"F12", "F24", "F24'", "F24''"}) meet(r, "C2", x);
  for (auto x : {"F13", "F34", "F34'", "F34''"}) meet(r, "C3", x);
  for (auto x : {"F24", "F24'", "F24''", "F34", "F34'", "F34''"}) meet(r, "C4", x);
  meet(r, "C1", "F12");
  meet(r, "C1", "F13");
  divisor(r, "phi.1", {{"C2", 2}, {"F12", 1}, {"F24", 1}, {"F24'", 1}, {"F24''", 1}});
  divisor(r, "phi.2", {{"C3", 2}, {"F13", 1}, {"F34", 1}, {"F34'", 1}, {"F34''", 1}});
  std::vector<std::pair<std::string, std::string>> fibers = {{"phi.1", "I0*"}, {"phi.2", "I0*"}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    meet(r, "C1", "F14" + p[i]);
    meet(r, "C4", "F14" + p[i]);
    meet(r, "C4", "F44" + p[i], 2);
    meet(r, "F14" + p[i], "F44" + p[i], 2);
    const std::string label = nm("phi.", static_cast<int>(i) + 3);
    divisor(r, label, {{"F14" + p[i], 1}, {"F44" + p[i], 1}});
    fibers.emplace_back(label, "I2");
  }
  set_phi(r, "C1", {"C1"}, fibers, true);
  const Terms e = {{"C2", 1}, {"F12", 1}, {"C1", 1}, {"F14", 1}, {"C4", 1}, {"F24", 1}};
  Terms e2 = e;
  e2[3].first = "F14'";
  candidate(r, "E1", e, "I6", "F24", 1, 1, kCase2);
  candidate(r, "E2", e2, "I6", "F24", 1, 1, kCase2);
  r.pivot = "C4";
  r.flags = {"C4 is the 3-section of phi; it meets the leaves F24, F34 (all primes) and F14 once, F44 twice"};
  return r;
}

CaseRecord rho15() {
  CaseRecord r = base("rho15", {15, 7, 1}, "U+D4^3+A1", fixed_curves(5));
  curves(r, {"C1", "C2", "C3", "C4", "C5"});
  for (int c = 2; c <= 4; ++c) {
    const std::string far = nm("F", c) + "5";
    curves(r, {"F1" + std::to_string(c), far, far + "'", far + "''"});
  }
  curves(r, {"F15", "F55"});
  std::vector<std::pair<std::string, std::string>> fibers;
  for (int c = 2; c <= 4; ++c) {
    const std::string center = nm("C", c);
    const std::string near = "F1" + std::to_string(c);
    const std::string far = nm("F", c) + "5";
    meet(r, "C1", near);
    for (const auto& x : {near, far, far + "'", far + "''"}) meet(r, center, x);
    for (const auto& x : {far, far + "'", far + "''"}) meet(r, "C5", x);
    divisor(r, nm("phi.", c - 1), {{center, 2}, {near, 1}, {far, 1}, {far + "'", 1}, {far + "''", 1}});
    fibers.emplace_back(nm("phi.", c - 1), "I0*");
  }
  meet(r, "C1", "F15");
  meet(r, "C5", "F15");
  meet(r, "C5", "F55", 2);
  meet(r, "F15", "F55", 2);
  divisor(r, "phi.4", {{"F15", 1}, {"F55", 1}});
  fibers.emplace_back("phi.4", "I2");
  set_phi(r, "C1", {"C1"}, fibers, true);
  candidate(r, "E1",
            {{"C4", 1}, {"F45", 1}, {"C5", 1}, {"F25", 1}, {"C2", 1}, {"F12", 1}, {"C1", 1}, {"F14", 1}}, "I8",
            "F45", 1, 1, kCase2);
  candidate(r, "E2",
            {{"C4", 1}, {"F45", 1}, {"C5", 1}, {"F25'", 1}, {"C2", 1}, {"F12", 1}, {"C1", 1}, {"F14", 1}}, "I8",
            "F45", 1, 1, kCase2);
  r.pivot = "C5";
  r.flags = {"C5 is the 3-section of phi; it meets F25, F35, F45 (all primes) and F15 once, F55 twice"};
  return r;
}

CaseRecord rho16() {
  CaseRecord r = base("rho16", {16, 6, 1}, "U+D6^2+A1^2", fixed_curves(6));
  curves(r, {"C1", "C2", "C3", "C4", "C5", "C6", "G23", "F13", "F36", "F26", "F26'", "G45", "F15", "F56", "F46",
             "F46'", "F16", "F66", "F16'", "F66'"});
  chain(r, {"C2", "G23", "C3"});
  chain(r, {"C4", "G45", "C5"});
  for (auto x : {"F26", "F26'"}) meet(r, "C2", x);
  for (auto x : {"F13", "F36"}) meet(r, "C3", x);
  for (auto x : {"F46", "F46'"}) meet(r, "C4", x);
  for (auto x : {"F15", "F56"}) meet(r, "C5", x);
  for (auto x : {"F13", "F15", "F16", "F16'"}) meet(r, "C1", x);
  for (auto x : {"F36", "F26", "F26'", "F56", "F46", "F46'", "F16", "F16'"}) meet(r, "C6", x);
  meet(r, "C6", "F66", 2);
  meet(r, "C6", "F66'", 2);
  meet(r, "F16", "F66", 2);
  meet(r, "F16'", "F66'", 2);
  divisor(r, "phi.1", {{"C2", 2}, {"G23", 2}, {"C3", 2}, {"F13", 1}, {"F36", 1}, {"F26", 1}, {"F26'", 1}});
  divisor(r, "phi.2", {{"C4", 2}, {"G45", 2}, {"C5", 2}, {"F15", 1}, {"F56", 1}, {"F46", 1}, {"F46'", 1}});
  divisor(r, "phi.3", {{"F16", 1}, {"F66", 1}});
  divisor(r, "phi.4", {{"F16'", 1}, {"F66'", 1}});
  set_phi(r, "C1", {"C1"}, {{"phi.1", "I2*"}, {"phi.2", "I2*"}, {"phi.3", "I2"}, {"phi.4", "I2"}}, true);
  const Terms e = {{"C3", 1}, {"F13", 1}, {"C1", 1}, {"F15", 1}, {"C5", 1}, {"G45", 1},
                   {"C4", 1}, {"F46", 1}, {"C6", 1}, {"F26", 1}, {"C2", 1}, {"G23", 1}};
  Terms e2 = e;
  e2[9].first = "F26'";
  candidate(r, "E1", e, "I12", "F46", 1, 1, kCase1);
  candidate(r, "E2", e2, "I12", "F46", 1, 1, kCase1);
  r.pivot = "C6";
  r.flags = {"C6 is the 3-section of phi; each leaf Fx6 of an I2* fiber meets it once"};
  return r;
}

CaseRecord rho17() {
  CaseRecord r = base("rho17", {17, 5, 1}, "U+D6+D8+A1", fixed_curves(7));
  curves(r, {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "G23", "F27", "F27'", "F37", "F31", "G45", "G56", "F47",
             "F47'", "F61", "F67", "F17", "F77"});
  chain(r, {"C2", "G23", "C3"});
  chain(r, {"C4", "G45", "C5", "G56", "C6"});
  for (auto x : {"F27", "F27'"}) meet(r, "C2", x);
  for (auto x : {"F37", "F31"}) meet(r, "C3", x);
  for (auto x : {"F47", "F47'"}) meet(r, "C4", x);
  for (auto x : {"F61", "F67"}) meet(r, "C6", x);
  for (auto x : {"F31", "F61", "F17"}) meet(r, "C1", x);
  for (auto x : {"F27", "F27'", "F37", "F47", "F47'", "F67", "F17"}) meet(r, "C7", x);
  meet(r, "C7", "F77", 2);
  meet(r, "F17", "F77", 2);
  divisor(r, "phi.1", {{"F27", 1}, {"F27'", 1}, {"C2", 2}, {"G23", 2}, {"C3", 2}, {"F37", 1}, {"F31", 1}});
  divisor(r, "phi.2", {{"F47", 1}, {"F47'", 1}, {"C4", 2}, {"G45", 2}, {"C5", 2}, {"G56", 2}, {"C6", 2},
                       {"F61", 1}, {"F67", 1}});
  divisor(r, "phi.3", {{"F17", 1}, {"F77", 1}});
  set_phi(r, "C1", {"C1"}, {{"phi.1", "I2*"}, {"phi.2", "I4*"}, {"phi.3", "I2"}}, true);
  const Terms e = {{"C4", 1}, {"G45", 1}, {"C5", 1}, {"G56", 1}, {"C6", 1}, {"F61", 1}, {"C1", 1},
                   {"F31", 1}, {"C3", 1}, {"G23", 1}, {"C2", 1}, {"F27", 1}, {"C7", 1}, {"F47", 1}};
  Terms e2 = e;
  e2[13].first = "F47'";
  candidate(r, "E1", e, "I14", "F27", 1, 1, kCase1);
  candidate(r, "E2", e2, "I14", "F27", 1, 1, kCase1);
  r.pivot = "C7";
  r.flags = {"C7 is the 3-section of phi; it meets the leaves F27, F27', F37, F47, F47', F67 and F17 once"};
  return r;
}

CaseRecord rho18_delta0() {
  CaseRecord r = base("rho18-delta0", {18, 4, 0}, "U+D4+D12", fixed_curves(8));
  curves(r, {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "F28", "F28'", "F28''", "F12", "G34", "G45", "G56",
             "G67", "F38", "F38'", "F17", "F78"});
  for (auto x : {"F28", "F28'", "F28''", "F12"}) meet(r, "C2", x);
  chain(r, {"C3", "G34", "C4", "G45", "C5", "G56", "C6", "G67", "C7"});
  for (auto x : {"F38", "F38'"}) meet(r, "C3", x);
  for (auto x : {"F17", "F78"}) meet(r, "C7", x);
  for (auto x : {"F12", "F17"}) meet(r, "C1", x);
  for (auto x : {"F28", "F28'", "F28''", "F38", "F38'", "F78"}) meet(r, "C8", x);
  divisor(r, "phi.1", {{"F28", 1}, {"F28'", 1}, {"C2", 2}, {"F28''", 1}, {"F12", 1}});
  divisor(r, "phi.2", {{"F38", 1}, {"F38'", 1}, {"C3", 2}, {"G34", 2}, {"C4", 2}, {"G45", 2}, {"C5", 2},
                       {"G56", 2}, {"C6", 2}, {"G67", 2}, {"C7", 2}, {"F17", 1}, {"F78", 1}});
  set_phi(r, "C1", {"C1"}, {{"phi.1", "I0*"}, {"phi.2", "I8*"}}, true);
  const Terms e = {{"C3", 1}, {"G34", 1}, {"C4", 1}, {"G45", 1}, {"C5", 1},   {"G56", 1}, {"C6", 1}, {"G67", 1},
                   {"C7", 1}, {"F17", 1}, {"C1", 1}, {"F12", 1}, {"C2", 1}, {"F28''", 1}, {"C8", 1}, {"F38", 1}};
  Terms e2 = e;
  e2[15].first = "F38'";
  candidate(r, "E1", e, "I16", "F28''", 1, 1, kCase1);
  candidate(r, "E2", e2, "I16", "F28''", 1, 1, kCase1);
  r.pivot = "C8";
  r.flags = {"C8 is the 3-section of phi; it meets F28, F28', F28'', F38, F38' and F78 once"};
  return r;
}

CaseRecord rho18_delta1() {
  CaseRecord r = base("rho18-delta1", {18, 4, 1}, "U+D14+A1^2", fixed_curves(8));
  curves(r, {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "F28", "F28'", "G23", "G34", "G45", "G56", "G67",
             "F78", "F17", "F18", "F88", "F18'", "F88'"});
  chain(r, {"C2", "G23", "C3", "G34", "C4", "G45", "C5", "G56", "C6", "G67", "C7"});
  for (auto x : {"F28", "F28'"}) meet(r, "C2", x);
  for (auto x : {"F78", "F17"}) meet(r, "C7", x);
  for (auto x : {"F17", "F18", "F18'"}) meet(r, "C1", x);
  for (auto x : {"F28", "F28'", "F78", "F18", "F18'"}) meet(r, "C8", x);
  meet(r, "C8", "F88", 2);
  meet(r, "C8", "F88'", 2);
  meet(r, "F18", "F88", 2);
  meet(r, "F18'", "F88'", 2);
  divisor(r, "phi.1", {{"F28", 1}, {"F28'", 1}, {"C2", 2}, {"G23", 2}, {"C3", 2}, {"G34", 2}, {"C4", 2},
                       {"G45", 2}, {"C5", 2}, {"G56", 2}, {"C6", 2}, {"G67", 2}, {"C7", 2}, {"F78", 1}, {"F17", 1}});
  divisor(r, "phi.2", {{"F18", 1}, {"F88", 1}});
  divisor(r, "phi.3", {{"F18'", 1}, {"F88'", 1}});
  set_phi(r, "C1", {"C1"}, {{"phi.1", "I10*"}, {"phi.2", "I2"}, {"phi.3", "I2"}}, true);
  const Terms e = {{"C2", 1},  {"G23", 1}, {"C3", 1}, {"G34", 1}, {"C4", 1}, {"G45", 1}, {"C5", 1}, {"G56", 1},
                   {"C6", 1},  {"G67", 1}, {"C7", 1}, {"F17", 1}, {"C1", 1}, {"F18", 1}, {"C8", 1}, {"F28", 1}};
  Terms e2 = e;
  e2[15].first = "F28'";
  candidate(r, "E1", e, "I16", "F18", 1, 1, kCase1);
  candidate(r, "E2", e2, "I16", "F18", 1, 1, kCase1);
  r.pivot = "C8";
  r.flags = {"C8 is the 3-section of phi; it meets F28, F28', F78, F18, F18' once and F88, F88' twice"};
  return r;
}

CaseRecord rho19() {
  CaseRecord r = base("rho19", {19, 3, 1}, "U+D16+A1", fixed_curves(9));
  curves(r, {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "F29", "F29'", "G23", "G34", "G45", "G56", "G67",
             "G78", "F89", "F18", "F19", "F99"});
  chain(r, {"C2", "G23", "C3", "G34", "C4", "G45", "C5", "G56", "C6", "G67", "C7", "G78", "C8"});
  for (auto x : {"F29", "F29'"}) meet(r, "C2", x);
  for (auto x : {"F89", "F18"}) meet(r, "C8", x);
  for (auto x : {"F18", "F19"}) meet(r, "C1", x);
  for (auto x : {"F29", "F29'", "F89", "F19"}) meet(r, "C9", x);
  meet(r, "C9", "F99", 2);
  meet(r, "F19", "F99", 2);
  divisor(r, "phi.1", {{"F29", 1}, {"F29'", 1}, {"C2", 2}, {"G23", 2}, {"C3", 2}, {"G34", 2}, {"C4", 2},
                       {"G45", 2}, {"C5", 2}, {"G56", 2}, {"C6", 2}, {"G67", 2}, {"C7", 2}, {"G78", 2}, {"C8", 2},
                       {"F89", 1}, {"F18", 1}});
  divisor(r, "phi.2", {{"F19", 1}, {"F99", 1}});
  set_phi(r, "C1", {"C1"}, {{"phi.1", "I12*"}, {"phi.2", "I2"}}, true);
  const Terms e = {{"C2", 1}, {"G23", 1}, {"C3", 1}, {"G34", 1}, {"C4", 1}, {"G45", 1}, {"C5", 1},  {"G56", 1},
                   {"C6", 1}, {"G67", 1}, {"C7", 1}, {"G78", 1}, {"C8", 1}, {"F89", 1}, {"C9", 1}, {"F29", 1}};
  Terms e2 = e;
  e2[15].first = "F29'";
  candidate(r, "E1", e, "I16", "F89", 1, 1, kCase2);
  candidate(r, "E2", e2, "I16", "F89", 1, 1, kCase2);
  r.pivot = "C9";
  r.flags = {"C9 is the 3-section of phi; it meets F29, F29', F89 and F19 once, F99 twice"};
  return r;
}

CaseRecord rho20() {
  CaseRecord r = base("rho20", {20, 2, 1}, "U+E8+D10", fixed_curves(10));
  curves(r, {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C0", "G23", "F30", "G34", "G45", "F15", "F16",
             "F60", "G67", "G78", "G89", "F90", "F90'"});
  chain(r, {"C2", "G23", "C3", "G34", "C4", "G45", "C5", "F15"});
  meet(r, "C3", "F30");
  chain(r, {"C6", "G67", "C7", "G78", "C8", "G89", "C9"});
  for (auto x : {"F16", "F60"}) meet(r, "C6", x);
  for (auto x : {"F90", "F90'"}) meet(r, "C9", x);
  for (auto x : {"F15", "F16"}) meet(r, "C1", x);
  for (auto x : {"F30", "F60", "F90", "F90'"}) meet(r, "C0", x);
  divisor(r, "phi.1", {{"C2", 2}, {"G23", 4}, {"C3", 6}, {"F30", 3}, {"G34", 5}, {"C4", 4}, {"G45", 3}, {"C5", 2},
                       {"F15", 1}});
  divisor(r, "phi.2", {{"F16", 1}, {"F60", 1}, {"C6", 2}, {"G67", 2}, {"C7", 2}, {"G78", 2}, {"C8", 2}, {"G89", 2},
                       {"C9", 2}, {"F90", 1}, {"F90'", 1}});
  set_phi(r, "C1", {"C1"}, {{"phi.1", "II*"}, {"phi.2", "I6*"}}, true);
  const auto add = EvidenceKind::AdditiveSameComponent;
  const Terms e = {{"C3", 1}, {"F30", 2}, {"C6", 1}, {"F60", 2}, {"C9", 1}, {"F90", 2}, {"C0", 3}};
  Terms e2 = e;
  e2[5].first = "F90'";
  for (auto [label, terms] : {std::pair{"E1", e}, std::pair{"E2", e2}}) {
    CandidateSpec& c = candidate(r, label, terms, "IV*", "F30", 2, 3, add);
    c.zero = "G23";
    c.section = "G34";
  }
  r.pivot = "C0";
  r.flags = {"C0 is the 3-section of phi; it meets F30, F60, F90 and F90' once",
             "the reducible fibers of E1 and E2 other than themselves are not listed"};
  return r;
}

CaseRecord singular_k3(const std::string& variant) {
  CaseRecord r;
  r.id = "singular-k3";
  r.params = {{"variant", variant}};
  r.lattice = "U+E8+E8";
  r.rho = 20;
  r.opaque_rank = 2;
  for (const std::string s : {"", "'"})
    for (int i = 1; i <= 9; ++i) curves(r, {nm("a", i, s)});
  curves(r, {"D1", "D2"});
  if (variant != "none") curves(r, {"T0", "T1"});
  for (const std::string s : {"", "'"}) {
    chain(r, {"a1" + s, "a2" + s, "a3" + s, "a4" + s, "a5" + s, "a6" + s, "a7" + s, "a8" + s});
    meet(r, "a6" + s, "a9" + s);
    meet(r, "D1", "a1" + s);
    meet(r, "D2", "a1" + s);
  }
  const long mult[] = {1, 2, 3, 4, 5, 6, 4, 2, 3};
  for (const std::string s : {"", "'"}) {
    Terms t;
    for (int i = 1; i <= 9; ++i) t.emplace_back(nm("a", i, s), mult[i - 1]);
    divisor(r, s.empty() ? "phi.1" : "phi.2", t);
  }
  std::vector<std::pair<std::string, std::string>> fibers = {{"phi.1", "II*"}, {"phi.2", "II*"}};
  std::vector<ReducibleFiber> extra;
  if (variant != "none") {
    meet(r, "T0", "T1", 2);
    meet(r, "D1", "T0");
    meet(r, "D2", "T0");
    divisor(r, "phi.3", {{"T0", 1}, {"T1", 1}});
    fibers.emplace_back("phi.3", variant);
    ReducibleFiber rf;
    rf.kodaira = variant;
    rf.components = 2;
    rf.label = variant + "#1";
    extra.push_back(std::move(rf));
  }
  set_phi(r, "D1", {"D1", "D2"}, fibers, true);
  r.phi_mw = true;
  for (int i = 1; i <= 2; ++i) {
    const std::string d = nm("D", i);
    Terms t = {{"a7", 1}, {"a9", 1}, {"a7'", 1}, {"a9'", 1}, {d, 2}};
    for (const std::string s : {"", "'"})
      for (int j = 1; j <= 6; ++j) t.emplace_back(nm("a", j, s), 2);
    CandidateSpec& c = candidate(r, nm("E", i), t, "I12*", "a2", 2, 2, EvidenceKind::ShiodaTate);
    c.zero = "a8";
    c.section = "a8'";
    c.extra = extra;
    c.complete = true;
  }
  r.pivot = "a3";
  r.flags = {"D1.D2 = 0 is assumed; it enters only the heights on phi",
             "the reducible fibers of phi_i are assumed to be E_i plus the listed extra fibers"};
  if (variant != "none")
    r.flags.push_back("D1 and D2 both meet the component T0 of the " + variant +
                      " fiber of phi, and T1 lies in an " + variant + " fiber of phi_i");
  return r;
}

// ---- text form ----

using text::Entry;
using text::Value;

std::string quote(const std::string& s) { return text::format_value(Value::make_string(s)); }

std::string param_text(const std::string& v) {
  if (text::is_name(v)) return v;
  Integer z;
  if (z.set_str(v, 10) == 0 && z.get_str() == v) return v;
  return quote(v);
}

std::string reducible_text(const ReducibleFiber& rf) {
  if (rf.divisor) return "(" + rf.label + ", " + quote(rf.kodaira) + ")";
  return "(" + quote(rf.kodaira) + ", " + std::to_string(rf.components) + ")";
}

ReducibleFiber read_reducible(const Value& t, const text::ConfigSection& config, std::size_t position) {
  const auto& items = t.as_tuple();
  if (items.size() != 2) t.fail("a reducible fiber is (divisor, \"type\") or (\"type\", components)");
  ReducibleFiber rf;
  if (items[0].is(Value::Kind::Name)) {
    rf.label = items[0].as_name();
    if (!config.has_divisor(rf.label)) items[0].fail("unknown divisor '" + rf.label + "'");
    rf.divisor = config.divisor(rf.label);
    rf.kodaira = items[1].as_string();
  } else {
    rf.kodaira = items[0].as_string();
    const long n = items[1].as_long();
    if (n < 1) items[1].fail("component count must be positive");
    rf.components = static_cast<std::size_t>(n);
    rf.label = rf.kodaira + "#" + std::to_string(position);
  }
  try {
    component_count_of_label(rf.kodaira);
  } catch (const std::invalid_argument& err) {
    t.fail(err.what());
  }
  return rf;
}

CaseRecord read_case(const Entry& block) {
  if (!block.is_block) block.fail("case must be a block");
  if (block.label.empty()) block.fail("case needs an id");
  CaseRecord r;
  r.id = block.label;
  static const std::set<std::string> keys = {"params", "triple", "lattice",  "k",       "rho",   "opaque-rank",
                                             "fixed",  "curves", "meets",    "divisor", "fibration", "phi-mw",
                                             "candidate", "pivot", "witness", "qbasis", "flag"};
  for (const auto& e : block.block)
    if (!keys.count(e.key)) e.fail("unknown case field '" + e.key + "'");
  r.config = text::read_config(block.block);
  const auto& cfg = r.config.cfg;
  auto curve = [&](const Value& v) -> std::string {
    const std::string& n = v.as_name();
    if (!cfg.find(n)) v.fail("unknown curve '" + n + "'");
    return n;
  };
  bool have_rho = false, have_lattice = false;
  for (const auto& e : block.block) {
    if (e.key == "curves" || e.key == "meets" || e.key == "divisor") continue;
    if (e.key == "fibration") {
      if (r.phi) e.fail("only one fibration per case");
      if (e.label.empty()) e.fail("fibration needs a label");
      r.phi = std::make_pair(e.label, text::read_fibration(e, r.config));
      continue;
    }
    if (e.is_block) e.fail("'" + e.key + "' takes a value");
    const Value& v = e.value;
    if (e.key == "params") {
      for (const auto& [k, x] : v.as_map()) r.params.emplace_back(k, x.is(Value::Kind::Int) ? x.integer.get_str() : x.as_text());
    } else if (e.key == "triple") {
      const auto& t = v.as_tuple();
      if (t.size() != 3) v.fail("triple is (rank, a, delta)");
      r.triple = std::array<long, 3>{t[0].as_long(), t[1].as_long(), t[2].as_long()};
    } else if (e.key == "lattice") {
      r.lattice = v.as_string();
      have_lattice = true;
    } else if (e.key == "k") {
      r.k = v.as_long();
    } else if (e.key == "rho") {
      r.rho = v.as_long();
      have_rho = true;
    } else if (e.key == "opaque-rank") {
      r.opaque_rank = v.as_long();
      if (r.opaque_rank < 0) v.fail("opaque rank must be non-negative");
    } else if (e.key == "fixed") {
      for (const auto& x : v.as_list()) r.fixed.push_back(curve(x));
    } else if (e.key == "phi-mw") {
      if (v.as_name() != "shioda-tate") v.fail("phi-mw supports only shioda-tate");
      r.phi_mw = true;
    } else if (e.key == "candidate") {
      if (e.label.empty()) e.fail("candidate needs a divisor label");
      if (!r.config.has_divisor(e.label)) e.fail("unknown divisor '" + e.label + "'");
      CandidateSpec c;
      c.divisor = e.label;
      bool have_type = false, have_r = false, have_mw = false;
      for (const auto& [k, x] : v.as_map()) {
        if (k == "type") {
          c.type = x.as_string();
          have_type = true;
        } else if (k == "R") {
          c.r = curve(x);
          have_r = true;
        } else if (k == "a") {
          c.a = x.as_int();
        } else if (k == "b") {
          c.b = x.as_int();
        } else if (k == "mw") {
          try {
            c.plan = evidence_kind_from_string(x.as_name());
          } catch (const std::invalid_argument& err) {
            x.fail(err.what());
          }
          have_mw = true;
        } else if (k == "zero") {
          c.zero = curve(x);
        } else if (k == "section") {
          c.section = curve(x);
        } else if (k == "extra") {
          for (const auto& t : x.as_list()) c.extra.push_back(read_reducible(t, r.config, c.extra.size() + 1));
        } else if (k == "complete") {
          c.complete = x.as_bool();
        } else {
          x.fail("unknown candidate field '" + k + "'");
        }
      }
      if (!have_type || !have_r || !have_mw) e.fail("candidate needs type, R and mw");
      r.candidates.push_back(std::move(c));
    } else if (e.key == "pivot") {
      r.pivot = curve(v);
    } else if (e.key == "witness") {
      const auto& t = v.as_tuple();
      if (t.size() != 3) v.fail("witness is (C, R1, R2)");
      r.witness = TriplePointWitness{curve(t[0]), curve(t[1]), curve(t[2])};
    } else if (e.key == "qbasis") {
      if (v.as_name() != "builtin") v.fail("qbasis supports only builtin");
      r.qbasis = true;
    } else if (e.key == "flag") {
      r.flags.push_back(v.as_string());
    }
  }
  if (!have_lattice) block.fail("case lacks 'lattice'");
  if (!have_rho) {
    if (!r.triple) block.fail("case lacks 'rho'");
    r.rho = (*r.triple)[0];
  }
  if (r.candidates.size() != 2) block.fail("case needs exactly two candidates");
  if (r.pivot.empty()) block.fail("case lacks 'pivot'");
  return r;
}

}  // namespace

std::vector<CaseRecord> builtin_cases() {
  std::vector<CaseRecord> out;
  for (long t : {0L, 1L, 2L}) out.push_back(rho11(t));
  out.push_back(rho12());
  out.push_back(rho13());
  out.push_back(rho14());
  out.push_back(rho15());
  out.push_back(rho16());
  out.push_back(rho17());
  out.push_back(rho18_delta0());
  out.push_back(rho18_delta1());
  out.push_back(rho19());
  out.push_back(rho20());
  for (const char* v : {"none", "I2", "III"}) out.push_back(singular_k3(v));
  return out;
}

std::vector<CaseRecord> select_cases(const std::vector<CaseRecord>& all, const std::string& id,
                                     const std::optional<std::string>& param) {
  std::vector<CaseRecord> out;
  for (const auto& r : all) {
    if (r.id != id && r.row_name() != id) continue;
    if (param && std::none_of(r.params.begin(), r.params.end(), [&](const auto& p) { return p.second == *param; }))
      continue;
    out.push_back(r);
  }
  return out;
}

std::vector<CaseRecord> load_cases(std::string_view src) {
  std::vector<CaseRecord> out;
  for (const auto& e : text::parse_document(src)) {
    if (e.key != "case") e.fail("expected 'case', found '" + e.key + "'");
    out.push_back(read_case(e));
  }
  return out;
}

std::string dump_case(const CaseRecord& r) {
  std::ostringstream os;
  os << "case " << r.id << ":\n";
  if (!r.params.empty()) {
    os << "  params: {";
    for (std::size_t i = 0; i < r.params.size(); ++i)
      os << (i ? ", " : "") << r.params[i].first << ": " << param_text(r.params[i].second);
    os << "}\n";
  }
  if (r.triple) os << "  triple: (" << (*r.triple)[0] << ", " << (*r.triple)[1] << ", " << (*r.triple)[2] << ")\n";
  os << "  lattice: " << quote(r.lattice) << "\n";
  if (r.k) os << "  k: " << *r.k << "\n";
  os << "  rho: " << r.rho << "\n";
  if (r.opaque_rank) os << "  opaque-rank: " << r.opaque_rank << "\n";
  if (!r.fixed.empty()) {
    os << "  fixed: [";
    for (std::size_t i = 0; i < r.fixed.size(); ++i) os << (i ? ", " : "") << r.fixed[i];
    os << "]\n";
  }
  os << text::dump_config(r.config, "  ");
  if (r.phi) os << text::dump_fibration(r.phi->first, r.phi->second, "  ");
  if (r.phi_mw) os << "  phi-mw: shioda-tate\n";
  for (const auto& c : r.candidates) {
    os << "  candidate " << c.divisor << ": {type: " << quote(c.type) << ", R: " << c.r << ", a: " << c.a
       << ", b: " << c.b << ", mw: " << to_string(c.plan);
    if (!c.zero.empty()) os << ", zero: " << c.zero;
    if (!c.section.empty()) os << ", section: " << c.section;
    if (!c.extra.empty()) {
      os << ", extra: [";
      for (std::size_t i = 0; i < c.extra.size(); ++i) os << (i ? ", " : "") << reducible_text(c.extra[i]);
      os << "]";
    }
    if (c.complete) os << ", complete: true";
    os << "}\n";
  }
  os << "  pivot: " << r.pivot << "\n";
  if (r.witness) os << "  witness: (" << r.witness->c << ", " << r.witness->r1 << ", " << r.witness->r2 << ")\n";
  if (r.qbasis) os << "  qbasis: builtin\n";
  for (const auto& f : r.flags) os << "  flag: " << quote(f) << "\n";
  os << "end\n";
  return os.str();
}

text::ConfigSection qbasis_config() {
  text::ConfigSection s;
  s.cfg.add_curve("C");
  for (int i = 1; i <= 9; ++i) s.cfg.add_curve(nm("H", i));
  s.cfg.add_curve("H1'");
  for (int i = 1; i <= 9; ++i) s.cfg.set_meet("C", nm("H", i), 2);
  s.cfg.set_meet("C", "H1'", 2);
  s.cfg.set_meet("H1", "H1'", 2);
  return s;
}

std::vector<std::string> qbasis_curves() {
  std::vector<std::string> out = {"H1'", "C"};
  for (int i = 1; i <= 9; ++i) out.push_back(nm("H", i));
  return out;
}

QBasisVerdict qbasis_check(const CurveConfig& cfg, const std::vector<std::string>& curves) {
  std::vector<std::size_t> idx;
  for (const auto& c : curves) idx.push_back(cfg.index(c));
  QBasisVerdict v;
  v.gram = cfg.restricted(idx);
  v.det = idx.empty() ? Integer(1) : determinant(v.gram);
  return v;
}

QBasisVerdict qbasis_check() { return qbasis_check(qbasis_config().cfg, qbasis_curves()); }

namespace {

DivisorClass& divisor_ref(CaseRecord& r, const std::string& label) {
  for (auto& [l, d] : r.config.divisors)
    if (l == label) return d;
  throw ValidationError("record " + r.id + " has no divisor '" + label + "'");
}

}  // namespace

std::vector<Mutation> mutation_kit() {
  std::vector<Mutation> kit;
  kit.push_back({"corrupt-multiplicity", "rho20", "E1-fiber", "coefficient of C0 in E1 lowered from 3 to 2",
                 [](CaseRecord& r) {
                   DivisorClass& d = divisor_ref(r, "E1");
                   d[r.config.cfg.index("C0")] = 2;
                 }});
  kit.push_back({"drop-component", "rho16", "E1-fiber", "G23 removed from E1", [](CaseRecord& r) {
                   DivisorClass& d = divisor_ref(r, "E1");
                   d[r.config.cfg.index("G23")] = 0;
                 }});
  kit.push_back({"swap-section", "rho20", "E1-mw", "section of E1 moved from G34 (on C3) to F16 (on C6)",
                 [](CaseRecord& r) { r.candidate("E1").section = "F16"; }});
  kit.push_back({"equal-pair", "rho12", "cor36", "E2 replaced by E1",
                 [](CaseRecord& r) { divisor_ref(r, "E2") = divisor_ref(r, "E1"); }});
  kit.push_back({"flip-delta", "rho13", "lattice-invariants", "delta of the triple flipped to 0",
                 [](CaseRecord& r) { (*r.triple)[2] = 0; }});
  kit.push_back({"break-theta", "rho14", "theta-constraints", "C4.F44 lowered from 2 to 1",
                 [](CaseRecord& r) { r.config.cfg.set_meet("C4", "F44", 1); }});
  kit.push_back({"pivot-as-R", "rho12", "cor36", "R of E1 set to the pivot C1",
                 [](CaseRecord& r) { r.candidate("E1").r = "C1"; }});
  kit.push_back({"mislabel-fiber", "rho17", "phi-fibers", "I4* fiber of phi declared as I3*",
                 [](CaseRecord& r) { r.phi->second.reducible[1].kodaira = "I3*"; }});
  kit.push_back({"drop-witness", "rho11[t=2]", "cor36", "triple-point witness removed",
                 [](CaseRecord& r) { r.witness.reset(); }});
  return kit;
}

}  // namespace k3
