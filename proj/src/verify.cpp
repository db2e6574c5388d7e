#include "k3/verify.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

#include "json.hpp"

namespace k3 {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "SKIP";
    case CheckStatus::Info: return "INFO";
  }
  return "?";
}

bool CaseReport::pass() const { return first_failure() == nullptr; }

std::string CaseReport::row_name() const {
  CaseRecord r;
  r.id = id;
  r.params = params;
  return r.row_name();
}

const CheckResult* CaseReport::first_failure() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return &c;
  return nullptr;
}

const CheckResult* CaseReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string CaseReport::trace() const {
  std::ostringstream os;
  for (const auto& c : checks) os << "  " << to_string(c.status) << "  " << c.name << ": " << c.detail << "\n";
  return os.str();
}

FibrationModel candidate_model(const CaseRecord& rec, const CandidateSpec& c) {
  FibrationModel m;
  m.rho = rec.rho;
  m.fiber_label = c.divisor;
  m.fiber_class = rec.config.divisor(c.divisor);
  m.zero_section = c.zero;
  for (const auto& s : {c.zero, c.section})
    if (!s.empty()) m.sections.push_back(s);
  ReducibleFiber self;
  self.label = c.divisor;
  self.kodaira = c.type;
  self.divisor = m.fiber_class;
  m.reducible.push_back(std::move(self));
  m.reducible.insert(m.reducible.end(), c.extra.begin(), c.extra.end());
  m.fibers_complete = c.complete;
  return m;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

// "10 x I2/III" style summary of consecutive equal labels.
std::string label_summary(const std::vector<std::string>& labels) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < labels.size();) {
    std::size_t j = i;
    while (j < labels.size() && labels[j] == labels[i]) ++j;
    parts.push_back(j - i > 1 ? std::to_string(j - i) + " x " + labels[i] : labels[i]);
    i = j;
  }
  return join(parts, ", ");
}

class Verifier {
 public:
  explicit Verifier(const CaseRecord& rec) : rec_(rec), cfg_(rec.config.cfg) {
    rep_.id = rec.id;
    rep_.params = rec.params;
  }

  CaseReport run() {
    guarded("lattice-invariants", [&] { lattice(); });
    guarded("theta-constraints", [&] { theta(); });
    guarded("phi-fibers", [&] { phi_fibers(); });
    if (rec_.phi) guarded("phi-mw", [&] { phi_mw(); });
    for (const auto& c : rec_.candidates) guarded(c.divisor + "-fiber", [&] { candidate_fiber(c); });
    for (const auto& c : rec_.candidates) {
      guarded(c.divisor + "-mw", [&] { candidate_mw(c); });
      if (!c.zero.empty() && !c.section.empty() && c.plan != EvidenceKind::HeightPositive) candidate_height(c);
    }
    guarded("cor36", [&] { cor36(); });
    if (rec_.qbasis) guarded("qbasis", [&] { qbasis(); });
    if (!rec_.flags.empty()) add("flags", CheckStatus::Info, join(rec_.flags, "; "));
    return std::move(rep_);
  }

 private:
  template <class F>
  void guarded(const std::string& name, F&& body) {
    current_ = name;
    try {
      body();
    } catch (const std::exception& e) {
      add(name, CheckStatus::Fail, e.what());
    }
  }

  void add(const std::string& name, CheckStatus s, std::string detail) {
    rep_.checks.push_back({name, s, std::move(detail)});
  }
  void pass(std::string d) { add(current_, CheckStatus::Pass, std::move(d)); }
  void fail(std::string d) { add(current_, CheckStatus::Fail, std::move(d)); }
  void skip(std::string d) { add(current_, CheckStatus::Skip, std::move(d)); }

  bool passed(const std::string& name) const {
    const CheckResult* c = rep_.find(name);
    return c && c->status == CheckStatus::Pass;
  }

  void lattice() {
    const GramLattice l = gram(rec_.lattice);
    if (rec_.triple) {
      const auto [rho, a, delta] = *rec_.triple;
      const TwoElementaryInvariants inv = two_elementary_invariants(l);
      std::vector<std::string> bad;
      const std::string got = "(" + std::to_string(inv.rank) + "," + std::to_string(inv.a) + "," +
                              std::to_string(inv.delta) + ")";
      if (static_cast<long>(inv.rank) != rho || static_cast<long>(inv.a) != a || inv.delta != delta)
        bad.push_back("invariants " + got + " differ from (" + std::to_string(rho) + "," + std::to_string(a) + "," +
                      std::to_string(delta) + ")");
      const long k = fixed_locus_component_count(static_cast<long>(inv.rank), static_cast<long>(inv.a));
      if (rec_.k && *rec_.k != k) bad.push_back("k = " + std::to_string(k) + ", record says " + std::to_string(*rec_.k));
      if (static_cast<long>(rec_.fixed.size()) != k)
        bad.push_back(std::to_string(rec_.fixed.size()) + " fixed curves listed, k = " + std::to_string(k));
      if (rec_.rho != rho) bad.push_back("rho " + std::to_string(rec_.rho) + " differs from the triple");
      if (!bad.empty()) return fail(join(bad, "; "));
      return pass(rec_.lattice + ": " + got + ", k=" + std::to_string(k));
    }
    const Inertia sig = inertia(l.gram);
    const std::size_t n = l.rank();
    std::vector<std::string> bad;
    if (!l.is_even()) bad.push_back("lattice is not even");
    if (sig != Inertia{1, n - 1, 0})
      bad.push_back("signature (" + std::to_string(sig.positive) + "," + std::to_string(sig.negative) + ") with " +
                    std::to_string(sig.zero) + " null directions is not hyperbolic");
    const long total = static_cast<long>(n) + rec_.opaque_rank;
    if (total != rec_.rho) bad.push_back("rank " + std::to_string(total) + " differs from rho " + std::to_string(rec_.rho));
    if (!bad.empty()) return fail(join(bad, "; "));
    std::string d = rec_.lattice + ": rank " + std::to_string(n) + ", det " + determinant(l.gram).get_str() +
                    ", signature (1," + std::to_string(n - 1) + ")";
    if (rec_.opaque_rank) d += ", plus an unspecified rank-" + std::to_string(rec_.opaque_rank) + " summand";
    pass(d + ", rho " + std::to_string(rec_.rho));
  }

  void theta() {
    if (rec_.fixed.empty()) return skip("no fixed curves");
    std::vector<std::pair<std::string, DivisorClass>> fibers;
    if (rec_.phi)
      for (const auto& rf : rec_.phi->second.reducible)
        if (rf.divisor) fibers.emplace_back(rf.label, *rf.divisor);
    const auto v = theta_violations(cfg_, rec_.fixed, fibers);
    if (!v.empty()) return fail(join(v, "; "));
    pass(std::to_string(rec_.fixed.size()) + " fixed curves, " + std::to_string(cfg_.size() - rec_.fixed.size()) +
         " other curves, " + std::to_string(fibers.size()) + " fiber classes");
  }

  void phi_fibers() {
    if (!rec_.phi) return skip("no fibration phi");
    const FibrationModel& m = rec_.phi->second;
    phi_resolved_ = resolve(cfg_, m);
    std::vector<std::string> bad, labels;
    for (const auto& r : phi_resolved_) {
      const auto& rf = m.reducible[r.index];
      if (r.fiber) {
        labels.push_back(r.fiber->label());
        if (!label_matches(*r.fiber, rf.kodaira))
          bad.push_back(rf.label + " is " + r.fiber->label() + ", declared " + rf.kodaira);
      } else {
        labels.push_back(rf.kodaira + " (not located)");
        if (r.component_count != component_count_of_label(rf.kodaira))
          bad.push_back(rf.label + " has " + std::to_string(r.component_count) + " components, " + rf.kodaira +
                        " has " + std::to_string(component_count_of_label(rf.kodaira)));
      }
    }
    if (!bad.empty()) return fail(join(bad, "; "));
    const long st = shioda_tate_rank(phi_resolved_, m.rho);
    pass(label_summary(labels) + "; Shioda-Tate rank " + std::to_string(st) +
         (m.fibers_complete ? "" : " (upper bound, list not complete)"));
  }

  void phi_mw() {
    const FibrationModel& m = rec_.phi->second;
    if (rec_.phi_mw) {
      if (!passed("phi-fibers")) skip("phi-fibers did not pass");
      else if (!m.fibers_complete) fail("fiber list of phi is not declared complete");
      else {
        const long st = shioda_tate_rank(phi_resolved_, m.rho);
        if (st > 0) pass("Shioda-Tate rank " + std::to_string(st));
        else fail("Shioda-Tate rank 0");
      }
    }
    if (!passed("phi-fibers")) return;
    for (const auto& s : m.sections) {
      if (s == m.zero_section) continue;
      try {
        add("phi-height", CheckStatus::Info,
            "<" + s + "," + s + "> = " + height_pairing(cfg_, m, phi_resolved_, s).get_str() + " (zero " +
                m.zero_section + ")");
      } catch (const ValidationError& e) {
        add("phi-height", CheckStatus::Info, std::string("unavailable: ") + e.what());
      }
    }
  }

  void candidate_fiber(const CandidateSpec& c) {
    const DivisorClass& e = rec_.config.divisor(c.divisor);
    const FiberVerdict v = is_fiber_class(e, cfg_);
    const std::string sq = c.divisor + "^2 = " + v.self_intersection.get_str();
    if (!v.ok) return fail(sq + ": " + v.diagnostic);
    if (!label_matches(*v.fiber, c.type)) return fail(c.divisor + " is " + v.fiber->label() + ", claimed " + c.type);
    pass(v.fiber->label() + ", " + std::to_string(v.fiber->component_count()) + " components, " + sq);
  }

  void candidate_mw(const CandidateSpec& c) {
    if (!passed(c.divisor + "-fiber")) return skip(c.divisor + "-fiber did not pass");
    const DivisorClass& e = rec_.config.divisor(c.divisor);
    EvidenceOutcome out;
    switch (c.plan) {
      case EvidenceKind::Lemma54Case1:
      case EvidenceKind::Lemma54Case2:
        out = lemma54_check(e, cfg_, rec_.fixed, rec_.rho);
        break;
      case EvidenceKind::ShiodaTate: {
        std::vector<std::size_t> counts;
        if (!c.zero.empty()) {
          for (const auto& r : resolve(cfg_, candidate_model(rec_, c))) counts.push_back(r.component_count);
        } else {
          counts.push_back(is_fiber_class(e, cfg_).fiber->component_count());
          for (const auto& rf : c.extra)
            counts.push_back(rf.divisor ? is_fiber_class(*rf.divisor, cfg_).fiber->component_count() : rf.components);
        }
        const long st = shioda_tate_rank(rec_.rho, counts);
        if (!c.complete) out.failure = "fiber list not declared complete";
        else if (st <= 0) out.failure = "Shioda-Tate rank 0";
        else out.evidence = MWEvidence{EvidenceKind::ShiodaTate, "Shioda-Tate rank " + std::to_string(st)};
        break;
      }
      case EvidenceKind::HeightPositive:
      case EvidenceKind::AdditiveSameComponent: {
        const FibrationModel m = candidate_model(rec_, c);
        const auto fibers = resolve(cfg_, m);
        out = infinite_order_certificate(cfg_, m, fibers, c.section);
        break;
      }
    }
    if (!out) return fail(out.failure);
    if (out.evidence->kind != c.plan)
      return fail("evidence is " + to_string(out.evidence->kind) + ", planned " + to_string(c.plan) + " (" +
                  out.evidence->detail + ")");
    evidence_[c.divisor] = *out.evidence;
    pass(to_string(out.evidence->kind) + ": " + out.evidence->detail);
  }

  void candidate_height(const CandidateSpec& c) {
    const std::string name = c.divisor + "-height";
    const std::string pair = "<" + c.section + "," + c.section + ">";
    try {
      const FibrationModel m = candidate_model(rec_, c);
      const auto fibers = resolve(cfg_, m);
      try {
        const std::string h = height_pairing(cfg_, m, fibers, c.section).get_str();
        add(name, CheckStatus::Info,
            m.fibers_complete ? pair + " = " + h : pair + " <= " + h + " (fiber list not complete)");
      } catch (const ValidationError&) {
        // Fibers without incidence data only lower the height further.
        std::vector<ResolvedFiber> located;
        std::vector<std::string> missing;
        for (const auto& r : fibers) {
          if (r.fiber) located.push_back(r);
          else missing.push_back(m.reducible[r.index].label);
        }
        add(name, CheckStatus::Info,
            pair + " <= " + height_pairing(cfg_, m, located, c.section).get_str() + " (no incidence data for " +
                join(missing, ", ") + ")");
      }
    } catch (const std::exception& e) {
      add(name, CheckStatus::Info, std::string("unavailable: ") + e.what());
    }
  }

  void cor36() {
    std::vector<std::string> blocked;
    for (const auto& c : rec_.candidates)
      for (const auto& n : {c.divisor + "-fiber", c.divisor + "-mw"})
        if (!passed(n)) blocked.push_back(n);
    if (!blocked.empty()) return skip(join(blocked, ", ") + " did not pass");
    if (rec_.candidates.size() != 2) return fail("needs exactly two candidates");
    std::vector<FibrationCandidate> fc;
    for (const auto& c : rec_.candidates) {
      FibrationCandidate f;
      f.label = c.divisor;
      f.e = rec_.config.divisor(c.divisor);
      f.r = c.r;
      f.a = c.a;
      f.b = c.b;
      f.evidence = evidence_.at(c.divisor);
      fc.push_back(std::move(f));
    }
    Cor36Report r;
    try {
      r = cor36_verify(fc[0], fc[1], rec_.pivot, rec_.witness, cfg_);
    } catch (const ValidationError& e) {
      return fail(std::string("malformed input: ") + e.what());
    }
    if (!r.pass) {
      for (const auto& cl : r.clauses)
        if (!cl.ok) return fail("clause " + cl.clause + ": " + cl.detail);
    }
    std::vector<std::string> parts;
    for (const auto& cl : r.clauses)
      if (cl.clause >= "c") parts.push_back(cl.detail);
    pass(join(parts, "; "));
  }

  void qbasis() {
    const QBasisVerdict v = qbasis_check();
    const std::string d = "det = " + v.det.get_str() + " over " + std::to_string(v.gram.rows()) + " curves";
    if (v.ok()) pass(d);
    else fail(d);
  }

  const CaseRecord& rec_;
  const CurveConfig& cfg_;
  CaseReport rep_;
  std::string current_;
  std::vector<ResolvedFiber> phi_resolved_;
  std::map<std::string, MWEvidence> evidence_;
};

}  // namespace

CaseReport verify_case(const CaseRecord& rec) { return Verifier(rec).run(); }

std::vector<CaseReport> verify_all(const std::vector<CaseRecord>& records) {
  std::vector<std::future<CaseReport>> jobs;
  jobs.reserve(records.size());
  for (const auto& r : records) jobs.push_back(std::async(std::launch::async, [&r] { return verify_case(r); }));
  std::vector<CaseReport> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string reports_json(const std::vector<CaseReport>& reports) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) {
      Integer z;
      if (z.set_str(v, 10) == 0 && z.fits_slong_p() && z.get_str() == v) params[k] = z.get_si();
      else params[k] = v;
    }
    row["params"] = params;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    row["checks"] = checks;
    row["status"] = r.pass() ? "PASS" : "FAIL";
    rows.push_back(row);
  }
  return rows.dump(2) + "\n";
}

std::string reports_table(const std::vector<CaseReport>& reports, bool verbose) {
  std::size_t width = 4;
  for (const auto& r : reports) width = std::max(width, r.row_name().size());
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : reports) {
    const std::string name = r.row_name();
    os << name << std::string(width - name.size() + 2, ' ') << (r.pass() ? "PASS" : "FAIL");
    if (const CheckResult* f = r.first_failure()) os << "  " << f->name << ": " << f->detail;
    os << "\n";
    if (verbose) os << r.trace();
    passed += r.pass();
  }
  os << reports.size() << " rows, " << passed << " PASS, " << reports.size() - passed << " FAIL\n";
  return os.str();
}

}  // namespace k3
