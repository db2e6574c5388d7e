#include "k3/fibration.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace k3 {

std::vector<ResolvedFiber> resolve(const CurveConfig& cfg, const FibrationModel& model) {
  if (model.fiber_class.size() != cfg.size())
    throw ValidationError("fiber class is not indexed by the configuration");
  if (model.sections.empty()) throw ValidationError("fibration has no sections");
  if (std::find(model.sections.begin(), model.sections.end(), model.zero_section) == model.sections.end())
    throw ValidationError("zero section '" + model.zero_section + "' is not among the sections");

  std::set<std::string> seen_sections;
  for (const auto& s : model.sections) {
    if (!seen_sections.insert(s).second) throw ValidationError("section '" + s + "' listed twice");
    const Integer v = pairing(DivisorClass::curve(cfg, s), model.fiber_class, cfg);
    if (v != 1) throw ValidationError("section " + s + " meets the fiber class " + v.get_str() + " times");
  }

  std::vector<ResolvedFiber> out;
  std::vector<std::vector<std::size_t>> supports;
  for (std::size_t i = 0; i < model.reducible.size(); ++i) {
    const auto& rf = model.reducible[i];
    ResolvedFiber r;
    r.index = i;
    if (!rf.divisor) {
      r.component_count = rf.components ? rf.components : component_count_of_label(rf.kodaira);
      if (!rf.section_meets.empty())
        throw ValidationError("fiber " + rf.label + " is not located in the configuration but declares incidence");
      out.push_back(std::move(r));
      continue;
    }
    const DivisorClass& d = *rf.divisor;
    if (d.size() != cfg.size()) throw ValidationError("fiber " + rf.label + " is not indexed by the configuration");
    if (!d.is_effective()) throw ValidationError("fiber " + rf.label + " is not effective");
    const FiberVerdict v = is_fiber_class(d, cfg);
    if (!v.ok) throw ValidationError("fiber " + rf.label + ": " + v.diagnostic);
    if (pairing(d, model.fiber_class, cfg) != 0)
      throw ValidationError("fiber " + rf.label + " is not orthogonal to the fiber class");
    r.fiber = v.fiber;
    r.component_count = v.fiber->component_count();

    const auto support = d.support();
    for (const auto& other : supports)
      for (auto a : support)
        for (auto b : other)
          if (a == b || cfg.meet(a, b) != 0)
            throw ValidationError("fiber " + rf.label + " shares or meets a component of another fiber (" +
                                  cfg.name(a) + ", " + cfg.name(b) + ")");
    supports.push_back(support);

    for (const auto& s : model.sections) {
      const std::size_t si = cfg.index(s);
      if (d[si] != 0) throw ValidationError("section " + s + " is a component of fiber " + rf.label);
      const Integer total = pairing(DivisorClass::curve(cfg, s), d, cfg);
      if (total != 1)
        throw ValidationError("section " + s + " meets fiber " + rf.label + " " + total.get_str() + " times");
      for (auto c : support)
        if (cfg.meet(si, c) != 0) r.incidence[s] = c;
    }
    for (const auto& [s, comp] : rf.section_meets) {
      auto it = r.incidence.find(s);
      if (it == r.incidence.end()) throw ValidationError("declared incidence for unknown section " + s);
      if (cfg.name(it->second) != comp)
        throw ValidationError("declared incidence " + s + " -> " + comp + " in fiber " + rf.label +
                              " disagrees with the configuration (" + cfg.name(it->second) + ")");
    }
    out.push_back(std::move(r));
  }
  return out;
}

long shioda_tate_rank(long rho, const std::vector<std::size_t>& counts) {
  if (rho < 2) throw std::invalid_argument("Shioda-Tate needs rho >= 2");
  long r = rho - 2;
  for (auto m : counts) {
    if (m == 0) throw std::invalid_argument("fiber with zero components");
    r -= static_cast<long>(m) - 1;
  }
  if (r < 0) throw std::domain_error("Shioda-Tate rank " + std::to_string(r) + " < 0: impossible fiber list");
  return r;
}

long shioda_tate_rank(const std::vector<ResolvedFiber>& fibers, long rho) {
  std::vector<std::size_t> counts;
  for (const auto& f : fibers) counts.push_back(f.component_count);
  return shioda_tate_rank(rho, counts);
}

std::string to_string(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::ShiodaTate: return "shioda-tate";
    case EvidenceKind::Lemma54Case1: return "lemma54-case1";
    case EvidenceKind::Lemma54Case2: return "lemma54-case2";
    case EvidenceKind::HeightPositive: return "height-positive";
    case EvidenceKind::AdditiveSameComponent: return "additive-same-component";
  }
  return "?";
}

EvidenceKind evidence_kind_from_string(const std::string& s) {
  for (auto k : {EvidenceKind::ShiodaTate, EvidenceKind::Lemma54Case1, EvidenceKind::Lemma54Case2,
                 EvidenceKind::HeightPositive, EvidenceKind::AdditiveSameComponent})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown evidence kind '" + s + "'");
}

EvidenceOutcome lemma54_check(const DivisorClass& e, const CurveConfig& cfg, const std::vector<std::string>& fixed,
                              long rho) {
  const FiberVerdict v = is_fiber_class(e, cfg);
  if (!v.ok) throw ValidationError("not a fiber class: " + v.diagnostic);
  const long r = static_cast<long>(v.fiber->component_count());
  const long k = static_cast<long>(fixed.size());
  std::vector<std::string> missing;
  for (const auto& c : fixed)
    if (e[cfg.index(c)] == 0) missing.push_back(c);
  const long in_support = k - static_cast<long>(missing.size());
  const std::string counts = "|I|=" + std::to_string(in_support) + ", k=" + std::to_string(k) +
                             ", r=" + std::to_string(r) + ", rho=" + std::to_string(rho);

  EvidenceOutcome out;
  if (missing.empty()) {
    if (r < rho - 1) {
      out.evidence = MWEvidence{EvidenceKind::Lemma54Case1, counts + ", r < rho-1"};
    } else {
      out.failure = counts + ": clause r < rho-1 fails";
    }
    return out;
  }
  if (missing.size() == 1) {
    const std::string& ci = missing.front();
    const Integer ce = pairing(DivisorClass::curve(cfg, ci), e, cfg);
    if (ce != 0) {
      out.failure = counts + ": " + ci + ".E = " + ce.get_str() + ", clause C_i.E = 0 fails";
    } else if (r >= rho - 2) {
      out.failure = counts + ": clause r < rho-2 fails";
    } else {
      out.evidence = MWEvidence{EvidenceKind::Lemma54Case2, counts + ", " + ci + ".E = 0, r < rho-2"};
    }
    return out;
  }
  out.failure = counts + ": |I| is neither k nor k-1";
  return out;
}

Rational local_contribution(const KodairaFiber& f, std::size_t o, std::size_t p, std::size_t q) {
  const std::size_t r = f.components.size();
  for (auto x : {o, p, q}) {
    if (x >= r) throw std::out_of_range("local_contribution: component position");
    if (f.multiplicities[x] != 1)
      throw ValidationError("section meets a component of multiplicity " + f.multiplicities[x].get_str());
  }
  if (p == o || q == o) return 0;
  switch (f.kind) {
    case FiberKind::In: {
      const std::size_t n = f.n;
      std::size_t i = (p + n - o) % n;
      std::size_t j = (q + n - o) % n;
      if (i > j) std::swap(i, j);
      Rational c(static_cast<long>(i * (n - j)), static_cast<long>(n));
      c.canonicalize();
      return c;
    }
    case FiberKind::InStar: {
      Rational quarter_b(static_cast<long>(f.n), 4L);
      quarter_b.canonicalize();
      auto end_of = [&](std::size_t x) { return x < 2 ? 0 : 1; };
      const bool p_far = end_of(p) != end_of(o);
      const bool q_far = end_of(q) != end_of(o);
      if (p == q) return p_far ? Rational(1) + quarter_b : Rational(1);
      if (p_far && q_far) return Rational(1, 2) + quarter_b;
      return Rational(1, 2);
    }
    case FiberKind::IVStar: return p == q ? Rational(4, 3) : Rational(2, 3);
    case FiberKind::IIIStar: return Rational(3, 2);
    case FiberKind::IIStar: return 0;
  }
  return 0;
}

namespace {

Integer section_meet(const CurveConfig& cfg, const std::string& a, const std::string& b) {
  return a == b ? Integer(-2) : cfg.meet(a, b);
}

std::size_t incidence_position(const CurveConfig& cfg, const FibrationModel& model, const ResolvedFiber& rf,
                               const std::string& s) {
  const auto& label = model.reducible.at(rf.index).label;
  if (!rf.fiber) throw ValidationError("no incidence data for fiber " + label);
  auto it = rf.incidence.find(s);
  if (it == rf.incidence.end()) throw ValidationError("no incidence data for " + s + " on fiber " + label);
  auto pos = rf.fiber->position(it->second);
  if (!pos) throw ValidationError("component " + cfg.name(it->second) + " not in fiber " + label);
  return *pos;
}

}  // namespace

Rational height_pairing(const CurveConfig& cfg, const FibrationModel& model, const std::vector<ResolvedFiber>& fibers,
                        const std::string& p, const std::string& q) {
  const std::string& o = model.zero_section;
  for (const auto& s : {p, q})
    if (std::find(model.sections.begin(), model.sections.end(), s) == model.sections.end())
      throw ValidationError(s + " is not a section of the fibration");
  Rational h = 2;
  h += section_meet(cfg, p, o);
  h += section_meet(cfg, q, o);
  h -= section_meet(cfg, p, q);
  for (const auto& rf : fibers) {
    const std::size_t po = incidence_position(cfg, model, rf, o);
    const std::size_t pp = incidence_position(cfg, model, rf, p);
    const std::size_t pq = incidence_position(cfg, model, rf, q);
    h -= local_contribution(*rf.fiber, po, pp, pq);
  }
  return h;
}

Rational height_pairing(const CurveConfig& cfg, const FibrationModel& model, const std::vector<ResolvedFiber>& fibers,
                        const std::string& p) {
  return height_pairing(cfg, model, fibers, p, p);
}

EvidenceOutcome infinite_order_certificate(const CurveConfig& cfg, const FibrationModel& model,
                                           const std::vector<ResolvedFiber>& fibers, const std::string& p) {
  if (p == model.zero_section) throw std::invalid_argument("P is the zero section");
  EvidenceOutcome out;
  std::string height_note;
  if (model.fibers_complete) {
    try {
      const Rational h = height_pairing(cfg, model, fibers, p);
      if (h > 0) {
        out.evidence = MWEvidence{EvidenceKind::HeightPositive, "<" + p + "," + p + "> = " + h.get_str()};
        return out;
      }
      height_note = "<" + p + "," + p + "> = " + h.get_str() + " is not positive";
    } catch (const ValidationError& e) {
      height_note = std::string("height unavailable: ") + e.what();
    }
  } else {
    height_note = "fiber list not declared complete, height not used";
  }
  for (const auto& rf : fibers) {
    if (!rf.fiber || !rf.fiber->additive()) continue;
    auto ip = rf.incidence.find(p);
    auto io = rf.incidence.find(model.zero_section);
    if (ip == rf.incidence.end() || io == rf.incidence.end()) continue;
    if (ip->second == io->second) {
      out.evidence = MWEvidence{EvidenceKind::AdditiveSameComponent,
                                p + " and " + model.zero_section + " meet component " + cfg.name(ip->second) +
                                    " of the " + rf.fiber->label() + " fiber " + model.reducible[rf.index].label};
      return out;
    }
  }
  out.failure = height_note + "; no additive fiber where " + p + " and " + model.zero_section +
                " meet the same component";
  return out;
}

std::string Cor36Report::first_failure() const {
  for (const auto& c : clauses)
    if (!c.ok) return c.clause;
  return "";
}

Cor36Report cor36_verify(const FibrationCandidate& e1, const FibrationCandidate& e2, const std::string& c,
                         const std::optional<TriplePointWitness>& witness, const CurveConfig& cfg) {
  const std::size_t ci = cfg.index(c);
  for (const auto* e : {&e1, &e2}) {
    if (e->a <= 0 || e->b <= 0)
      throw ValidationError("malformed decomposition of " + e->label + ": coefficients must be positive");
    DivisorClass d = e->e;
    d[cfg.index(e->r)] -= e->a;
    d[ci] -= e->b;
    if (!d.is_effective())
      throw ValidationError("malformed decomposition of " + e->label + ": " + e->label + " - " + e->a.get_str() +
                            " " + e->r + " - " + e->b.get_str() + " " + c + " is not effective");
  }
  if (e1.r != e2.r && !witness) throw ValidationError("R1 != R2 and no triple-point witness is given");

  Cor36Report rep;
  {
    const FiberVerdict v1 = is_fiber_class(e1.e, cfg);
    const FiberVerdict v2 = is_fiber_class(e2.e, cfg);
    rep.clauses.push_back({"a", v1.ok && v2.ok, e1.label + ": " + v1.diagnostic + "; " + e2.label + ": " + v2.diagnostic});
  }
  {
    const bool ok = e1.evidence.has_value() && e2.evidence.has_value();
    std::string d = e1.label + ": " + (e1.evidence ? to_string(e1.evidence->kind) : "none (" + e1.evidence_failure + ")");
    d += "; " + e2.label + ": " + (e2.evidence ? to_string(e2.evidence->kind) : "none (" + e2.evidence_failure + ")");
    rep.clauses.push_back({"b", ok, d});
  }
  {
    const Integer p = pairing(e1.e, e2.e, cfg);
    rep.clauses.push_back({"c", p > 0, e1.label + "." + e2.label + " = " + p.get_str()});
  }
  rep.clauses.push_back({"d", c != e1.r && c != e2.r, "C=" + c + ", R1=" + e1.r + ", R2=" + e2.r});
  if (e1.r == e2.r) {
    const Integer cr = cfg.meet(c, e1.r);
    rep.clauses.push_back({"e", cr > 0, c + "." + e1.r + " = " + cr.get_str()});
  } else {
    const auto& w = *witness;
    const bool names_ok = w.c == c && ((w.r1 == e1.r && w.r2 == e2.r) || (w.r1 == e2.r && w.r2 == e1.r));
    std::string d = "witness (" + w.c + ", " + w.r1 + ", " + w.r2 + ")";
    bool ok = names_ok;
    if (!names_ok) d += " does not name C, R1, R2";
    if (names_ok) {
      const Integer a = cfg.meet(c, e1.r), b = cfg.meet(c, e2.r), r = cfg.meet(e1.r, e2.r);
      ok = a > 0 && b > 0 && r > 0;
      d += ": C.R1 = " + a.get_str() + ", C.R2 = " + b.get_str() + ", R1.R2 = " + r.get_str();
    }
    rep.clauses.push_back({"e", ok, d});
  }
  rep.pass = std::all_of(rep.clauses.begin(), rep.clauses.end(), [](const ClauseResult& r) { return r.ok; });
  return rep;
}

}  // namespace k3
