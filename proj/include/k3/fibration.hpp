#pragma once

// Elliptic fibrations on K3 surfaces: Shioda-Tate rank, the positivity
// criteria for fixed-curve configurations, height pairing, and the
// two-fibration certificate.

#include "k3/curves.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace k3 {

struct ReducibleFiber {
  std::string label;    ///< divisor label, or a free-form name when not located
  std::string kodaira;  ///< declared Kodaira label
  /// Class inside the configuration; absent when the components are not all
  /// curves of the configuration (only the component count is then known).
  std::optional<DivisorClass> divisor;
  std::size_t components = 0;  ///< used only when `divisor` is absent
  /// Declared incidence section -> component name. Optional; when given it
  /// must agree with the incidence derived from the configuration.
  std::map<std::string, std::string> section_meets;
};

struct FibrationModel {
  long rho = 0;
  std::string fiber_label;
  DivisorClass fiber_class;
  std::string zero_section;
  std::vector<std::string> sections;
  std::vector<ReducibleFiber> reducible;
  /// True when `reducible` is asserted to be the full list of reducible fibers.
  bool fibers_complete = false;
};

struct ResolvedFiber {
  std::size_t index = 0;  ///< position in FibrationModel::reducible
  std::optional<KodairaFiber> fiber;
  std::size_t component_count = 0;
  /// section name -> configuration index of the component it meets
  std::map<std::string, std::size_t> incidence;
};

/// Validates a model against its configuration (sections meet the fiber
/// once, located reducible fibers are fiber classes disjoint from each other
/// and orthogonal to the fiber class) and derives section incidence.
/// Throws ValidationError.
std::vector<ResolvedFiber> resolve(const CurveConfig& cfg, const FibrationModel& model);

/// rho - 2 - sum (m_v - 1). Throws std::domain_error when negative and
/// std::invalid_argument when rho < 2 or some m_v is 0.
long shioda_tate_rank(long rho, const std::vector<std::size_t>& component_counts);
long shioda_tate_rank(const std::vector<ResolvedFiber>& fibers, long rho);

enum class EvidenceKind { ShiodaTate, Lemma54Case1, Lemma54Case2, HeightPositive, AdditiveSameComponent };

std::string to_string(EvidenceKind k);
/// Inverse of to_string; throws std::invalid_argument.
EvidenceKind evidence_kind_from_string(const std::string& s);

struct MWEvidence {
  EvidenceKind kind = EvidenceKind::ShiodaTate;
  std::string detail;
};

/// Either evidence or the reason none could be produced.
struct EvidenceOutcome {
  std::optional<MWEvidence> evidence;
  std::string failure;
  explicit operator bool() const { return evidence.has_value(); }
};

/// Throws ValidationError when `e` is not a fiber class.
EvidenceOutcome lemma54_check(const DivisorClass& e, const CurveConfig& cfg,
                              const std::vector<std::string>& fixed, long rho);

/// Local correction term of one reducible fiber for the pair (P, Q), given
/// the positions inside f.components of the components met by O, P and Q.
/// Throws ValidationError if a section meets a component of multiplicity > 1.
Rational local_contribution(const KodairaFiber& f, std::size_t o, std::size_t p, std::size_t q);

/// <P, Q> = 2 + P.O + Q.O - P.Q - sum of local terms. Throws ValidationError
/// when some reducible fiber has no incidence data for P, Q or O.
Rational height_pairing(const CurveConfig& cfg, const FibrationModel& model,
                        const std::vector<ResolvedFiber>& fibers, const std::string& p, const std::string& q);
Rational height_pairing(const CurveConfig& cfg, const FibrationModel& model,
                        const std::vector<ResolvedFiber>& fibers, const std::string& p);

/// Height evidence is used only when the fiber list is declared complete;
/// otherwise an additive fiber where P and O meet the same component is
/// sought. Throws std::invalid_argument when P is the zero section.
EvidenceOutcome infinite_order_certificate(const CurveConfig& cfg, const FibrationModel& model,
                                           const std::vector<ResolvedFiber>& fibers, const std::string& p);

/// One of the two fibrations in the certificate: E = D + a R + b C.
struct FibrationCandidate {
  std::string label;
  DivisorClass e;
  std::string r;
  Integer a = 1;
  Integer b = 1;
  std::optional<MWEvidence> evidence;
  std::string evidence_failure;
};

struct TriplePointWitness {
  std::string c, r1, r2;
};

struct ClauseResult {
  std::string clause;  ///< "a" .. "e"
  bool ok = false;
  std::string detail;
};

struct Cor36Report {
  bool pass = false;
  std::vector<ClauseResult> clauses;
  /// First failing clause, "" on PASS.
  std::string first_failure() const;
};

/// Throws ValidationError for a malformed decomposition (a or b not
/// positive, D not effective) or a missing witness when R1 != R2.
Cor36Report cor36_verify(const FibrationCandidate& e1, const FibrationCandidate& e2, const std::string& c,
                         const std::optional<TriplePointWitness>& witness, const CurveConfig& cfg);

}  // namespace k3
