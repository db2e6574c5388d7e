#pragma once

// Replays case records check by check.

#include "k3/cases.hpp"

#include <string>
#include <vector>

namespace k3 {

enum class CheckStatus { Pass, Fail, Skip, Info };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct CaseReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<CheckResult> checks;

  /// No check failed.
  bool pass() const;
  std::string row_name() const;
  /// First failing check, or nullptr.
  const CheckResult* first_failure() const;
  const CheckResult* find(const std::string& name) const;
  /// One line per check.
  std::string trace() const;
};

/// Never throws for record content; problems become FAIL entries.
/// Checks, in order: lattice-invariants, theta-constraints, phi-fibers,
/// phi-mw, E1-fiber, E2-fiber, E1-mw, E2-mw, cor36, qbasis. A check whose
/// inputs failed earlier is SKIP. Heights are reported as INFO entries.
CaseReport verify_case(const CaseRecord& rec);

/// Evaluates records concurrently; the result is in input order.
std::vector<CaseReport> verify_all(const std::vector<CaseRecord>& records);

std::string reports_json(const std::vector<CaseReport>& reports);
std::string reports_table(const std::vector<CaseReport>& reports, bool verbose);

/// The fibration |E| of a candidate, as a model over the record's config
/// (E first, then the declared extra fibers).
FibrationModel candidate_model(const CaseRecord& rec, const CandidateSpec& c);

}  // namespace k3
