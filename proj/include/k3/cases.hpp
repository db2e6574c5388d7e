#pragma once

// Built-in certificate records for the fixed-curve constructions, and their
// text form.

#include "k3/config_format.hpp"
#include "k3/fibration.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace k3 {

/// One of the two fibrations E1, E2 of a record, with its planned evidence.
struct CandidateSpec {
  std::string divisor;  ///< divisor label in the record's config (also the candidate's name)
  std::string type;     ///< claimed Kodaira label
  std::string r;
  Integer a = 1, b = 1;
  EvidenceKind plan = EvidenceKind::Lemma54Case1;
  /// Sections for height / additive / Shioda-Tate plans.
  std::string zero, section;
  /// Reducible fibers of this fibration other than E itself, in the
  /// reducible-list syntax of a fibration block.
  std::vector<ReducibleFiber> extra;
  bool complete = false;
};

struct CaseRecord {
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  /// (rank, a, delta) of a 2-elementary record; absent for the singular K3.
  std::optional<std::array<long, 3>> triple;
  std::string lattice;
  std::optional<long> k;
  long rho = 0;
  /// Rank of a summand left unspecified and appended to `lattice`.
  long opaque_rank = 0;
  std::vector<std::string> fixed;
  text::ConfigSection config;
  std::optional<std::pair<std::string, FibrationModel>> phi;
  /// Claim that phi has positive Mordell-Weil rank by Shioda-Tate.
  bool phi_mw = false;
  std::vector<CandidateSpec> candidates;
  std::string pivot;
  std::optional<TriplePointWitness> witness;
  bool qbasis = false;
  /// Intersection choices not forced by the construction itself.
  std::vector<std::string> flags;

  const CandidateSpec& candidate(const std::string& name) const;
  CandidateSpec& candidate(const std::string& name);
  /// "rho11[t=0]", or the bare id without parameters.
  std::string row_name() const;
};

/// All rows in canonical order: rho11[t=0,1,2], rho12 ... rho20, singular-k3[variant=none,I2,III].
std::vector<CaseRecord> builtin_cases();

/// Rows whose id is `id`, restricted to the given parameter value if any.
std::vector<CaseRecord> select_cases(const std::vector<CaseRecord>& all, const std::string& id,
                                     const std::optional<std::string>& param);

/// Reads `case <id>:` blocks. Throws ParseError.
std::vector<CaseRecord> load_cases(std::string_view text);
std::string dump_case(const CaseRecord& rec);

/// The eleven curves C, H1..H9, H1' of the (11,11,1) configuration.
text::ConfigSection qbasis_config();
std::vector<std::string> qbasis_curves();

struct QBasisVerdict {
  IntMatrix gram;
  Integer det;
  bool ok() const { return det != 0; }
};
/// Gram matrix of the named curves. Throws ValidationError for unknown names.
QBasisVerdict qbasis_check(const CurveConfig& cfg, const std::vector<std::string>& curves);
QBasisVerdict qbasis_check();

/// A documented corruption of one built-in row that must fail exactly at `check`.
struct Mutation {
  std::string name;
  std::string row;    ///< row_name() of the target
  std::string check;  ///< first check expected to FAIL
  std::string description;
  std::function<void(CaseRecord&)> apply;
};
std::vector<Mutation> mutation_kit();

}  // namespace k3
