#pragma once

// Configurations of smooth rational curves and Kodaira fiber recognition.

#include "k3/errors.hpp"
#include "k3/linalg.hpp"
#include "k3/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3 {

/// Named (-2)-curves with their intersection numbers. Unlisted pairs meet 0
/// times; every diagonal entry is -2.
class CurveConfig {
 public:
  CurveConfig() = default;
  explicit CurveConfig(std::vector<std::string> names);

  /// Returns the index of the new curve; throws ValidationError on duplicates.
  std::size_t add_curve(const std::string& name);
  /// Symmetric update; multiplicity must be >= 0 and the curves distinct.
  void set_meet(const std::string& a, const std::string& b, long multiplicity);
  void set_meet(std::size_t a, std::size_t b, const Integer& multiplicity);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws ValidationError for an unknown name.
  std::size_t index(const std::string& name) const;

  const IntMatrix& matrix() const { return inter_; }
  const Integer& meet(std::size_t i, std::size_t j) const { return inter_(i, j); }
  const Integer& meet(const std::string& a, const std::string& b) const;

  /// Restricted intersection matrix in the given index order.
  IntMatrix restricted(const std::vector<std::size_t>& support) const;

  friend bool operator==(const CurveConfig& a, const CurveConfig& b) {
    return a.names_ == b.names_ && a.inter_ == b.inter_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  IntMatrix inter_;
};

/// Integer combination of the curves of one configuration.
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(std::size_t n) : coeffs_(n) {}
  DivisorClass(const CurveConfig& cfg, const std::vector<std::pair<std::string, long>>& terms);

  static DivisorClass curve(const CurveConfig& cfg, const std::string& name);

  std::size_t size() const { return coeffs_.size(); }
  Integer& operator[](std::size_t i) { return coeffs_.at(i); }
  const Integer& operator[](std::size_t i) const { return coeffs_.at(i); }
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  std::vector<std::size_t> support() const;
  bool is_effective() const;
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Integer& s, DivisorClass d);
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  /// "C1 + 2 F30 + ..." in configuration order.
  std::string to_string(const CurveConfig& cfg) const;

 private:
  std::vector<Integer> coeffs_;
};

/// D1^T * inter * D2. Throws std::invalid_argument on size mismatch.
Integer pairing(const DivisorClass& d1, const DivisorClass& d2, const CurveConfig& cfg);

bool is_connected(const CurveConfig& cfg, const std::vector<std::size_t>& support);

enum class FiberKind { In, InStar, IIStar, IIIStar, IVStar };

struct KodairaFiber {
  FiberKind kind = FiberKind::In;
  unsigned n = 0;  ///< n for I_n, b for I_b*, unused otherwise
  /// Configuration indices in canonical order:
  ///   I_n   cyclic order
  ///   I_b*  end-A leaves, chain, end-B leaves
  ///   E     breadth-first from the branch node
  std::vector<std::size_t> components;
  std::vector<Integer> multiplicities;

  std::size_t component_count() const { return components.size(); }
  bool additive() const { return kind != FiberKind::In; }
  /// "I6", "I2/III", "I3/IV", "I12*", "IV*", ...
  std::string label() const;
  /// Position of a configuration index inside `components`, if present.
  std::optional<std::size_t> position(std::size_t curve) const;
};

/// Number of components of the kind named by `label` ("I4", "I0*", "II*", "III", ...).
/// Throws std::invalid_argument for unknown labels.
std::size_t component_count_of_label(const std::string& label);

/// Whether a classifier result agrees with a declared label. "I2", "III" and
/// "I2/III" all match the same fiber, as do "I3", "IV" and "I3/IV".
bool label_matches(const KodairaFiber& f, const std::string& declared);

/// Throws ValidationError (not connected, wrong inertia, shape not affine ADE).
KodairaFiber classify_fiber(const CurveConfig& cfg, const std::vector<std::size_t>& support);
KodairaFiber classify_fiber(const CurveConfig& cfg, const std::vector<std::string>& support);

struct FiberVerdict {
  bool ok = false;
  Integer self_intersection;
  std::optional<KodairaFiber> fiber;
  std::string diagnostic;
};

/// Throws std::invalid_argument if `d` has a negative coefficient.
FiberVerdict is_fiber_class(const DivisorClass& d, const CurveConfig& cfg);

struct ComponentGroup {
  std::vector<unsigned> cyclic_orders;  ///< nontrivial cyclic factors
  unsigned order() const;
  std::string to_string() const;  ///< "Z/3", "(Z/2)^2", "trivial"
  friend bool operator==(const ComponentGroup&, const ComponentGroup&) = default;
};

ComponentGroup component_group(const KodairaFiber& f);

/// Root lattice spanned by the non-identity components.
LatticeTerm root_lattice_of(const KodairaFiber& f);

/// Violations of the fixed-curve constraints: fixed curves pairwise disjoint,
/// C.H = 2 for every other curve H, and C.F = 4 for every listed fiber class,
/// where C is the sum of the fixed curves. Empty means the config passes.
std::vector<std::string> theta_violations(const CurveConfig& cfg, const std::vector<std::string>& fixed,
                                          const std::vector<std::pair<std::string, DivisorClass>>& fibers);

}  // namespace k3
