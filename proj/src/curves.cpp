#include "k3/curves.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace k3 {

CurveConfig::CurveConfig(std::vector<std::string> names) {
  for (const auto& n : names) add_curve(n);
}

std::size_t CurveConfig::add_curve(const std::string& name) {
  if (name.empty()) throw ValidationError("empty curve name");
  if (index_.count(name)) throw ValidationError("duplicate curve '" + name + "'");
  const std::size_t n = names_.size();
  IntMatrix next(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) next(i, j) = inter_(i, j);
  next(n, n) = -2;
  inter_ = std::move(next);
  names_.push_back(name);
  index_.emplace(name, n);
  return n;
}

void CurveConfig::set_meet(const std::string& a, const std::string& b, long multiplicity) {
  set_meet(index(a), index(b), Integer(multiplicity));
}

void CurveConfig::set_meet(std::size_t a, std::size_t b, const Integer& multiplicity) {
  if (a >= size() || b >= size()) throw ValidationError("curve index out of range");
  if (a == b) throw ValidationError("a curve cannot meet itself ('" + names_[a] + "')");
  if (multiplicity < 0) throw ValidationError("negative intersection number between distinct curves");
  inter_(a, b) = multiplicity;
  inter_(b, a) = multiplicity;
}

std::optional<std::size_t> CurveConfig::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CurveConfig::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown curve '" + name + "'");
  return it->second;
}

const Integer& CurveConfig::meet(const std::string& a, const std::string& b) const {
  return inter_(index(a), index(b));
}

IntMatrix CurveConfig::restricted(const std::vector<std::size_t>& support) const {
  return inter_.principal(support);
}

DivisorClass::DivisorClass(const CurveConfig& cfg, const std::vector<std::pair<std::string, long>>& terms)
    : coeffs_(cfg.size()) {
  for (const auto& [name, c] : terms) coeffs_[cfg.index(name)] += c;
}

DivisorClass DivisorClass::curve(const CurveConfig& cfg, const std::string& name) {
  DivisorClass d(cfg.size());
  d.coeffs_[cfg.index(name)] = 1;
  return d;
}

std::vector<std::size_t> DivisorClass::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) s.push_back(i);
  return s;
}

bool DivisorClass::is_effective() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c >= 0; });
}

bool DivisorClass::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.size() != size()) throw std::invalid_argument("divisor size mismatch");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (o.size() != size()) throw std::invalid_argument("divisor size mismatch");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

DivisorClass operator*(const Integer& s, DivisorClass d) {
  for (auto& c : d.coeffs_) c *= s;
  return d;
}

std::string DivisorClass::to_string(const CurveConfig& cfg) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Integer m = abs(c);
    if (m != 1) os << m << " ";
    os << cfg.name(i);
  }
  return first ? "0" : os.str();
}

Integer pairing(const DivisorClass& d1, const DivisorClass& d2, const CurveConfig& cfg) {
  if (d1.size() != cfg.size() || d2.size() != cfg.size())
    throw std::invalid_argument("pairing: divisor not indexed by this configuration");
  Integer total = 0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (d1[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < cfg.size(); ++j)
      if (d2[j] != 0) row += cfg.meet(i, j) * d2[j];
    total += d1[i] * row;
  }
  return total;
}

bool is_connected(const CurveConfig& cfg, const std::vector<std::size_t>& support) {
  if (support.empty()) return false;
  std::vector<bool> seen(support.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t b = 0; b < support.size(); ++b) {
      if (seen[b] || cfg.meet(support[a], support[b]) <= 0) continue;
      seen[b] = true;
      ++reached;
      queue.push_back(b);
    }
  }
  return reached == support.size();
}

std::string KodairaFiber::label() const {
  switch (kind) {
    case FiberKind::In:
      if (n == 2) return "I2/III";
      if (n == 3) return "I3/IV";
      return "I" + std::to_string(n);
    case FiberKind::InStar: return "I" + std::to_string(n) + "*";
    case FiberKind::IIStar: return "II*";
    case FiberKind::IIIStar: return "III*";
    case FiberKind::IVStar: return "IV*";
  }
  return "?";
}

std::optional<std::size_t> KodairaFiber::position(std::size_t curve) const {
  auto it = std::find(components.begin(), components.end(), curve);
  if (it == components.end()) return std::nullopt;
  return static_cast<std::size_t>(it - components.begin());
}

namespace {

std::string normalize_label(const std::string& l) {
  if (l == "I2" || l == "III" || l == "I2/III") return "I2/III";
  if (l == "I3" || l == "IV" || l == "I3/IV") return "I3/IV";
  return l;
}

bool parse_index(const std::string& digits, unsigned& out) {
  if (digits.empty() || digits.size() > 6) return false;
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return false;
  out = static_cast<unsigned>(std::stoul(digits));
  return true;
}

}  // namespace

std::size_t component_count_of_label(const std::string& raw) {
  const std::string l = normalize_label(raw);
  if (l == "I2/III") return 2;
  if (l == "I3/IV") return 3;
  if (l == "II*") return 9;
  if (l == "III*") return 8;
  if (l == "IV*") return 7;
  if (l == "I1" || l == "II") return 1;
  unsigned n = 0;
  if (l.size() >= 2 && l[0] == 'I') {
    if (l.back() == '*' && parse_index(l.substr(1, l.size() - 2), n)) return n + 5;
    if (parse_index(l.substr(1), n) && n >= 1) return n;
  }
  throw std::invalid_argument("unknown Kodaira label '" + raw + "'");
}

bool label_matches(const KodairaFiber& f, const std::string& declared) {
  return normalize_label(declared) == f.label();
}

KodairaFiber classify_fiber(const CurveConfig& cfg, const std::vector<std::string>& names) {
  std::vector<std::size_t> support;
  support.reserve(names.size());
  for (const auto& n : names) support.push_back(cfg.index(n));
  return classify_fiber(cfg, support);
}

KodairaFiber classify_fiber(const CurveConfig& cfg, const std::vector<std::size_t>& input) {
  if (input.empty()) throw ValidationError("empty fiber support");
  std::vector<std::size_t> support = input;
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    throw ValidationError("fiber support lists a curve twice");
  if (!is_connected(cfg, support)) throw ValidationError("fiber support is not connected");

  const std::size_t r = support.size();
  const IntMatrix m = cfg.restricted(support);
  const Inertia in = inertia(m);
  if (!(in == Inertia{0, r - 1, 1}))
    throw ValidationError("intersection matrix has inertia (" + std::to_string(in.positive) + "," +
                          std::to_string(in.negative) + "," + std::to_string(in.zero) +
                          "), not that of a fiber");

  const auto ker = kernel_basis(m);
  std::vector<Integer> mult = ker.at(0);
  for (const auto& x : mult)
    if (x <= 0) throw ValidationError("kernel vector is not positive");

  std::map<std::size_t, Integer> mult_of;
  for (std::size_t i = 0; i < r; ++i) mult_of[support[i]] = mult[i];

  // Adjacency among support curves, in configuration order.
  std::map<std::size_t, std::vector<std::size_t>> adj;
  std::size_t edges = 0;
  bool multi_edge = false;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const Integer& w = cfg.meet(support[i], support[j]);
      if (w == 0) continue;
      if (w > 1) multi_edge = true;
      adj[support[i]].push_back(support[j]);
      adj[support[j]].push_back(support[i]);
      ++edges;
    }
  auto degree = [&](std::size_t v) { return adj[v].size(); };

  KodairaFiber f;
  auto finish = [&](FiberKind kind, unsigned n, std::vector<std::size_t> order) {
    f.kind = kind;
    f.n = n;
    f.components = std::move(order);
    for (auto c : f.components) f.multiplicities.push_back(mult_of[c]);
    return f;
  };

  if (r == 2) {
    if (cfg.meet(support[0], support[1]) != 2) throw ValidationError("two-component fiber needs a double bond");
    return finish(FiberKind::In, 2, support);
  }
  if (multi_edge) throw ValidationError("multiple intersection inside a fiber with more than two components");

  const bool all_degree_two = std::all_of(support.begin(), support.end(), [&](std::size_t v) { return degree(v) == 2; });
  if (all_degree_two) {
    std::vector<std::size_t> order{support[0]};
    std::size_t prev = support[0];
    std::size_t cur = std::min(adj[support[0]][0], adj[support[0]][1]);
    while (cur != support[0]) {
      order.push_back(cur);
      const auto& nb = adj[cur];
      const std::size_t next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    }
    if (order.size() != r) throw ValidationError("fiber graph is not a simple cycle");
    return finish(FiberKind::In, static_cast<unsigned>(r), order);
  }

  if (edges != r - 1) throw ValidationError("fiber graph matches no affine ADE diagram");

  std::vector<std::size_t> branch;
  for (auto v : support) {
    if (degree(v) > 4) throw ValidationError("fiber graph matches no affine ADE diagram");
    if (degree(v) >= 3) branch.push_back(v);
  }
  auto leaves_of = [&](std::size_t v) {
    std::vector<std::size_t> out;
    for (auto w : adj[v])
      if (degree(w) == 1) out.push_back(w);
    return out;
  };

  if (branch.size() == 1 && degree(branch[0]) == 4 && r == 5) {
    const auto leaves = leaves_of(branch[0]);
    return finish(FiberKind::InStar, 0, {leaves[0], leaves[1], branch[0], leaves[2], leaves[3]});
  }

  if (branch.size() == 2 && degree(branch[0]) == 3 && degree(branch[1]) == 3) {
    const auto la = leaves_of(branch[0]);
    const auto lb = leaves_of(branch[1]);
    if (la.size() != 2 || lb.size() != 2) throw ValidationError("fiber graph matches no affine ADE diagram");
    // Walk the chain from one branch node to the other.
    std::vector<std::size_t> chain{branch[0]};
    std::size_t prev = branch[0];
    std::size_t cur = branch[0];
    for (auto w : adj[branch[0]])
      if (degree(w) != 1) cur = w;
    while (cur != branch[1]) {
      chain.push_back(cur);
      std::size_t next = cur;
      for (auto w : adj[cur])
        if (w != prev) next = w;
      if (degree(cur) != 2) throw ValidationError("fiber graph matches no affine ADE diagram");
      prev = cur;
      cur = next;
    }
    chain.push_back(branch[1]);
    if (chain.size() + 4 != r) throw ValidationError("fiber graph matches no affine ADE diagram");
    std::vector<std::size_t> order{la[0], la[1]};
    order.insert(order.end(), chain.begin(), chain.end());
    order.push_back(lb[0]);
    order.push_back(lb[1]);
    return finish(FiberKind::InStar, static_cast<unsigned>(r - 5), order);
  }

  if (branch.size() == 1 && degree(branch[0]) == 3) {
    const std::size_t center = branch[0];
    std::vector<std::size_t> arm_lengths;
    for (auto start : adj[center]) {
      std::size_t len = 1, prev = center, cur = start;
      while (degree(cur) == 2) {
        const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        ++len;
      }
      arm_lengths.push_back(len);
    }
    std::sort(arm_lengths.begin(), arm_lengths.end());
    FiberKind kind;
    if (arm_lengths == std::vector<std::size_t>{2, 2, 2}) kind = FiberKind::IVStar;
    else if (arm_lengths == std::vector<std::size_t>{1, 3, 3}) kind = FiberKind::IIIStar;
    else if (arm_lengths == std::vector<std::size_t>{1, 2, 5}) kind = FiberKind::IIStar;
    else throw ValidationError("fiber graph matches no affine ADE diagram");

    std::vector<std::size_t> order;
    std::map<std::size_t, bool> seen;
    std::deque<std::size_t> queue{center};
    seen[center] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
    }
    return finish(kind, 0, order);
  }

  throw ValidationError("fiber graph matches no affine ADE diagram");
}

FiberVerdict is_fiber_class(const DivisorClass& d, const CurveConfig& cfg) {
  if (d.size() != cfg.size()) throw std::invalid_argument("divisor not indexed by this configuration");
  if (!d.is_effective()) throw std::invalid_argument("divisor is not effective");
  FiberVerdict v;
  v.self_intersection = pairing(d, d, cfg);
  const auto support = d.support();
  if (support.empty()) {
    v.diagnostic = "zero divisor";
    return v;
  }
  if (v.self_intersection != 0) {
    v.diagnostic = "self-intersection " + v.self_intersection.get_str() + " is not 0";
    return v;
  }
  if (!is_connected(cfg, support)) {
    v.diagnostic = "support is not connected";
    return v;
  }
  try {
    v.fiber = classify_fiber(cfg, support);
  } catch (const ValidationError& e) {
    v.diagnostic = e.what();
    return v;
  }
  const auto& f = *v.fiber;
  std::optional<Integer> ratio;
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    const Integer& c = d[f.components[i]];
    if (c % f.multiplicities[i] != 0) {
      ratio.reset();
      v.diagnostic = "coefficients differ from the fiber multiplicities";
      return v;
    }
    const Integer q = c / f.multiplicities[i];
    if (ratio && *ratio != q) {
      v.diagnostic = "coefficients differ from the fiber multiplicities";
      return v;
    }
    ratio = q;
  }
  if (*ratio != 1) {
    v.diagnostic = "non-primitive: " + ratio->get_str() + " times a fiber of type " + f.label();
    return v;
  }
  v.ok = true;
  v.diagnostic = "fiber of type " + f.label();
  return v;
}

unsigned ComponentGroup::order() const {
  unsigned o = 1;
  for (auto c : cyclic_orders) o *= c;
  return o;
}

std::string ComponentGroup::to_string() const {
  if (cyclic_orders.empty()) return "trivial";
  std::map<unsigned, unsigned> counts;
  for (auto c : cyclic_orders) ++counts[c];
  std::string s;
  for (const auto& [c, k] : counts) {
    if (!s.empty()) s += " x ";
    s += k == 1 ? "Z/" + std::to_string(c) : "(Z/" + std::to_string(c) + ")^" + std::to_string(k);
  }
  return s;
}

ComponentGroup component_group(const KodairaFiber& f) {
  switch (f.kind) {
    case FiberKind::In: return {{f.n}};
    case FiberKind::InStar: return f.n % 2 == 0 ? ComponentGroup{{2, 2}} : ComponentGroup{{4}};
    case FiberKind::IIIStar: return {{2}};
    case FiberKind::IVStar: return {{3}};
    case FiberKind::IIStar: return {};
  }
  return {};
}

LatticeTerm root_lattice_of(const KodairaFiber& f) {
  LatticeTerm t;
  switch (f.kind) {
    case FiberKind::In: t.atom = Atom::A; t.index = f.n - 1; break;
    case FiberKind::InStar: t.atom = Atom::D; t.index = f.n + 4; break;
    case FiberKind::IVStar: t.atom = Atom::E; t.index = 6; break;
    case FiberKind::IIIStar: t.atom = Atom::E; t.index = 7; break;
    case FiberKind::IIStar: t.atom = Atom::E; t.index = 8; break;
  }
  return t;
}

std::vector<std::string> theta_violations(const CurveConfig& cfg, const std::vector<std::string>& fixed,
                                          const std::vector<std::pair<std::string, DivisorClass>>& fibers) {
  std::vector<std::string> out;
  DivisorClass c(cfg.size());
  std::vector<bool> is_fixed(cfg.size(), false);
  for (const auto& name : fixed) {
    const std::size_t i = cfg.index(name);
    if (is_fixed[i]) out.push_back("fixed curve " + name + " listed twice");
    is_fixed[i] = true;
    c[i] += 1;
  }
  for (std::size_t a = 0; a < fixed.size(); ++a)
    for (std::size_t b = a + 1; b < fixed.size(); ++b)
      if (cfg.meet(fixed[a], fixed[b]) != 0)
        out.push_back("fixed curves " + fixed[a] + " and " + fixed[b] + " meet");
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (is_fixed[i]) continue;
    const Integer v = pairing(c, DivisorClass::curve(cfg, cfg.name(i)), cfg);
    if (v != 2) out.push_back("C." + cfg.name(i) + " = " + v.get_str() + ", expected 2");
  }
  for (const auto& [label, f] : fibers) {
    const Integer v = pairing(c, f, cfg);
    if (v != 4) out.push_back("C." + label + " = " + v.get_str() + ", expected 4");
  }
  return out;
}

}  // namespace k3
