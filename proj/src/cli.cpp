#include "k3/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <sstream>

#include "CLI11.hpp"
#include "k3/cases.hpp"
#include "k3/config_format.hpp"
#include "k3/spectral.hpp"
#include "k3/verify.hpp"

namespace k3 {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ostringstream stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  return os;
}

std::string group_text(const std::vector<Integer>& factors) {
  if (factors.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < factors.size();) {
    std::size_t j = i;
    while (j < factors.size() && factors[j] == factors[i]) ++j;
    if (!s.empty()) s += " x ";
    s += j - i > 1 ? "(Z/" + factors[i].get_str() + ")^" + std::to_string(j - i) : "Z/" + factors[i].get_str();
    i = j;
  }
  return s;
}

int lattice_info(const std::string& expr, std::ostream& out) {
  const LatticeExpr e = parse_lattice_expr(expr);
  const GramLattice l = gram(e);
  const Inertia sig = inertia(l.gram);
  auto os = stream();
  os << "lattice    " << to_string(e) << "\n";
  os << "rank       " << l.rank() << "\n";
  os << "det        " << determinant(l.gram) << "\n";
  os << "signature  (" << sig.positive << "," << sig.negative << ")";
  if (sig.zero) os << " with " << sig.zero << " null directions";
  os << "\n";
  os << "even       " << (l.is_even() ? "yes" : "no") << "\n";
  if (sig.zero == 0) {
    os << "group      " << group_text(discriminant_group(l)) << "\n";
    try {
      const TwoElementaryInvariants inv = two_elementary_invariants(l);
      os << "a          " << inv.a << "\n";
      os << "delta      " << inv.delta << "\n";
    } catch (const std::domain_error&) {
      os << "2-elementary no\n";
    }
  }
  out << os.str();
  return 0;
}

int fiber_classify(const std::string& path, const std::string& label, std::ostream& out) {
  const text::ModelFile mf = text::parse_model(read_file(path));
  const CurveConfig& cfg = mf.config.cfg;
  if (!mf.config.has_divisor(label)) throw UsageError("no divisor '" + label + "' in " + path);
  const DivisorClass& d = mf.config.divisor(label);
  auto os = stream();
  if (!d.is_effective()) {
    os << label << ": not effective\n";
    out << os.str();
    return 1;
  }
  const FiberVerdict v = is_fiber_class(d, cfg);
  os << "divisor    " << d.to_string(cfg) << "\n";
  os << "square     " << v.self_intersection << "\n";
  if (!v.ok) {
    os << "fiber      no (" << v.diagnostic << ")\n";
    out << os.str();
    return 1;
  }
  const KodairaFiber& f = *v.fiber;
  os << "type       " << f.label() << "\n";
  os << "components " << f.component_count() << "\n";
  os << "order     ";
  for (std::size_t i = 0; i < f.components.size(); ++i)
    os << " " << cfg.name(f.components[i]) << "(" << f.multiplicities[i] << ")";
  os << "\n";
  os << "group      " << component_group(f).to_string() << "\n";
  out << os.str();
  return 0;
}

const std::pair<std::string, FibrationModel>& pick_fibration(const text::ModelFile& mf, const std::string& name) {
  if (mf.fibrations.empty()) throw UsageError("the file declares no fibration");
  if (name.empty()) {
    if (mf.fibrations.size() > 1) throw UsageError("several fibrations; choose one with --fibration");
    return mf.fibrations.front();
  }
  for (const auto& f : mf.fibrations)
    if (f.first == name) return f;
  throw UsageError("no fibration '" + name + "'");
}

int mw_rank(const std::string& path, const std::string& name, std::ostream& out) {
  const text::ModelFile mf = text::parse_model(read_file(path));
  const CurveConfig& cfg = mf.config.cfg;
  const auto& [fname, m] = pick_fibration(mf, name);
  const auto fibers = resolve(cfg, m);
  auto os = stream();
  os << "fibration  " << fname << " (rho " << m.rho << ", zero " << m.zero_section << ")\n";
  for (const auto& r : fibers) {
    const auto& rf = m.reducible[r.index];
    os << "  " << rf.label << ": ";
    if (r.fiber) {
      os << r.fiber->label() << ", " << r.component_count << " components";
      for (const auto& [s, c] : r.incidence) os << ", " << s << "->" << cfg.name(c);
      if (!label_matches(*r.fiber, rf.kodaira)) os << " (declared " << rf.kodaira << ")";
    } else {
      os << rf.kodaira << ", " << r.component_count << " components, not located";
    }
    os << "\n";
  }
  const long st = shioda_tate_rank(fibers, m.rho);
  os << "rank       " << st << (m.fibers_complete ? "" : " (upper bound: fiber list not complete)") << "\n";
  for (const auto& s : m.sections) {
    if (s == m.zero_section) continue;
    const EvidenceOutcome ev = infinite_order_certificate(cfg, m, fibers, s);
    os << "  " << s << ": ";
    if (ev) os << to_string(ev.evidence->kind) << " (" << ev.evidence->detail << ")\n";
    else os << "no certificate (" << ev.failure << ")\n";
  }
  out << os.str();
  return 0;
}

int height(const std::string& path, const std::string& p, const std::string& q, const std::string& name,
           std::ostream& out) {
  const text::ModelFile mf = text::parse_model(read_file(path));
  const auto& [fname, m] = pick_fibration(mf, name);
  const auto fibers = resolve(mf.config.cfg, m);
  const std::string qq = q.empty() ? p : q;
  const Rational h = height_pairing(mf.config.cfg, m, fibers, p, qq);
  auto os = stream();
  os << "<" << p << "," << qq << "> = " << h << "\n";
  out << os.str();
  return 0;
}

int entropy_cmd(const std::string& path, std::ostream& out) {
  const MatrixPair mp = parse_matrix_pair(read_file(path));
  const EntropyReport r = entropy(mp.m, mp.g);
  auto os = stream();
  os << "class      " << to_string(r.cls) << "\n";
  os << "charpoly   " << r.char_poly.to_string() << "\n";
  os << "reciprocal " << (r.reciprocity > 0 ? "+1" : r.reciprocity < 0 ? "-1" : "no") << "\n";
  os << std::fixed << std::setprecision(10);
  os << "radius     " << r.radius << "\n";
  os << "entropy    " << r.entropy << "\n";
  if (r.cls == DynamicsClass::Elliptic) os << "order      " << r.order << "\n";
  if (r.salem_factor) {
    os << "salem      " << (r.dominant_negative ? r.salem_factor->negated_argument().primitive_part() : *r.salem_factor).to_string();
    os << (r.dominant_negative ? " (in -x)" : "") << "\n";
  }
  out << os.str();
  return 0;
}

std::vector<CaseRecord> case_source(const std::string& cases_file) {
  if (cases_file.empty()) return builtin_cases();
  return load_cases(read_file(cases_file));
}

int verify_cmd(bool all, const std::string& only, const std::string& param, bool json, bool verbose,
               const std::string& cases_file, std::ostream& out) {
  if (all == !only.empty()) throw UsageError("verify needs exactly one of --all and --only");
  if (!param.empty() && only.empty()) throw UsageError("--param needs --only");
  std::vector<CaseRecord> records = case_source(cases_file);
  if (!only.empty()) {
    records = select_cases(records, only, param.empty() ? std::nullopt : std::optional<std::string>(param));
    if (records.empty()) throw UsageError("no record matches '" + only + "'");
  }
  const auto reports = verify_all(records);
  out << (json ? reports_json(reports) : reports_table(reports, verbose));
  for (const auto& r : reports)
    if (!r.pass()) return 1;
  return 0;
}

int case_dump(const std::string& id, const std::string& param, const std::string& cases_file, std::ostream& out) {
  auto rows = select_cases(case_source(cases_file), id, param.empty() ? std::nullopt : std::optional<std::string>(param));
  if (rows.empty()) throw UsageError("no record matches '" + id + "'");
  for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "\n" : "") << dump_case(rows[i]);
  return 0;
}

int case_list(const std::string& cases_file, std::ostream& out) {
  for (const auto& r : case_source(cases_file)) out << r.row_name() << "\n";
  return 0;
}

}  // namespace

MatrixPair parse_matrix_pair(std::string_view text) {
  std::vector<std::vector<std::vector<Integer>>> blocks(1);
  std::size_t line = 1, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view l = text.substr(pos, end - pos);
    if (auto c = l.find('#'); c != std::string_view::npos) l = l.substr(0, c);
    std::vector<Integer> row;
    std::size_t i = 0;
    while (i < l.size()) {
      while (i < l.size() && std::isspace(static_cast<unsigned char>(l[i]))) ++i;
      if (i >= l.size()) break;
      std::size_t j = i;
      while (j < l.size() && !std::isspace(static_cast<unsigned char>(l[j]))) ++j;
      Integer v;
      const std::string tok(l.substr(i, j - i));
      if (v.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0) throw ParseError("'" + tok + "' is not an integer", pos + i, line);
      row.push_back(v);
      i = j;
    }
    const bool blank = std::all_of(text.begin() + static_cast<long>(pos), text.begin() + static_cast<long>(end),
                                   [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
    if (!row.empty()) blocks.back().push_back(std::move(row));
    else if (blank && !blocks.back().empty()) blocks.emplace_back();
    if (end == text.size()) break;
    pos = end + 1;
    ++line;
  }
  if (blocks.back().empty()) blocks.pop_back();
  if (blocks.size() != 2) throw ParseError("expected two matrix blocks (G, then M), found " + std::to_string(blocks.size()), text.size(), line);
  std::array<IntMatrix, 2> mats;
  for (std::size_t b = 0; b < 2; ++b) {
    const auto& rows = blocks[b];
    const std::size_t n = rows.size();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n)
        throw ParseError(std::string(b ? "M" : "G") + " is not square (row " + std::to_string(i + 1) + ")", text.size(), line);
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    mats[b] = std::move(m);
  }
  if (mats[0].rows() != mats[1].rows()) throw ParseError("G and M differ in size", text.size(), line);
  return {std::move(mats[0]), std::move(mats[1])};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificate checker for fixed-curve automorphism constructions on K3 surfaces", "k3cert"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto* lattice = app.add_subcommand("lattice", "Lattice expressions");
  lattice->require_subcommand(1);
  auto* info = lattice->add_subcommand("info", "Rank, determinant, signature and 2-elementary invariants");
  std::string expr;
  info->add_option("expr", expr, "e.g. \"U+D4+A1^7\"")->required();
  info->callback([&] { action = [&] { return lattice_info(expr, out); }; });

  std::string path, label, fibration, p, q;
  auto* fiber = app.add_subcommand("fiber", "Kodaira fibers");
  fiber->require_subcommand(1);
  auto* classify = fiber->add_subcommand("classify", "Classify a divisor of a model file");
  classify->add_option("file", path, "model file")->required();
  classify->add_option("divisor", label, "divisor label")->required();
  classify->callback([&] { action = [&] { return fiber_classify(path, label, out); }; });

  auto* mw = app.add_subcommand("mw", "Mordell-Weil data");
  mw->require_subcommand(1);
  auto* rank = mw->add_subcommand("rank", "Shioda-Tate rank and infinite-order certificates");
  rank->add_option("file", path, "model file")->required();
  rank->add_option("--fibration", fibration, "fibration label");
  rank->callback([&] { action = [&] { return mw_rank(path, fibration, out); }; });

  auto* ht = app.add_subcommand("height", "Height pairing of sections");
  ht->add_option("file", path, "model file")->required();
  ht->add_option("P", p, "section")->required();
  ht->add_option("Q", q, "second section (default P)");
  ht->add_option("--fibration", fibration, "fibration label");
  ht->callback([&] { action = [&] { return height(path, p, q, fibration, out); }; });

  auto* ent = app.add_subcommand("entropy", "Dynamics of a lattice isometry");
  ent->add_option("file", path, "file with the G block, a blank line, then the M block")->required();
  ent->callback([&] { action = [&] { return entropy_cmd(path, out); }; });

  bool all = false, json = false, verbose = false;
  std::string only, param, cases_file;
  auto* ver = app.add_subcommand("verify", "Replay case records");
  ver->add_flag("--all", all, "every record");
  ver->add_option("--only", only, "record id, or row name such as rho11[t=1]");
  ver->add_option("--param", param, "parameter value of the selected record");
  ver->add_flag("--json", json, "JSON report");
  ver->add_flag("--verbose,-v", verbose, "print every check");
  ver->add_option("--cases", cases_file, "case file instead of the built-in records");
  ver->callback([&] { action = [&] { return verify_cmd(all, only, param, json, verbose, cases_file, out); }; });

  auto* cs = app.add_subcommand("case", "Case records");
  cs->require_subcommand(1);
  auto* dump = cs->add_subcommand("dump", "Print a record in case-file format");
  dump->add_option("id", label, "record id")->required();
  dump->add_option("--param", param, "parameter value");
  dump->add_option("--cases", cases_file, "case file instead of the built-in records");
  dump->callback([&] { action = [&] { return case_dump(label, param, cases_file, out); }; });
  auto* list = cs->add_subcommand("list", "List record rows");
  list->add_option("--cases", cases_file, "case file instead of the built-in records");
  list->callback([&] { action = [&] { return case_list(cases_file, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace k3
