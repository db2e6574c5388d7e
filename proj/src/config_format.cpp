#include "k3/config_format.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace k3::text {

Value Value::make_int(const Integer& v) {
  Value x;
  x.kind = Kind::Int;
  x.integer = v;
  return x;
}
Value Value::make_name(std::string s) {
  Value x;
  x.kind = Kind::Name;
  x.text = std::move(s);
  return x;
}
Value Value::make_string(std::string s) {
  Value x;
  x.kind = Kind::String;
  x.text = std::move(s);
  return x;
}
Value Value::make_list(std::vector<Value> v) {
  Value x;
  x.kind = Kind::List;
  x.items = std::move(v);
  return x;
}
Value Value::make_tuple(std::vector<Value> v) {
  Value x;
  x.kind = Kind::Tuple;
  x.items = std::move(v);
  return x;
}
Value Value::make_map(std::vector<std::pair<std::string, Value>> m) {
  Value x;
  x.kind = Kind::Map;
  x.map = std::move(m);
  return x;
}

void Value::fail(const std::string& msg) const { throw ParseError(msg, offset, line); }
void Entry::fail(const std::string& msg) const { throw ParseError(msg, offset, line); }

const Integer& Value::as_int() const {
  if (kind != Kind::Int) fail("expected an integer");
  return integer;
}
long Value::as_long() const {
  if (kind != Kind::Int) fail("expected an integer");
  if (!integer.fits_slong_p()) fail("integer out of range");
  return integer.get_si();
}
const std::string& Value::as_name() const {
  if (kind != Kind::Name) fail("expected a name");
  return text;
}
const std::string& Value::as_string() const {
  if (kind != Kind::String) fail("expected a quoted string");
  return text;
}
const std::string& Value::as_text() const {
  if (kind != Kind::Name && kind != Kind::String) fail("expected a name or string");
  return text;
}
const std::vector<Value>& Value::as_list() const {
  if (kind != Kind::List) fail("expected a list");
  return items;
}
const std::vector<Value>& Value::as_tuple() const {
  if (kind != Kind::Tuple) fail("expected a tuple");
  return items;
}
const std::vector<std::pair<std::string, Value>>& Value::as_map() const {
  if (kind != Kind::Map) fail("expected a map");
  return map;
}
bool Value::as_bool() const {
  if (kind == Kind::Name && text == "true") return true;
  if (kind == Kind::Name && text == "false") return false;
  fail("expected true or false");
}

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' || c == '-';
}

class DocParser {
 public:
  explicit DocParser(std::string_view s) : s_(s) {}

  std::vector<Entry> document() {
    auto entries = entries_until(false);
    return entries;
  }

 private:
  // Entries until EOF (top level) or an `end` line (nested).
  std::vector<Entry> entries_until(bool nested) {
    std::vector<Entry> out;
    for (;;) {
      skip_blank_lines();
      if (at_end()) {
        if (nested) fail("missing 'end'");
        return out;
      }
      if (!name_start(peek())) fail("expected a key");
      const std::size_t start = pos_;
      const std::size_t start_line = line_;
      std::string key = name();
      if (key == "end") {
        if (!nested) fail_at("'end' without an open block", start);
        rest_of_line();
        return out;
      }
      Entry e;
      e.key = std::move(key);
      e.offset = start;
      e.line = start_line;
      skip_inline_ws();
      if (!at_end() && name_start(peek())) {
        e.label = name();
        skip_inline_ws();
      }
      if (at_end() || peek() != ':') fail("expected ':'");
      ++pos_;
      skip_inline_ws();
      if (at_end() || peek() == '\n' || peek() == '#') {
        rest_of_line();
        e.is_block = true;
        e.block = entries_until(true);
      } else {
        e.value = value();
        rest_of_line();
      }
      out.push_back(std::move(e));
    }
  }

  Value value() {
    skip_ws();
    if (at_end()) fail("expected a value");
    const std::size_t start = pos_;
    const std::size_t start_line = line_;
    Value v;
    const char c = peek();
    if (c == '[' || c == '(') {
      const char close = c == '[' ? ']' : ')';
      ++pos_;
      std::vector<Value> items;
      skip_ws();
      while (!at_end() && peek() != close) {
        items.push_back(value());
        skip_ws();
        if (!at_end() && peek() == ',') {
          ++pos_;
          skip_ws();
        } else {
          break;
        }
      }
      skip_ws();
      if (at_end() || peek() != close) fail(std::string("expected '") + close + "'");
      ++pos_;
      v = c == '[' ? Value::make_list(std::move(items)) : Value::make_tuple(std::move(items));
    } else if (c == '{') {
      ++pos_;
      std::vector<std::pair<std::string, Value>> m;
      std::set<std::string> keys;
      skip_ws();
      while (!at_end() && peek() != '}') {
        const std::size_t kpos = pos_;
        std::string key;
        if (peek() == '"') key = quoted();
        else if (name_start(peek())) key = name();
        else fail("expected a map key");
        if (!keys.insert(key).second) fail_at("duplicate map key '" + key + "'", kpos);
        skip_ws();
        if (at_end() || peek() != ':') fail("expected ':' after map key");
        ++pos_;
        m.emplace_back(std::move(key), value());
        skip_ws();
        if (!at_end() && peek() == ',') {
          ++pos_;
          skip_ws();
        } else {
          break;
        }
      }
      skip_ws();
      if (at_end() || peek() != '}') fail("expected '}'");
      ++pos_;
      v = Value::make_map(std::move(m));
    } else if (c == '"') {
      v = Value::make_string(quoted());
    } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '-') ++pos_;
      const std::size_t digits = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == digits) fail_at("expected digits", start);
      if (!at_end() && name_char(peek())) fail("malformed integer");
      Integer x(std::string(s_.substr(digits, pos_ - digits)));
      v = Value::make_int(c == '-' ? Integer(-x) : x);
    } else if (name_start(c)) {
      v = Value::make_name(name());
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    v.offset = start;
    v.line = start_line;
    return v;
  }

  std::string name() {
    const std::size_t start = pos_;
    ++pos_;
    while (!at_end() && name_char(peek())) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string quoted() {
    ++pos_;
    std::string out;
    for (;;) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = peek();
      ++pos_;
      if (c == '"') return out;
      if (c == '\\') {
        if (at_end()) fail("unterminated string");
        const char e = peek();
        ++pos_;
        if (e == '"' || e == '\\') out += e;
        else if (e == 'n') out += '\n';
        else fail_at("unknown escape", pos_ - 2);
      } else {
        out += c;
      }
    }
  }

  // Whitespace and comments, newlines included (inside brackets).
  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  void skip_inline_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void skip_blank_lines() { skip_ws(); }

  // Only spaces or a comment may follow on the current line.
  void rest_of_line() {
    skip_inline_ws();
    if (!at_end() && peek() == '#')
      while (!at_end() && peek() != '\n') ++pos_;
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected trailing text");
    ++pos_;
    ++line_;
  }

  char peek() const { return s_[pos_]; }
  bool at_end() const { return pos_ >= s_.size(); }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_, line_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i)
      if (s_[i] == '\n') ++line;
    throw ParseError(msg, at, line);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string key_text(const std::string& k) { return is_name(k) ? k : quote(k); }

}  // namespace

std::vector<Entry> parse_document(std::string_view text) { return DocParser(text).document(); }

bool is_name(std::string_view s) {
  if (s.empty() || !name_start(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), name_char);
}

std::string format_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return v.integer.get_str();
    case Value::Kind::Name: return v.text;
    case Value::Kind::String: return quote(v.text);
    case Value::Kind::List:
    case Value::Kind::Tuple: {
      std::string s = v.kind == Value::Kind::List ? "[" : "(";
      for (std::size_t i = 0; i < v.items.size(); ++i) s += (i ? ", " : "") + format_value(v.items[i]);
      return s + (v.kind == Value::Kind::List ? "]" : ")");
    }
    case Value::Kind::Map: {
      std::string s = "{";
      for (std::size_t i = 0; i < v.map.size(); ++i)
        s += (i ? ", " : "") + key_text(v.map[i].first) + ": " + format_value(v.map[i].second);
      return s + "}";
    }
  }
  return "";
}

const DivisorClass& ConfigSection::divisor(const std::string& label) const {
  for (const auto& [l, d] : divisors)
    if (l == label) return d;
  throw ValidationError("unknown divisor '" + label + "'");
}

bool ConfigSection::has_divisor(const std::string& label) const {
  return std::any_of(divisors.begin(), divisors.end(), [&](const auto& p) { return p.first == label; });
}

ConfigSection read_config(const std::vector<Entry>& entries) {
  ConfigSection out;
  auto curve = [&](const Value& v) {
    const std::string& n = v.as_name();
    auto i = out.cfg.find(n);
    if (!i) v.fail("unknown curve '" + n + "'");
    return *i;
  };
  // Three passes so that meets and divisors may precede the curves they use.
  for (const auto& e : entries) {
    if (e.key == "curves") {
      if (e.is_block) e.fail("'curves' takes a list");
      for (const auto& v : e.value.as_list()) {
        try {
          out.cfg.add_curve(v.as_name());
        } catch (const ValidationError& err) {
          v.fail(err.what());
        }
      }
    }
  }
  for (const auto& e : entries) {
    if (e.key == "meets") {
      if (e.is_block) e.fail("'meets' takes a list");
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& t : e.value.as_list()) {
        const auto& items = t.as_tuple();
        if (items.size() != 3) t.fail("a meet is (curve, curve, multiplicity)");
        const std::size_t a = curve(items[0]);
        const std::size_t b = curve(items[1]);
        if (a == b) t.fail("a curve cannot meet itself");
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second) t.fail("pair listed twice");
        const Integer& m = items[2].as_int();
        if (m < 0) items[2].fail("negative intersection number");
        out.cfg.set_meet(a, b, m);
      }
    }
  }
  for (const auto& e : entries) {
    if (e.key == "divisor") {
      if (e.label.empty()) e.fail("divisor needs a label");
      if (e.is_block) e.fail("'divisor' takes a map");
      if (out.has_divisor(e.label)) e.fail("duplicate divisor '" + e.label + "'");
      DivisorClass d(out.cfg.size());
      for (const auto& [name, c] : e.value.as_map()) {
        auto i = out.cfg.find(name);
        if (!i) c.fail("unknown curve '" + name + "'");
        d[*i] += c.as_int();
      }
      out.divisors.emplace_back(e.label, std::move(d));
    }
  }
  return out;
}

FibrationModel read_fibration(const Entry& block, const ConfigSection& config) {
  if (!block.is_block) block.fail("fibration must be a block");
  FibrationModel m;
  bool have_fiber = false, have_rho = false, have_zero = false, have_sections = false;
  std::vector<const Entry*> incidence;
  for (const auto& e : block.block) {
    if (e.is_block) e.fail("unexpected nested block");
    if (e.key == "fiber") {
      m.fiber_label = e.value.as_name();
      if (!config.has_divisor(m.fiber_label)) e.value.fail("unknown divisor '" + m.fiber_label + "'");
      m.fiber_class = config.divisor(m.fiber_label);
      have_fiber = true;
    } else if (e.key == "rho") {
      m.rho = e.value.as_long();
      have_rho = true;
    } else if (e.key == "zero") {
      m.zero_section = e.value.as_name();
      if (!config.cfg.find(m.zero_section)) e.value.fail("unknown curve '" + m.zero_section + "'");
      have_zero = true;
    } else if (e.key == "sections") {
      for (const auto& v : e.value.as_list()) {
        if (!config.cfg.find(v.as_name())) v.fail("unknown curve '" + v.as_name() + "'");
        m.sections.push_back(v.as_name());
      }
      have_sections = true;
    } else if (e.key == "reducible") {
      for (const auto& t : e.value.as_list()) {
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
          rf.label = rf.kodaira + "#" + std::to_string(m.reducible.size());
          rf.components = static_cast<std::size_t>(n);
        }
        try {
          component_count_of_label(rf.kodaira);
        } catch (const std::invalid_argument& err) {
          items[rf.divisor ? 1 : 0].fail(err.what());
        }
        m.reducible.push_back(std::move(rf));
      }
    } else if (e.key == "section-meets") {
      incidence.push_back(&e);
    } else if (e.key == "complete") {
      m.fibers_complete = e.value.as_bool();
    } else {
      e.fail("unknown fibration field '" + e.key + "'");
    }
  }
  for (const Entry* e : incidence) {
    auto it = std::find_if(m.reducible.begin(), m.reducible.end(),
                           [&](const ReducibleFiber& rf) { return rf.divisor && rf.label == e->label; });
    if (it == m.reducible.end()) e->fail("section-meets names no located reducible fiber '" + e->label + "'");
    for (const auto& [s, comp] : e->value.as_map()) it->section_meets[s] = comp.as_name();
  }
  if (!have_fiber) block.fail("fibration lacks 'fiber'");
  if (!have_rho) block.fail("fibration lacks 'rho'");
  if (!have_zero) block.fail("fibration lacks 'zero'");
  if (!have_sections) block.fail("fibration lacks 'sections'");
  return m;
}

ModelFile parse_model(std::string_view text) {
  const auto entries = parse_document(text);
  ModelFile mf;
  for (const auto& e : entries)
    if (e.key != "curves" && e.key != "meets" && e.key != "divisor" && e.key != "fibration")
      e.fail("unknown key '" + e.key + "'");
  mf.config = read_config(entries);
  for (const auto& e : entries) {
    if (e.key != "fibration") continue;
    if (e.label.empty()) e.fail("fibration needs a label");
    mf.fibrations.emplace_back(e.label, read_fibration(e, mf.config));
  }
  return mf;
}

std::string dump_config(const ConfigSection& c, const std::string& indent) {
  std::ostringstream os;
  os << indent << "curves: [";
  for (std::size_t i = 0; i < c.cfg.size(); ++i) os << (i ? ", " : "") << c.cfg.name(i);
  os << "]\n";
  os << indent << "meets: [\n";
  for (std::size_t i = 0; i < c.cfg.size(); ++i)
    for (std::size_t j = i + 1; j < c.cfg.size(); ++j)
      if (c.cfg.meet(i, j) != 0)
        os << indent << "  (" << c.cfg.name(i) << ", " << c.cfg.name(j) << ", " << c.cfg.meet(i, j) << "),\n";
  os << indent << "]\n";
  for (const auto& [label, d] : c.divisors) {
    os << indent << "divisor " << label << ": {";
    bool first = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) continue;
      os << (first ? "" : ", ") << c.cfg.name(i) << ": " << d[i];
      first = false;
    }
    os << "}\n";
  }
  return os.str();
}

std::string dump_fibration(const std::string& name, const FibrationModel& m, const std::string& indent) {
  std::ostringstream os;
  os << indent << "fibration " << name << ":\n";
  const std::string in = indent + "  ";
  os << in << "fiber: " << m.fiber_label << "\n";
  os << in << "rho: " << m.rho << "\n";
  os << in << "zero: " << m.zero_section << "\n";
  os << in << "sections: [";
  for (std::size_t i = 0; i < m.sections.size(); ++i) os << (i ? ", " : "") << m.sections[i];
  os << "]\n";
  if (!m.reducible.empty()) {
    os << in << "reducible: [";
    for (std::size_t i = 0; i < m.reducible.size(); ++i) {
      const auto& rf = m.reducible[i];
      os << (i ? ", " : "");
      if (rf.divisor) os << "(" << rf.label << ", " << quote(rf.kodaira) << ")";
      else os << "(" << quote(rf.kodaira) << ", " << rf.components << ")";
    }
    os << "]\n";
  }
  for (const auto& rf : m.reducible) {
    if (rf.section_meets.empty()) continue;
    os << in << "section-meets " << rf.label << ": {";
    bool first = true;
    for (const auto& [s, c] : rf.section_meets) {
      os << (first ? "" : ", ") << s << ": " << c;
      first = false;
    }
    os << "}\n";
  }
  os << in << "complete: " << (m.fibers_complete ? "true" : "false") << "\n";
  os << indent << "end\n";
  return os.str();
}

}  // namespace k3::text
