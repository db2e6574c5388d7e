#pragma once

// Line-oriented text format for curve configurations, fibration models and
// case records.
//
//   # comment
//   curves: [C1, C2, H1, H1']
//   meets: [(C1, H1, 1), (H1, H1', 2)]
//   divisor E1: {C1: 1, H1: 1}
//   fibration phi:
//     fiber: F
//     rho: 12
//     zero: C1
//     sections: [C1]
//     reducible: [(F, "I2"), ("I2", 2)]
//     section-meets F: {C1: H1}
//     complete: true
//   end
//
// An entry is `key [label]: value`, or `key [label]:` at the end of a line
// followed by nested entries and a closing `end`. Values are integers,
// names, "strings", [lists], {maps} and (tuples); brackets may span lines.
// A name starts with a letter or '_' and continues with letters, digits and
// the characters _ ' . -

#include "k3/curves.hpp"
#include "k3/errors.hpp"
#include "k3/fibration.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace k3::text {

struct Value {
  enum class Kind { Int, Name, String, List, Map, Tuple };
  Kind kind = Kind::Int;
  Integer integer;
  std::string text;                                 ///< Name or String
  std::vector<Value> items;                         ///< List or Tuple
  std::vector<std::pair<std::string, Value>> map;   ///< Map, in source order
  std::size_t offset = 0;
  std::size_t line = 1;

  static Value make_int(const Integer& v);
  static Value make_name(std::string s);
  static Value make_string(std::string s);
  static Value make_list(std::vector<Value> v);
  static Value make_tuple(std::vector<Value> v);
  static Value make_map(std::vector<std::pair<std::string, Value>> m);

  bool is(Kind k) const { return kind == k; }
  /// Accessors throw ParseError naming the expected kind at this value's offset.
  const Integer& as_int() const;
  long as_long() const;
  const std::string& as_name() const;
  const std::string& as_string() const;
  /// Name or String.
  const std::string& as_text() const;
  const std::vector<Value>& as_list() const;
  const std::vector<Value>& as_tuple() const;
  const std::vector<std::pair<std::string, Value>>& as_map() const;
  bool as_bool() const;  ///< names true / false
  [[noreturn]] void fail(const std::string& msg) const;
};

struct Entry {
  std::string key;
  std::string label;  ///< empty when absent
  bool is_block = false;
  Value value;                ///< when !is_block
  std::vector<Entry> block;   ///< when is_block
  std::size_t offset = 0;
  std::size_t line = 1;

  [[noreturn]] void fail(const std::string& msg) const;
};

/// Throws ParseError with byte offset and line.
std::vector<Entry> parse_document(std::string_view text);

bool is_name(std::string_view s);
std::string format_value(const Value& v);

/// Curves, meets and divisors collected from a list of entries.
struct ConfigSection {
  CurveConfig cfg;
  std::vector<std::pair<std::string, DivisorClass>> divisors;

  const DivisorClass& divisor(const std::string& label) const;
  bool has_divisor(const std::string& label) const;
};

/// A model file: one configuration plus any number of fibrations.
struct ModelFile {
  ConfigSection config;
  std::vector<std::pair<std::string, FibrationModel>> fibrations;
};

/// Consumes `curves`, `meets` and `divisor` entries; other keys are skipped.
/// Throws ParseError (malformed values, unknown curves).
ConfigSection read_config(const std::vector<Entry>& entries);

/// Throws ParseError for unknown keys or malformed fields.
FibrationModel read_fibration(const Entry& block, const ConfigSection& config);

/// Throws ParseError; unknown top-level keys are rejected.
ModelFile parse_model(std::string_view text);

/// Emits curves, meets (upper triangle, configuration order) and divisors.
std::string dump_config(const ConfigSection& c, const std::string& indent = "");
std::string dump_fibration(const std::string& name, const FibrationModel& m, const std::string& indent = "");

}  // namespace k3::text
