#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace declab::lab {

/// One parsed value. Arrays are flat and homogeneous.
using ConfigValue =
    std::variant<bool, double, std::string, std::vector<double>, std::vector<std::string>>;

/// Reader for the TOML-style subset used by scenario files:
///   [section] or [section.name] headers, bare-word keys, `key = value` pairs,
///   values: "strings", numbers, true/false, flat [a, b, c] arrays,
///   # comments (whole-line or trailing).
/// No nesting beyond one dot in section names, no inline tables, no dates.
/// Parse errors throw ValidationError with file:line context. Duplicate keys
/// and duplicate section headers are errors.
class ConfigTable {
 public:
  static ConfigTable parse_file(const std::string& path);
  static ConfigTable parse_string(const std::string& text,
                                  const std::string& origin = "<string>");

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  /// Sections in file order; keys in file order within a section.
  std::vector<std::string> section_names() const;
  std::vector<std::string> key_names(const std::string& section) const;

  /// Typed access; missing key or wrong type throws ValidationError naming
  /// `section.key`. Numbers do not coerce to strings or vice versa, but a
  /// whole number is fine where an integer is wanted.
  std::string get_string(const std::string& section, const std::string& key) const;
  double get_number(const std::string& section, const std::string& key) const;
  long get_integer(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  std::vector<double> get_number_array(const std::string& section,
                                       const std::string& key) const;
  std::vector<std::string> get_string_array(const std::string& section,
                                            const std::string& key) const;

  /// Defaulted variants for optional keys.
  std::string get_string_or(const std::string& section, const std::string& key,
                            std::string fallback) const;
  double get_number_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_integer_or(const std::string& section, const std::string& key,
                      long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;

  /// Rejects keys outside `allowed` in `section` (typo guard); throws with the
  /// offending name. Missing section passes.
  void restrict_keys(const std::string& section,
                     const std::vector<std::string>& allowed) const;

 private:
  const ConfigValue* find(const std::string& section, const std::string& key) const;
  const ConfigValue& require(const std::string& section, const std::string& key) const;

  struct Section {
    std::vector<std::string> order;
    std::map<std::string, ConfigValue> values;
  };
  std::vector<std::string> section_order_;
  std::map<std::string, Section> sections_;
  std::string origin_;
};

}  // namespace declab::lab
