#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "igac/types.hpp"

namespace igac {

/// Value of one TOML key: number, boolean, string, or a homogeneous array
/// of numbers or strings.
struct TomlValue {
  std::variant<double, bool, std::string, std::vector<double>,
               std::vector<std::string>>
      v;
};

/// Flat TOML subset: comments, [section] headers, and key = value lines
/// with numbers, booleans, quoted strings, and arrays thereof. Enough for
/// the experiment configs; nested tables and dotted keys are rejected with
/// a line-numbered diagnostic.
class TomlDocument {
 public:
  static TomlDocument parse(const std::string& text);
  static TomlDocument parse_file(const std::string& path);

  bool has_section(const std::string& s) const;
  bool has(const std::string& section, const std::string& key) const;
  std::vector<std::string> sections() const;

  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key,
                   double fallback) const;
  bool boolean_or(const std::string& section, const std::string& key,
                  bool fallback) const;
  std::string string(const std::string& section, const std::string& key) const;
  std::string string_or(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
  std::vector<double> numbers(const std::string& section,
                              const std::string& key) const;
  std::vector<std::string> strings(const std::string& section,
                                   const std::string& key) const;

  const std::string& text() const { return text_; }

 private:
  const TomlValue& get(const std::string& section,
                       const std::string& key) const;
  std::map<std::string, std::map<std::string, TomlValue>> sections_;
  std::string text_;
};

}  // namespace igac
