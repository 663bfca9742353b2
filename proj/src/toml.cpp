#include "igac/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace igac {
namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ValidationError("config line " + std::to_string(line) + ": " + msg);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

TomlValue parse_scalar(const std::string& raw, int line) {
  const std::string s = trim(raw);
  if (s.empty()) fail(line, "missing value");
  if (s == "true") return TomlValue{true};
  if (s == "false") return TomlValue{false};
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      fail(line, "unterminated string value");
    return TomlValue{s.substr(1, s.size() - 2)};
  }
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) fail(line, "trailing characters after number");
    return TomlValue{v};
  } catch (const std::invalid_argument&) {
    fail(line, "cannot parse value '" + s +
                   "' (strings must be double-quoted)");
  } catch (const std::out_of_range&) {
    fail(line, "number out of range: '" + s + "'");
  }
}

TomlValue parse_array(const std::string& raw, int line) {
  const std::string s = trim(raw);
  const std::string inner = trim(s.substr(1, s.size() - 2));
  std::vector<std::string> items;
  std::string cur;
  bool in_string = false;
  for (char c : inner) {
    if (c == '"') in_string = !in_string;
    if (c == ',' && !in_string) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) items.push_back(cur);

  std::vector<double> nums;
  std::vector<std::string> strs;
  for (const auto& item : items) {
    const TomlValue v = parse_scalar(item, line);
    if (std::holds_alternative<double>(v.v))
      nums.push_back(std::get<double>(v.v));
    else if (std::holds_alternative<std::string>(v.v))
      strs.push_back(std::get<std::string>(v.v));
    else
      fail(line, "array elements must be numbers or strings");
  }
  if (!nums.empty() && !strs.empty())
    fail(line, "mixed-type arrays are not supported");
  if (!strs.empty()) return TomlValue{strs};
  return TomlValue{nums};
}

}  // namespace

TomlDocument TomlDocument::parse(const std::string& text) {
  TomlDocument doc;
  doc.text_ = text;
  std::istringstream in(text);
  std::string raw_line;
  std::string section;  // "" = top level
  int line_no = 0;

  while (std::getline(in, raw_line)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw_line));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(line_no, "empty section name");
      if (section.find('.') != std::string::npos)
        fail(line_no, "nested tables are not supported");
      doc.sections_[section];
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(line_no, "expected 'key = value' or '[section]'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (key.find('.') != std::string::npos)
      fail(line_no, "dotted keys are not supported");
    if (doc.sections_[section].count(key))
      fail(line_no, "duplicate key '" + key + "' in section [" + section + "]");

    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') fail(line_no, "unterminated array");
      doc.sections_[section][key] = parse_array(value, line_no);
    } else {
      doc.sections_[section][key] = parse_scalar(value, line_no);
    }
  }
  return doc;
}

TomlDocument TomlDocument::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool TomlDocument::has_section(const std::string& s) const {
  return sections_.count(s) > 0;
}

bool TomlDocument::has(const std::string& section,
                       const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::vector<std::string> TomlDocument::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, body] : sections_) {
    (void)body;
    out.push_back(name);
  }
  return out;
}

const TomlValue& TomlDocument::get(const std::string& section,
                                   const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end())
    throw ValidationError("config: missing section [" + section + "]");
  auto jt = it->second.find(key);
  if (jt == it->second.end())
    throw ValidationError("config: missing key [" + section + "]." + key);
  return jt->second;
}

double TomlDocument::number(const std::string& section,
                            const std::string& key) const {
  const TomlValue& v = get(section, key);
  if (!std::holds_alternative<double>(v.v))
    throw ValidationError("config: [" + section + "]." + key +
                          " must be a number");
  return std::get<double>(v.v);
}

double TomlDocument::number_or(const std::string& section,
                               const std::string& key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

bool TomlDocument::boolean_or(const std::string& section,
                              const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const TomlValue& v = get(section, key);
  if (!std::holds_alternative<bool>(v.v))
    throw ValidationError("config: [" + section + "]." + key +
                          " must be true or false");
  return std::get<bool>(v.v);
}

std::string TomlDocument::string(const std::string& section,
                                 const std::string& key) const {
  const TomlValue& v = get(section, key);
  if (!std::holds_alternative<std::string>(v.v))
    throw ValidationError("config: [" + section + "]." + key +
                          " must be a quoted string");
  return std::get<std::string>(v.v);
}

std::string TomlDocument::string_or(const std::string& section,
                                    const std::string& key,
                                    const std::string& fallback) const {
  return has(section, key) ? string(section, key) : fallback;
}

std::vector<double> TomlDocument::numbers(const std::string& section,
                                          const std::string& key) const {
  const TomlValue& v = get(section, key);
  if (std::holds_alternative<std::vector<double>>(v.v))
    return std::get<std::vector<double>>(v.v);
  if (std::holds_alternative<double>(v.v))
    return {std::get<double>(v.v)};
  throw ValidationError("config: [" + section + "]." + key +
                        " must be a number array");
}

std::vector<std::string> TomlDocument::strings(const std::string& section,
                                               const std::string& key) const {
  const TomlValue& v = get(section, key);
  if (std::holds_alternative<std::vector<std::string>>(v.v))
    return std::get<std::vector<std::string>>(v.v);
  if (std::holds_alternative<std::string>(v.v))
    return {std::get<std::string>(v.v)};
  throw ValidationError("config: [" + section + "]." + key +
                        " must be a string array");
}

}  // namespace igac
