#include "declab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "declab/errors.hpp"

namespace declab::lab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strip a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    else if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

bool valid_bare_word(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
      return false;
  return true;
}

struct ParseCtx {
  const std::string& origin;
  int line;
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError(origin + ":" + std::to_string(line) + ": " + msg);
  }
};

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

ConfigValue parse_scalar(const std::string& raw, const ParseCtx& ctx) {
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.size() >= 2 && raw.front() == '"') {
    if (raw.back() != '"' || raw.size() < 2) ctx.fail("unterminated string");
    return raw.substr(1, raw.size() - 2);
  }
  double num;
  if (parse_number(raw, num)) return num;
  ctx.fail("cannot parse value '" + raw + "'");
}

std::vector<std::string> split_array_items(const std::string& inner, const ParseCtx& ctx) {
  std::vector<std::string> items;
  std::string cur;
  bool in_str = false;
  for (char c : inner) {
    if (c == '"') in_str = !in_str;
    if (c == ',' && !in_str) {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (in_str) ctx.fail("unterminated string in array");
  const std::string last = trim(cur);
  if (!last.empty()) items.push_back(last);
  for (const auto& it : items)
    if (it.empty()) ctx.fail("empty array element");
  return items;
}

ConfigValue parse_value(const std::string& raw, const ParseCtx& ctx) {
  if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']') ctx.fail("unterminated array");
    const auto items = split_array_items(raw.substr(1, raw.size() - 2), ctx);
    if (items.empty()) return std::vector<double>{};
    if (items.front().front() == '"') {
      std::vector<std::string> out;
      for (const auto& it : items) {
        ConfigValue v = parse_scalar(it, ctx);
        if (!std::holds_alternative<std::string>(v)) ctx.fail("mixed array element types");
        out.push_back(std::get<std::string>(v));
      }
      return out;
    }
    std::vector<double> out;
    for (const auto& it : items) {
      ConfigValue v = parse_scalar(it, ctx);
      if (!std::holds_alternative<double>(v)) ctx.fail("mixed array element types");
      out.push_back(std::get<double>(v));
    }
    return out;
  }
  return parse_scalar(raw, ctx);
}

const char* type_name(const ConfigValue& v) {
  switch (v.index()) {
    case 0: return "boolean";
    case 1: return "number";
    case 2: return "string";
    case 3: return "number array";
    default: return "string array";
  }
}

}  // namespace

ConfigTable ConfigTable::parse_string(const std::string& text, const std::string& origin) {
  ConfigTable t;
  t.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  ParseCtx ctx{origin, 0};
  while (std::getline(in, raw)) {
    ++ctx.line;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') ctx.fail("unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      if (!valid_bare_word(current)) ctx.fail("bad section name '" + current + "'");
      if (t.sections_.count(current)) ctx.fail("duplicate section [" + current + "]");
      t.sections_[current] = {};
      t.section_order_.push_back(current);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) ctx.fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!valid_bare_word(key) || key.find('.') != std::string::npos)
      ctx.fail("bad key '" + key + "'");
    if (val.empty()) ctx.fail("missing value for '" + key + "'");
    if (current.empty()) ctx.fail("key '" + key + "' outside any section");
    auto& sec = t.sections_[current];
    if (sec.values.count(key)) ctx.fail("duplicate key '" + key + "'");
    sec.values.emplace(key, parse_value(val, ctx));
    sec.order.push_back(key);
  }
  return t;
}

ConfigTable ConfigTable::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

bool ConfigTable::has_section(const std::string& section) const {
  return sections_.count(section) != 0;
}

bool ConfigTable::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::vector<std::string> ConfigTable::section_names() const { return section_order_; }

std::vector<std::string> ConfigTable::key_names(const std::string& section) const {
  auto it = sections_.find(section);
  return it == sections_.end() ? std::vector<std::string>{} : it->second.order;
}

const ConfigValue* ConfigTable::find(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return nullptr;
  auto kt = it->second.values.find(key);
  return kt == it->second.values.end() ? nullptr : &kt->second;
}

const ConfigValue& ConfigTable::require(const std::string& section,
                                        const std::string& key) const {
  const ConfigValue* v = find(section, key);
  if (!v)
    throw ValidationError(origin_ + ": missing required key '" + section + "." + key + "'");
  return *v;
}

namespace {
[[noreturn]] void type_fail(const std::string& origin, const std::string& section,
                            const std::string& key, const char* want, const ConfigValue& v) {
  throw ValidationError(origin + ": '" + section + "." + key + "' must be a " + want +
                        ", got " + type_name(v));
}
}  // namespace

std::string ConfigTable::get_string(const std::string& section, const std::string& key) const {
  const auto& v = require(section, key);
  if (!std::holds_alternative<std::string>(v)) type_fail(origin_, section, key, "string", v);
  return std::get<std::string>(v);
}

double ConfigTable::get_number(const std::string& section, const std::string& key) const {
  const auto& v = require(section, key);
  if (!std::holds_alternative<double>(v)) type_fail(origin_, section, key, "number", v);
  return std::get<double>(v);
}

long ConfigTable::get_integer(const std::string& section, const std::string& key) const {
  const double d = get_number(section, key);
  const double r = std::round(d);
  if (std::abs(d - r) > 1e-9)
    throw ValidationError(origin_ + ": '" + section + "." + key + "' must be an integer");
  return static_cast<long>(r);
}

bool ConfigTable::get_bool(const std::string& section, const std::string& key) const {
  const auto& v = require(section, key);
  if (!std::holds_alternative<bool>(v)) type_fail(origin_, section, key, "boolean", v);
  return std::get<bool>(v);
}

std::vector<double> ConfigTable::get_number_array(const std::string& section,
                                                  const std::string& key) const {
  const auto& v = require(section, key);
  if (!std::holds_alternative<std::vector<double>>(v))
    type_fail(origin_, section, key, "number array", v);
  return std::get<std::vector<double>>(v);
}

std::vector<std::string> ConfigTable::get_string_array(const std::string& section,
                                                       const std::string& key) const {
  const auto& v = require(section, key);
  if (!std::holds_alternative<std::vector<std::string>>(v))
    type_fail(origin_, section, key, "string array", v);
  return std::get<std::vector<std::string>>(v);
}

std::string ConfigTable::get_string_or(const std::string& section, const std::string& key,
                                       std::string fallback) const {
  return has(section, key) ? get_string(section, key) : std::move(fallback);
}

double ConfigTable::get_number_or(const std::string& section, const std::string& key,
                                  double fallback) const {
  return has(section, key) ? get_number(section, key) : fallback;
}

long ConfigTable::get_integer_or(const std::string& section, const std::string& key,
                                 long fallback) const {
  return has(section, key) ? get_integer(section, key) : fallback;
}

bool ConfigTable::get_bool_or(const std::string& section, const std::string& key,
                              bool fallback) const {
  return has(section, key) ? get_bool(section, key) : fallback;
}

void ConfigTable::restrict_keys(const std::string& section,
                                const std::vector<std::string>& allowed) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return;
  for (const auto& k : it->second.order) {
    bool ok = false;
    for (const auto& a : allowed)
      if (k == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw ValidationError(origin_ + ": unknown key '" + section + "." + k + "'");
  }
}

}  // namespace declab::lab
