#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vicinity/graph.hpp"

namespace vicinity {

// Flat `key = value` file. '#' starts a comment; values may be quoted;
// later keys override earlier ones.
class Config {
 public:
  static Config parse(std::string_view text) {
    Config c;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      std::string line(text.substr(pos, end - pos));
      pos = end + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string t = trimmed(line);
      if (t.empty()) continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
      const std::string key = trimmed(t.substr(0, eq));
      std::string value = trimmed(t.substr(eq + 1));
      if (key.empty()) throw ParseError(line_no, "empty key");
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      c.values_[key] = {value, line_no};
    }
    return c;
  }

  static Config load(const std::string& path) { return parse(detail::read_file(path)); }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second.text;
  }

  std::optional<std::string> find(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second.text;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return number(it->second);
  }

  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double x = number(it->second);
    if (x < 0 || x != std::floor(x)) throw ParseError(it->second.line, key + ": expected a non-negative integer");
    return static_cast<std::uint64_t>(x);
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second.text;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError(it->second.line, key + ": expected true or false");
  }

  // comma-separated list; "a..b" expands to the integers a through b
  std::vector<std::uint64_t> get_uint_list(const std::string& key, std::vector<std::uint64_t> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::uint64_t> out;
    for (const std::string& item : split_list(it->second.text)) {
      const auto dots = item.find("..");
      try {
        if (dots == std::string::npos) {
          out.push_back(std::stoull(item));
        } else {
          const auto a = std::stoull(item.substr(0, dots)), b = std::stoull(item.substr(dots + 2));
          if (b < a) throw ParseError(it->second.line, key + ": empty range " + item);
          for (auto x = a; x <= b; ++x) out.push_back(x);
        }
      } catch (const std::logic_error&) {
        throw ParseError(it->second.line, key + ": bad integer list item '" + item + "'");
      }
    }
    return out;
  }

  std::vector<std::string> get_list(const std::string& key, std::vector<std::string> fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : split_list(it->second.text);
  }

  // top-level commas only, so "gnm(10,20), tz(2)" splits into two items
  static std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        if (auto t = trimmed(cur); !t.empty()) out.push_back(t);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (auto t = trimmed(cur); !t.empty()) out.push_back(t);
    return out;
  }

 private:
  static std::string trimmed(std::string_view s) { return std::string(detail::trim(s)); }

  struct Value {
    std::string text;
    std::size_t line;
  };

  static double number(const Value& v) {
    try {
      std::size_t used = 0;
      const double x = std::stod(v.text, &used);
      if (used != v.text.size()) throw std::invalid_argument("trailing");
      return x;
    } catch (const std::logic_error&) {
      throw ParseError(v.line, "expected a number, got '" + v.text + "'");
    }
  }

  std::map<std::string, Value> values_;
};

}  // namespace vicinity
