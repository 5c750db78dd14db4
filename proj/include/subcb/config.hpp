// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Experiment configuration format: flat `key = value` lines with dotted keys
// for nesting, `#` comments, and whitespace-separated numeric lists in
// brackets (`[1 2 3]`; rows split by `;` form a matrix, which may span
// lines).  Values are numbers, bare string tokens, arrays, or matrices.
// Parsing errors carry the source name and line.  Serialization orders keys
// lexicographically and prints numbers with full precision, so
// parse -> serialize -> parse is the identity.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subcb/errors.hpp"
#include "subcb/io.hpp"

namespace subcb {

class ConfigValue {
 public:
  enum class Kind { kNumber, kString, kArray, kMatrix };

  static ConfigValue number(double v) {
    ConfigValue c;
    c.kind_ = Kind::kNumber;
    c.number_ = v;
    return c;
  }
  static ConfigValue string(std::string v) {
    ConfigValue c;
    c.kind_ = Kind::kString;
    c.string_ = std::move(v);
    return c;
  }
  static ConfigValue array(std::vector<double> v) {
    ConfigValue c;
    c.kind_ = Kind::kArray;
    c.rows_.push_back(std::move(v));
    return c;
  }
  static ConfigValue matrix(std::vector<std::vector<double>> rows) {
    ConfigValue c;
    c.kind_ = Kind::kMatrix;
    c.rows_ = std::move(rows);
    return c;
  }

  Kind kind() const { return kind_; }
  double as_number() const { return number_; }
  const std::string& as_string() const { return string_; }
  const std::vector<double>& as_array() const { return rows_[0]; }
  const std::vector<std::vector<double>>& as_matrix() const { return rows_; }

  bool operator==(const ConfigValue& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case Kind::kNumber:
        return number_ == o.number_;
      case Kind::kString:
        return string_ == o.string_;
      case Kind::kArray:
      case Kind::kMatrix:
        return rows_ == o.rows_;
    }
    return false;
  }

 private:
  Kind kind_ = Kind::kNumber;
  double number_ = 0.0;
  std::string string_;
  std::vector<std::vector<double>> rows_;  // single row for arrays
};

namespace detail {

inline bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '-';
}

inline bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '-' || c == '+' || c == '/' || c == ':';
}

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline bool parse_full_double(const std::string& token, double* out) {
  if (token.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) return false;
  *out = v;
  return true;
}

}  // namespace detail

class ConfigMap {
 public:
  // Parses configuration text.  `source` names the input in error messages.
  static ConfigMap parse(const std::string& text,
                         const std::string& source = "config") {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string physical;
    int line_no = 0;
    while (std::getline(in, physical)) {
      ++line_no;
      const int start_line = line_no;
      std::string logical = strip_comment(physical);
      // Bracketed values may span physical lines; join until balanced.
      while (open_bracket(logical)) {
        if (!std::getline(in, physical)) {
          throw ConfigError(source + ":" + std::to_string(start_line) +
                            ": unterminated '['");
        }
        ++line_no;
        logical += ' ';
        logical += strip_comment(physical);
      }
      const std::string body = detail::trim(logical);
      if (body.empty()) continue;
      cfg.parse_line(body, source, start_line);
    }
    return cfg;
  }

  static ConfigMap parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
  }

  // Lexicographic key order and full-precision numbers: the output reparses
  // to an equal map.
  std::string serialize() const {
    std::ostringstream out;
    for (const auto& [key, value] : entries_) {
      out << key << " = ";
      switch (value.kind()) {
        case ConfigValue::Kind::kNumber:
          out << format_double_exact(value.as_number());
          break;
        case ConfigValue::Kind::kString:
          out << value.as_string();
          break;
        case ConfigValue::Kind::kArray: {
          out << '[';
          const auto& row = value.as_array();
          for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << format_double_exact(row[i]);
          }
          out << ']';
          break;
        }
        case ConfigValue::Kind::kMatrix: {
          out << '[';
          const auto& rows = value.as_matrix();
          for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r) out << "; ";
            for (std::size_t i = 0; i < rows[r].size(); ++i) {
              if (i) out << ' ';
              out << format_double_exact(rows[r][i]);
            }
          }
          // a lone ';' keeps single-row matrices distinct from arrays
          if (rows.size() == 1) out << ';';
          out << ']';
          break;
        }
      }
      out << '\n';
    }
    return out.str();
  }

  bool operator==(const ConfigMap& o) const { return entries_ == o.entries_; }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  std::size_t size() const { return entries_.size(); }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
  }

  std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (auto it = entries_.lower_bound(prefix); it != entries_.end(); ++it) {
      if (it->first.compare(0, prefix.size(), prefix) != 0) break;
      out.push_back(it->first);
    }
    return out;
  }

  // --- typed getters (missing keys and kind mismatches throw ConfigError) ---

  double number(const std::string& key) const {
    return expect(key, ConfigValue::Kind::kNumber).as_number();
  }
  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) const {
    const double v = number(key);
    const double r = std::nearbyint(v);
    if (std::abs(v - r) > 1e-9 || std::abs(v) > 1e15) {
      throw ConfigError("key '" + key + "': expected an integer, got " +
                        format_double_exact(v));
    }
    return static_cast<int>(r);
  }
  int integer_or(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  const std::string& str(const std::string& key) const {
    return expect(key, ConfigValue::Kind::kString).as_string();
  }
  std::string str_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
  }

  // True when the key exists and holds a string value; lets callers test for
  // tokens like "auto" on keys that otherwise carry numbers.
  bool is_string(const std::string& key) const {
    const auto it = entries_.find(key);
    return it != entries_.end() &&
           it->second.kind() == ConfigValue::Kind::kString;
  }

  bool boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = str(key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v +
                      "'");
  }

  const std::vector<double>& array(const std::string& key) const {
    return expect(key, ConfigValue::Kind::kArray).as_array();
  }

  const std::vector<std::vector<double>>& matrix(const std::string& key) const {
    return expect(key, ConfigValue::Kind::kMatrix).as_matrix();
  }

  std::vector<int> int_array(const std::string& key) const {
    std::vector<int> out;
    for (double v : array(key)) out.push_back(to_int(key, v));
    return out;
  }

  std::vector<std::vector<int>> int_matrix(const std::string& key) const {
    std::vector<std::vector<int>> out;
    for (const auto& row : matrix(key)) {
      out.emplace_back();
      for (double v : row) out.back().push_back(to_int(key, v));
    }
    return out;
  }

  // --- programmatic construction ---

  void set_number(const std::string& key, double v) {
    entries_[validated_key(key)] = ConfigValue::number(v);
  }
  void set_string(const std::string& key, const std::string& v) {
    double ignored;
    if (v.empty() || detail::parse_full_double(v, &ignored)) {
      throw ConfigError("key '" + key +
                        "': string values must be nonempty and non-numeric");
    }
    for (char c : v) {
      if (!detail::is_token_char(c)) {
        throw ConfigError("key '" + key + "': invalid character in string '" +
                          v + "'");
      }
    }
    entries_[validated_key(key)] = ConfigValue::string(v);
  }
  void set_array(const std::string& key, std::vector<double> v) {
    entries_[validated_key(key)] = ConfigValue::array(std::move(v));
  }
  void set_matrix(const std::string& key, std::vector<std::vector<double>> v) {
    if (v.empty()) {
      throw ConfigError("key '" + key + "': matrix needs at least one row");
    }
    entries_[validated_key(key)] = ConfigValue::matrix(std::move(v));
  }

 private:
  static std::string strip_comment(const std::string& line) {
    const std::size_t pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
  }

  static bool open_bracket(const std::string& line) {
    bool open = false;
    for (char c : line) {
      if (c == '[') {
        if (open) throw ConfigError("nested '[' is not supported");
        open = true;
      } else if (c == ']') {
        open = false;
      }
    }
    return open;
  }

  static std::string validated_key(const std::string& key) {
    if (key.empty()) throw ConfigError("empty key");
    for (char c : key) {
      if (!detail::is_key_char(c)) {
        throw ConfigError("invalid character in key '" + key + "'");
      }
    }
    return key;
  }

  void parse_line(const std::string& body, const std::string& source,
                  int line) {
    auto fail = [&](const std::string& msg) -> void {
      throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
    };
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = detail::trim(body.substr(0, eq));
    const std::string value = detail::trim(body.substr(eq + 1));
    if (key.empty()) fail("empty key");
    for (char c : key) {
      if (!detail::is_key_char(c)) {
        fail("invalid character in key '" + key + "'");
      }
    }
    if (entries_.count(key)) fail("duplicate key '" + key + "'");
    if (value.empty()) fail("missing value for key '" + key + "'");

    if (value.front() == '[') {
      if (value.back() != ']') fail("trailing characters after ']'");
      const std::string inner = value.substr(1, value.size() - 2);
      if (inner.find('[') != std::string::npos) fail("nested '['");
      const bool is_matrix = inner.find(';') != std::string::npos;
      std::vector<std::vector<double>> rows;
      std::size_t begin = 0;
      while (begin <= inner.size()) {
        std::size_t end = inner.find(';', begin);
        const bool last = end == std::string::npos;
        const std::string chunk =
            detail::trim(inner.substr(begin, last ? std::string::npos
                                                  : end - begin));
        if (!chunk.empty()) {
          rows.emplace_back();
          std::istringstream row(chunk);
          std::string token;
          while (row >> token) {
            double v = 0.0;
            if (!detail::parse_full_double(token, &v)) {
              fail("'" + token + "' is not a number");
            }
            rows.back().push_back(v);
          }
        } else if (!last) {
          fail("empty matrix row");
        }
        // an empty final chunk is "[]" for arrays or the trailing ';' that
        // marks a single-row matrix
        if (last) break;
        begin = end + 1;
      }
      if (is_matrix) {
        if (rows.empty()) fail("matrix needs at least one row");
        entries_[key] = ConfigValue::matrix(std::move(rows));
      } else {
        entries_[key] = ConfigValue::array(
            rows.empty() ? std::vector<double>{} : std::move(rows[0]));
      }
      return;
    }

    double num = 0.0;
    if (detail::parse_full_double(value, &num)) {
      entries_[key] = ConfigValue::number(num);
      return;
    }
    for (char c : value) {
      if (!detail::is_token_char(c)) {
        fail("invalid value '" + value +
             "' (expected a number, token, or bracketed list)");
      }
    }
    entries_[key] = ConfigValue::string(value);
  }

  const ConfigValue& expect(const std::string& key,
                            ConfigValue::Kind kind) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing key '" + key + "'");
    if (it->second.kind() != kind) {
      static const char* names[] = {"number", "string", "array", "matrix"};
      throw ConfigError("key '" + key + "': expected a " +
                        names[static_cast<int>(kind)]);
    }
    return it->second;
  }

  static int to_int(const std::string& key, double v) {
    const double r = std::nearbyint(v);
    if (std::abs(v - r) > 1e-9) {
      throw ConfigError("key '" + key + "': expected integers, got " +
                        format_double_exact(v));
    }
    return static_cast<int>(r);
  }

  std::map<std::string, ConfigValue> entries_;
};

}  // namespace subcb
