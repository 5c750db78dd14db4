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

#include <cstdio>
#include <cstdlib>
#include <string>

namespace subcb {

// Log verbosity, controlled solely by the SUBCB_LOG environment variable:
// "quiet" silences warnings, "debug" enables chatter, anything else (or the
// variable being unset) means warnings only.
enum class LogLevel { kQuiet = 0, kWarn = 1, kDebug = 2 };

inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("SUBCB_LOG");
    if (env == nullptr) return LogLevel::kWarn;
    const std::string v(env);
    if (v == "quiet") return LogLevel::kQuiet;
    if (v == "debug") return LogLevel::kDebug;
    return LogLevel::kWarn;
  }();
  return level;
}

inline void log_warn(const std::string& msg) {
  if (log_level() >= LogLevel::kWarn) {
    std::fprintf(stderr, "warning: %s\n", msg.c_str());
  }
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::kDebug) {
    std::fprintf(stderr, "debug: %s\n", msg.c_str());
  }
}

// Fixed-format double for data files: %.10g is compact, deterministic, and
// precise enough that logged values are stable across runs byte for byte.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Round-trip-exact double for config files: %.17g preserves every bit of an
// IEEE double through parse -> serialize -> parse.
inline std::string format_double_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace subcb
