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

#include <stdexcept>
#include <string>

namespace subcb {

// Error taxonomy used across the library:
//   std::domain_error      - argument outside its mathematical domain
//                            (element id out of range, gamma <= 0, ||theta|| > 1).
//   std::invalid_argument  - structural precondition violated
//                            (set not independent / not a base, size mismatch).
//   CapacityError          - an enumeration budget was exceeded and no
//                            approximate fallback was requested.
//   ConfigError            - experiment configuration is malformed or
//                            inconsistent; carries a line anchor when the
//                            problem is tied to a config file location.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subcb
