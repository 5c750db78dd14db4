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

#include <cstdint>
#include <random>

namespace subcb {

using Rng = std::mt19937_64;

// Independent random streams are derived per (master seed, role); each
// replication owns one stream per role so environment randomness, algorithm
// randomness, and oracle randomness never interleave.
enum class StreamRole : std::uint32_t {
  kEnvironment = 0,
  kAlgorithm = 1,
  kOracle = 2,
};

inline Rng make_stream(std::uint64_t master_seed, StreamRole role) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed & 0xffffffffu),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(role)};
  return Rng(seq);
}

// Uniform draw from {lo, ..., hi}.
inline int uniform_int(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

inline double uniform_real(Rng& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

}  // namespace subcb
