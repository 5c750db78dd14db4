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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "subcb/element_set.hpp"
#include "subcb/rng.hpp"

namespace subcb {

// A finite action slate with predicted scores and the exploration scale used
// to convert score gaps into sampling probabilities.
struct ScoredActions {
  std::vector<ElementSet> actions;
  std::vector<double> scores;
  double gamma = 1.0;
};

// Inverse-gap weighting over K scores: with b the greedy index (argmax, ties
// to the lowest index),
//   p(a) = 1 / (2*K*mu + gamma * (score(b) - score(a)))  for a != b,
//   p(b) = 1 - sum of the others  (always >= 1/2 for mu >= 1).
// mu is an optional stiffening multiplier on the 2K term (default 1).
// K = 1 degenerates to a point mass.
inline std::vector<double> igw_distribution(const std::vector<double>& scores,
                                            double gamma, double mu = 1.0) {
  if (scores.empty()) throw std::invalid_argument("igw: empty action slate");
  if (!(gamma > 0.0)) throw std::domain_error("igw: gamma must be > 0");
  if (!(mu >= 1.0)) throw std::domain_error("igw: mu must be >= 1");
  const int k = static_cast<int>(scores.size());
  if (k == 1) return {1.0};
  int b = 0;
  for (int a = 1; a < k; ++a) {
    if (scores[a] > scores[b]) b = a;
  }
  std::vector<double> p(k, 0.0);
  double rest = 0.0;
  for (int a = 0; a < k; ++a) {
    if (a == b) continue;
    p[a] = 1.0 / (2.0 * k * mu + gamma * (scores[b] - scores[a]));
    rest += p[a];
  }
  p[b] = 1.0 - rest;
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return p;
}

inline std::vector<double> igw_distribution(const ScoredActions& sa,
                                            double mu = 1.0) {
  if (sa.actions.size() != sa.scores.size()) {
    throw std::invalid_argument("igw: actions/scores size mismatch");
  }
  return igw_distribution(sa.scores, sa.gamma, mu);
}

// Draws an index from a categorical distribution by a deterministic CDF walk.
inline int sample_categorical(const std::vector<double>& probs, Rng& rng) {
  const double u = uniform_real(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;  // floating-point residue
}

inline int igw_sample(const ScoredActions& sa, Rng& rng, double mu = 1.0) {
  return sample_categorical(igw_distribution(sa, mu), rng);
}

}  // namespace subcb
