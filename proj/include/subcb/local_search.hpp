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

#include <functional>
#include <stdexcept>

#include "subcb/element_set.hpp"
#include "subcb/igw.hpp"
#include "subcb/matroid.hpp"

namespace subcb {

enum class NeighborhoodMode { kSwap, kBase };

using ScoreFn = std::function<double(const ElementSet&)>;

struct LocalSearchResult {
  ElementSet set;
  double score = 0.0;
  int iterations = 0;  // accepted pivot moves
  bool converged = false;
};

// Deterministic local maximization of `score` over single-element exchanges:
// greedy initialization to a base (largest marginal gain, ties to the lowest
// element id), then best-improvement pivoting until no neighbor beats the
// incumbent by more than `improvement_tol` (ties stay with the incumbent) or
// `max_iters` moves were made.  A rank-0 matroid yields the empty set,
// converged.
inline LocalSearchResult local_optimum(const ScoreFn& score, const Matroid& m,
                                       NeighborhoodMode mode,
                                       double improvement_tol = 1e-9,
                                       int max_iters = 10000) {
  if (improvement_tol < 0.0) {
    throw std::domain_error("improvement_tol must be >= 0");
  }
  ElementSet current;
  if (m.rank() == 0) {
    return {current, score(current), 0, true};
  }
  // Greedy to a base.
  while (current.size() < m.rank()) {
    int best_elem = -1;
    double best_score = 0.0;
    for (int a = 0; a < m.ground_size(); ++a) {
      if (current.contains(a)) continue;
      ElementSet candidate = current.with(a);
      if (!m.is_independent(candidate)) continue;
      const double s = score(candidate);
      if (best_elem < 0 || s > best_score) {
        best_elem = a;
        best_score = s;
      }
    }
    if (best_elem < 0) break;  // cannot happen in a matroid below rank
    current = current.with(best_elem);
  }
  double current_score = score(current);
  int iterations = 0;
  bool converged = false;
  while (iterations < max_iters) {
    const SwapNeighborhood nb = (mode == NeighborhoodMode::kSwap)
                                    ? m.swap_neighborhood(current)
                                    : m.base_neighborhood(current);
    // Best improvement; the center is members[0], so ties keep the incumbent.
    int best = 0;
    double best_score = current_score;
    for (std::size_t i = 1; i < nb.members.size(); ++i) {
      const double s = score(nb.members[i]);
      if (s > best_score) {
        best = static_cast<int>(i);
        best_score = s;
      }
    }
    if (best == 0 || best_score <= current_score + improvement_tol) {
      converged = true;
      break;
    }
    current = nb.members[best];
    current_score = best_score;
    ++iterations;
  }
  return {current, current_score, iterations, converged};
}

// Scores every member of a neighborhood in its deterministic order.
inline ScoredActions neighborhood_scores(const ScoreFn& score,
                                         const SwapNeighborhood& nb,
                                         double gamma) {
  ScoredActions sa;
  sa.gamma = gamma;
  sa.actions = nb.members;
  sa.scores.reserve(nb.members.size());
  for (const auto& s : nb.members) sa.scores.push_back(score(s));
  return sa;
}

}  // namespace subcb
