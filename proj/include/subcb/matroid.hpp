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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "subcb/element_set.hpp"
#include "subcb/errors.hpp"
#include "subcb/rng.hpp"

namespace subcb {

enum class MatroidKind { kUniform, kPartition, kLaminar };

// The swap neighborhood of a set S: S itself (first) plus every feasible set
// obtained by exchanging one element of S for one element outside S.  Members
// after the center are ordered by (removed element, added element) ascending,
// which makes downstream sampling deterministic.
struct SwapNeighborhood {
  ElementSet center;
  std::vector<ElementSet> members;
};

// Number of r-subsets of n elements, saturating at 2^63-1 to keep budget
// comparisons safe.
inline std::uint64_t binomial_count(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  const std::uint64_t kCap = std::numeric_limits<std::int64_t>::max();
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) {
    // c <- c * (n - r + i) / i, exact at every step.
    std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
    if (c > kCap / num) return kCap;
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return c;
}

// A matroid over ground elements 0..A-1.  Three kinds are supported:
//  - uniform(k): independent iff |S| <= k;
//  - partition: disjoint blocks with per-block capacities; elements outside
//    every block are never independent;
//  - laminar: a nested chain N_1 subset-of N_2 subset-of ... with capacities
//    c_1 <= ... (independent iff |S 'intersect' N_i| <= c_i for all i);
//    elements outside the outermost chain set are unconstrained.
// Instances are immutable after construction; rank is computed greedily at
// construction time (greedy over an independence oracle reaches a base).
class Matroid {
 public:
  static Matroid uniform(int ground_size, int k) {
    if (ground_size < 1) throw std::domain_error("ground_size must be >= 1");
    if (k < 0 || k > ground_size) {
      throw std::domain_error("uniform matroid needs 0 <= k <= ground_size");
    }
    Matroid m(MatroidKind::kUniform, ground_size);
    m.uniform_k_ = k;
    m.rank_ = m.compute_rank();
    return m;
  }

  static Matroid partition(int ground_size, std::vector<ElementSet> blocks,
                           std::vector<int> caps) {
    if (ground_size < 1) throw std::domain_error("ground_size must be >= 1");
    if (blocks.size() != caps.size()) {
      throw std::domain_error("partition matroid: one capacity per block");
    }
    std::vector<int> seen(ground_size, 0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (caps[i] < 0 || caps[i] > blocks[i].size()) {
        throw std::domain_error(
            "partition matroid: capacities must satisfy 0 <= c_i <= |P_i|");
      }
      for (int a : blocks[i]) {
        if (a >= ground_size) {
          throw std::domain_error("partition matroid: element out of range");
        }
        if (seen[a]++) {
          throw std::domain_error("partition matroid: blocks must be disjoint");
        }
      }
    }
    Matroid m(MatroidKind::kPartition, ground_size);
    m.blocks_ = std::move(blocks);
    m.caps_ = std::move(caps);
    m.block_of_.assign(ground_size, -1);
    for (std::size_t i = 0; i < m.blocks_.size(); ++i) {
      for (int a : m.blocks_[i]) m.block_of_[a] = static_cast<int>(i);
    }
    m.rank_ = m.compute_rank();
    return m;
  }

  static Matroid laminar(int ground_size, std::vector<ElementSet> chain,
                         std::vector<int> caps) {
    if (ground_size < 1) throw std::domain_error("ground_size must be >= 1");
    if (chain.empty() || chain.size() != caps.size()) {
      throw std::domain_error("laminar matroid: one capacity per chain set");
    }
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (caps[i] < 0) throw std::domain_error("laminar capacities must be >= 0");
      for (int a : chain[i]) {
        if (a >= ground_size) {
          throw std::domain_error("laminar matroid: element out of range");
        }
      }
      if (i > 0 && !chain[i - 1].is_subset_of(chain[i])) {
        throw std::domain_error("laminar matroid: sets must form a nested chain");
      }
    }
    Matroid m(MatroidKind::kLaminar, ground_size);
    m.chain_ = std::move(chain);
    m.caps_ = std::move(caps);
    m.rank_ = m.compute_rank();
    return m;
  }

  // Laminar encoding of the ranking feasibility system: ground elements are
  // (position, item) pairs over `positions` items, flattened row-major as
  // position * positions + item; placements using the first s positions are
  // capped at s for every s.
  static Matroid ranking(int positions) {
    if (positions < 1) throw std::domain_error("positions must be >= 1");
    const int ground = positions * positions;
    std::vector<ElementSet> chain;
    std::vector<int> caps;
    std::vector<int> prefix;
    for (int s = 1; s <= positions; ++s) {
      for (int j = 0; j < positions; ++j) prefix.push_back((s - 1) * positions + j);
      chain.emplace_back(prefix);
      caps.push_back(s);
    }
    return laminar(ground, std::move(chain), std::move(caps));
  }

  MatroidKind kind() const { return kind_; }
  int ground_size() const { return ground_size_; }
  int rank() const { return rank_; }

  bool is_independent(const ElementSet& s) const {
    check_range(s);
    switch (kind_) {
      case MatroidKind::kUniform:
        return s.size() <= uniform_k_;
      case MatroidKind::kPartition: {
        std::vector<int> used(blocks_.size(), 0);
        for (int a : s) {
          int b = block_of_[a];
          if (b < 0) return false;  // outside every block: never independent
          if (++used[b] > caps_[b]) return false;
        }
        return true;
      }
      case MatroidKind::kLaminar: {
        for (std::size_t i = 0; i < chain_.size(); ++i) {
          if (set_intersect(s, chain_[i]).size() > caps_[i]) return false;
        }
        return true;
      }
    }
    return false;
  }

  bool is_base(const ElementSet& s) const {
    return s.size() == rank_ && is_independent(s);
  }

  // Equal-cardinality one-element exchanges of an independent S, plus S
  // itself.  |members| <= |S| * (A - |S|) + 1.
  SwapNeighborhood swap_neighborhood(const ElementSet& s) const {
    if (!is_independent(s)) {
      throw std::invalid_argument("swap_neighborhood requires an independent set");
    }
    return exchanges(s);
  }

  // Bases within one exchange of a base S, plus S itself.  Any independent
  // set of full rank is a base, so the member filter coincides with the swap
  // neighborhood once S is a base.
  SwapNeighborhood base_neighborhood(const ElementSet& s) const {
    if (!is_base(s)) {
      throw std::invalid_argument("base_neighborhood requires a base");
    }
    return exchanges(s);
  }

  // All bases in deterministic (lexicographic) order.  Throws CapacityError
  // when C(A, rank) exceeds the enumeration budget.
  std::vector<ElementSet> enumerate_bases(
      std::uint64_t budget = kDefaultEnumerationBudget) const {
    const std::uint64_t total = binomial_count(ground_size_, rank_);
    if (total > budget) {
      throw CapacityError("enumerate_bases: C(" + std::to_string(ground_size_) +
                          "," + std::to_string(rank_) + ") = " +
                          std::to_string(total) + " exceeds budget " +
                          std::to_string(budget));
    }
    std::vector<ElementSet> bases;
    std::vector<int> comb(rank_);
    std::iota(comb.begin(), comb.end(), 0);
    if (rank_ == 0) {
      bases.emplace_back();
      return bases;
    }
    while (true) {
      ElementSet s(comb);
      if (is_independent(s)) bases.push_back(std::move(s));
      // next lexicographic combination
      int i = rank_ - 1;
      while (i >= 0 && comb[i] == ground_size_ - rank_ + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < rank_; ++j) comb[j] = comb[j - 1] + 1;
    }
    return bases;
  }

  static constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

 private:
  Matroid(MatroidKind kind, int ground_size)
      : kind_(kind), ground_size_(ground_size) {}

  void check_range(const ElementSet& s) const {
    if (!s.empty() && s.elements().back() >= ground_size_) {
      throw std::domain_error("element id out of ground range");
    }
  }

  int compute_rank() const {
    ElementSet s;
    for (int a = 0; a < ground_size_; ++a) {
      ElementSet t = s.with(a);
      if (is_independent(t)) s = std::move(t);
    }
    return s.size();
  }

  SwapNeighborhood exchanges(const ElementSet& s) const {
    SwapNeighborhood nb;
    nb.center = s;
    nb.members.push_back(s);
    for (int out : s) {
      ElementSet reduced = s.without(out);
      for (int in = 0; in < ground_size_; ++in) {
        if (s.contains(in)) continue;
        ElementSet candidate = reduced.with(in);
        if (is_independent(candidate)) nb.members.push_back(std::move(candidate));
      }
    }
    return nb;
  }

  MatroidKind kind_;
  int ground_size_ = 0;
  int rank_ = 0;
  int uniform_k_ = 0;
  std::vector<ElementSet> blocks_;  // partition blocks
  std::vector<ElementSet> chain_;   // laminar nested chain
  std::vector<int> caps_;
  std::vector<int> block_of_;
};

// A base sampled by greedy over a uniformly random permutation.  Valid for any
// matroid; the induced law over bases is uniform for the uniform matroid but
// not in general (callers wanting exact uniformity enumerate bases first).
inline ElementSet random_permutation_base(const Matroid& m, Rng& rng) {
  std::vector<int> order(m.ground_size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  ElementSet s;
  for (int a : order) {
    ElementSet t = s.with(a);
    if (m.is_independent(t)) s = std::move(t);
  }
  return s;
}

}  // namespace subcb
