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
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subcb/element_set.hpp"
#include "subcb/errors.hpp"
#include "subcb/rng.hpp"

namespace subcb {

namespace detail {

// Gauss-Legendre nodes and weights on [0, 1] via Newton iteration on the
// Legendre polynomial recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(
    int n) {
  if (n < 1) throw std::domain_error("quadrature order must be >= 1");
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Initial guess for the i-th root of P_n on [-1, 1].
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    const double weight = 2.0 / ((1.0 - z * z) * pp * pp);
    // Map [-1, 1] -> [0, 1].
    x[i] = 0.5 * (1.0 - z);
    w[i] = 0.5 * weight;
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[n - 1 - i] = 0.5 * weight;
  }
  return {std::move(x), std::move(w)};
}

}  // namespace detail

// Subset-reweighting coefficients
//   w[s][t] = Integral_0^1 e^p/(e-1) * p^(t-1) * (1-p)^(s-t) dp,  s >= t >= 1,
// their row sums tau[s] = sum_t C(s,t) w[s][t], and binomials, computed once
// by Gauss-Legendre quadrature.  tau(0) = 0 by convention.
//
// The exponents make the reweighted aggregate act as the identity on modular
// functions: an element of S lands in C(s-1,t-1) subsets of each size t, and
// sum_t C(s-1,t-1) p^(t-1) (1-p)^(s-t) = 1 by the binomial theorem, so each
// element's weight integrates to exactly one.
class WeightTable {
 public:
  explicit WeightTable(int k_max, int quad_points = 96) : k_max_(k_max) {
    if (k_max_ < 1) throw std::domain_error("weight table needs k_max >= 1");
    auto [nodes, qw] = detail::gauss_legendre_01(quad_points);
    const double e_minus_1 = std::exp(1.0) - 1.0;
    w_.assign(k_max_ + 1, {});
    for (int s = 1; s <= k_max_; ++s) w_[s].assign(s + 1, 0.0);
    std::vector<double> p_pow(k_max_, 1.0), q_pow(k_max_, 1.0);
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double p = nodes[q];
      const double base = qw[q] * std::exp(p) / e_minus_1;
      for (int i = 1; i < k_max_; ++i) {
        p_pow[i] = p_pow[i - 1] * p;
        q_pow[i] = q_pow[i - 1] * (1.0 - p);
      }
      for (int s = 1; s <= k_max_; ++s) {
        for (int t = 1; t <= s; ++t) {
          w_[s][t] += base * p_pow[t - 1] * q_pow[s - t];
        }
      }
    }
    binom_.assign(k_max_ + 1, {});
    for (int s = 0; s <= k_max_; ++s) {
      binom_[s].assign(s + 1, 1.0);
      for (int t = 1; t < s; ++t) {
        binom_[s][t] = binom_[s - 1][t - 1] + binom_[s - 1][t];
      }
    }
    tau_.assign(k_max_ + 1, 0.0);
    for (int s = 1; s <= k_max_; ++s) {
      double acc = 0.0;
      for (int t = 1; t <= s; ++t) acc += binom_[s][t] * w_[s][t];
      tau_[s] = acc;
    }
  }

  int k_max() const { return k_max_; }

  double w(int s, int t) const {
    if (s < 1 || s > k_max_ || t < 1 || t > s) {
      throw std::domain_error("weight w(s,t) defined for 1 <= t <= s <= k_max");
    }
    return w_[s][t];
  }

  double tau(int s) const {
    if (s < 0 || s > k_max_) throw std::domain_error("tau(s) needs 0 <= s <= k_max");
    return tau_[s];
  }

  double binomial(int s, int t) const { return binom_[s][t]; }

 private:
  int k_max_;
  std::vector<std::vector<double>> w_;
  std::vector<std::vector<double>> binom_;
  std::vector<double> tau_;
};

// The cardinality law of the nonempty-subset distribution D_S:
//   P(T) = w[|S|][|T|] / tau(|S|) for nonempty T subset-of S,
// so P(|T| = t) = C(|S|, t) * w[|S|][t] / tau(|S|).
struct SubsetDistribution {
  ElementSet base;
  std::vector<double> cardinality_prob;  // index t-1 holds P(|T| = t)

  // Probability of one specific nonempty subset of the given cardinality.
  double subset_prob(int t) const {
    const int s = base.size();
    double count = 1.0;
    for (int i = 1; i <= t; ++i) count = count * (s - t + i) / i;
    return cardinality_prob[t - 1] / count;
  }
};

inline SubsetDistribution subset_distribution(const ElementSet& s,
                                              const WeightTable& table) {
  if (s.empty()) {
    throw std::invalid_argument("subset distribution requires a nonempty set");
  }
  const int n = s.size();
  if (n > table.k_max()) {
    throw std::domain_error("weight table too small for |S| = " +
                            std::to_string(n));
  }
  SubsetDistribution d;
  d.base = s;
  d.cardinality_prob.resize(n);
  const double tau = table.tau(n);
  double total = 0.0;
  for (int t = 1; t <= n; ++t) {
    d.cardinality_prob[t - 1] = table.binomial(n, t) * table.w(n, t) / tau;
    total += d.cardinality_prob[t - 1];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::logic_error("subset distribution does not sum to 1");
  }
  return d;
}

// Draws a nonempty subset: first the cardinality from the distribution's
// cardinality law, then a uniformly random subset of that size (partial
// Fisher-Yates over the base elements).
inline ElementSet sample_subset(const SubsetDistribution& d, Rng& rng) {
  const int n = d.base.size();
  int t = n;
  double u = uniform_real(rng);
  double acc = 0.0;
  for (int c = 1; c <= n; ++c) {
    acc += d.cardinality_prob[c - 1];
    if (u < acc) {
      t = c;
      break;
    }
  }
  std::vector<int> pool = d.base.elements();
  for (int i = 0; i < t; ++i) {
    int j = uniform_int(rng, i, n - 1);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(t);
  return ElementSet(std::move(pool));
}

using SetValueFn = std::function<double(const ElementSet&)>;

// Exact subset-reweighted aggregate Tv(S) = sum over nonempty T subset-of S
// of w[|S|][|T|] * v(T).  Enumerates 2^|S| - 1 subsets; throws CapacityError
// beyond the budget (default keeps |S| <= 15).
inline double t_value(const SetValueFn& v, const ElementSet& s,
                      const WeightTable& table,
                      std::uint64_t subset_budget = std::uint64_t{1} << 15) {
  const int n = s.size();
  if (n == 0) return 0.0;
  if (n > table.k_max()) {
    throw std::domain_error("weight table too small for |S| = " +
                            std::to_string(n));
  }
  if (n >= 63 || (std::uint64_t{1} << n) > subset_budget) {
    throw CapacityError("t_value: 2^" + std::to_string(n) +
                        " subsets exceed budget " + std::to_string(subset_budget));
  }
  const auto& elems = s.elements();
  double acc = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> sub;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) sub.push_back(elems[i]);
    }
    const int t = static_cast<int>(sub.size());
    acc += table.w(n, t) * v(ElementSet(std::move(sub)));
  }
  return acc;
}

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo aggregate: tau(|S|) * mean of v over draws from D_S, with the
// standard error of the estimate.
inline McEstimate t_value_mc(const SetValueFn& v, const ElementSet& s,
                             const WeightTable& table, int draws, Rng& rng) {
  if (s.empty()) return {0.0, 0.0};
  if (draws < 2) throw std::domain_error("t_value_mc needs >= 2 draws");
  const SubsetDistribution d = subset_distribution(s, table);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = v(sample_subset(d, rng));
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / draws;
  const double var = std::max(0.0, (sum_sq - draws * mean * mean) / (draws - 1));
  const double tau = table.tau(s.size());
  return {tau * mean, tau * std::sqrt(var / draws)};
}

}  // namespace subcb
