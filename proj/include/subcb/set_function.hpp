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
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subcb/element_set.hpp"
#include "subcb/errors.hpp"
#include "subcb/rng.hpp"

namespace subcb {

// The approximation constant 1 - 1/e attached to base local optima of the
// subset-reweighted potential (and to greedy benchmark values).
inline constexpr double kOneMinusInvE = 1.0 - 0.36787944117144233;

// Observed side information for a round.  Norm constraints (||x|| <= 1 for
// GLM-style oracles) are enforced at the engine boundary, not here.
struct Context {
  std::vector<double> x;
};

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::domain_error("dot: dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline std::vector<double> matvec(const std::vector<std::vector<double>>& m,
                                  const std::vector<double>& x) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], x);
  return out;
}

// Scalar link functions for (sums of) generalized linear reward models.
enum class LinkKind { kLogistic, kClippedLinear, kRelu };

inline double apply_link(LinkKind link, double a) {
  switch (link) {
    case LinkKind::kLogistic:
      return 1.0 / (1.0 + std::exp(-a));
    case LinkKind::kClippedLinear:
      return clamp01(a);
    case LinkKind::kRelu:
      return a > 0.0 ? a : 0.0;
  }
  return 0.0;
}

inline LinkKind link_from_name(const std::string& name) {
  if (name == "logistic") return LinkKind::kLogistic;
  if (name == "clipped_linear") return LinkKind::kClippedLinear;
  if (name == "relu") return LinkKind::kRelu;
  throw std::domain_error("unknown link function: " + name);
}

// A contextual set-utility model.  value() returns the normalized utility in
// [0, 1]; normalization_constant() reports the raw-scale constant divided out
// (1 when the functional is natively normalized).  Implementations are
// immutable after construction and safe for concurrent value() calls.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual double value(const ElementSet& s, const Context& ctx) const = 0;
  virtual double normalization_constant() const { return 1.0; }
  // True when value() is a Monte Carlo estimate rather than an exact formula.
  virtual bool is_estimated() const { return false; }
};

using SetFunctionPtr = std::shared_ptr<const SetFunction>;

// Additive utility: sum of nonnegative per-element weights, normalized by the
// full-ground-set total (or an explicit constant).
class ModularFunction : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> weights, double norm = 0.0)
      : weights_(std::move(weights)) {
    double total = 0.0;
    for (double w : weights_) {
      if (w < 0.0) throw std::domain_error("modular weights must be >= 0");
      total += w;
    }
    norm_ = norm > 0.0 ? norm : (total > 0.0 ? total : 1.0);
  }

  double value(const ElementSet& s, const Context&) const override {
    double v = 0.0;
    for (int a : s) {
      check_elem(a);
      v += weights_[a];
    }
    return v / norm_;
  }

  double normalization_constant() const override { return norm_; }

 private:
  void check_elem(int a) const {
    if (a >= static_cast<int>(weights_.size())) {
      throw std::domain_error("modular: element id out of range");
    }
  }
  std::vector<double> weights_;
  double norm_;
};

// Weighted coverage: each element covers a few topics, each topic has a
// nonnegative weight, and the utility of S is the total weight of topics
// covered by S, normalized by the weight coverable by the full ground set.
class CoverageFunction : public SetFunction {
 public:
  CoverageFunction(std::vector<double> topic_weights,
                   std::vector<std::vector<int>> element_topics)
      : topic_weights_(std::move(topic_weights)),
        element_topics_(std::move(element_topics)) {
    for (double w : topic_weights_) {
      if (w < 0.0) throw std::domain_error("topic weights must be >= 0");
    }
    std::vector<char> coverable(topic_weights_.size(), 0);
    for (const auto& topics : element_topics_) {
      for (int g : topics) {
        if (g < 0 || g >= static_cast<int>(topic_weights_.size())) {
          throw std::domain_error("coverage: topic id out of range");
        }
        coverable[g] = 1;
      }
    }
    double total = 0.0;
    for (std::size_t g = 0; g < coverable.size(); ++g) {
      if (coverable[g]) total += topic_weights_[g];
    }
    norm_ = total > 0.0 ? total : 1.0;
  }

  double value(const ElementSet& s, const Context&) const override {
    std::vector<char> covered(topic_weights_.size(), 0);
    double v = 0.0;
    for (int a : s) {
      if (a >= static_cast<int>(element_topics_.size())) {
        throw std::domain_error("coverage: element id out of range");
      }
      for (int g : element_topics_[a]) {
        if (!covered[g]) {
          covered[g] = 1;
          v += topic_weights_[g];
        }
      }
    }
    return v / norm_;
  }

  double normalization_constant() const override { return norm_; }

 private:
  std::vector<double> topic_weights_;
  std::vector<std::vector<int>> element_topics_;
  double norm_;
};

// Concave transform of a nonnegative modular function: phi(sum of weights),
// normalized by phi(total weight).  phi is sqrt or min(x, cap); both are
// nondecreasing concave with phi(0) = 0, so the composition is nonnegative
// monotone submodular.
class ConcaveModularFunction : public SetFunction {
 public:
  enum class Phi { kSqrt, kCapped };

  ConcaveModularFunction(std::vector<double> weights, Phi phi, double cap = 1.0)
      : weights_(std::move(weights)), phi_(phi), cap_(cap) {
    double total = 0.0;
    for (double w : weights_) {
      if (w < 0.0) throw std::domain_error("modular weights must be >= 0");
      total += w;
    }
    if (phi_ == Phi::kCapped && cap_ <= 0.0) {
      throw std::domain_error("cap must be > 0");
    }
    norm_ = apply(total);
    if (norm_ <= 0.0) norm_ = 1.0;
  }

  double value(const ElementSet& s, const Context&) const override {
    double total = 0.0;
    for (int a : s) {
      if (a >= static_cast<int>(weights_.size())) {
        throw std::domain_error("concave modular: element id out of range");
      }
      total += weights_[a];
    }
    return apply(total) / norm_;
  }

  double normalization_constant() const override { return norm_; }

 private:
  double apply(double x) const {
    return phi_ == Phi::kSqrt ? std::sqrt(x) : std::min(x, cap_);
  }
  std::vector<double> weights_;
  Phi phi_;
  double cap_;
  double norm_;
};

// Monte Carlo Gaussian width of a set of element vectors, with an optional
// scaling matrix applied to the noise and a fixed shared noise panel (common
// random numbers across all set arguments, so comparisons between sets see
// the same draws).  Each draw takes max(0, max_{s in S} <s, Sigma eta>); the
// zero candidate is the empty-set baseline, which keeps every realization of
// the estimate nonnegative, monotone, and submodular on the full lattice
// (it is exactly the width of S augmented with the zero vector).
class WidthFunction : public SetFunction {
 public:
  WidthFunction(std::vector<std::vector<double>> vectors, int num_draws,
                std::uint64_t noise_seed,
                std::vector<std::vector<double>> sigma = {})
      : num_elements_(static_cast<int>(vectors.size())), num_draws_(num_draws) {
    if (vectors.empty()) throw std::domain_error("width: need >= 1 vector");
    if (num_draws_ < 1) throw std::domain_error("width: need >= 1 noise draw");
    const std::size_t dim = vectors[0].size();
    for (const auto& v : vectors) {
      if (v.size() != dim) throw std::domain_error("width: ragged vectors");
    }
    if (!sigma.empty() && (sigma.size() != dim || sigma[0].size() != dim)) {
      throw std::domain_error("width: scaling matrix must be dim x dim");
    }
    // Fixed noise panel; precompute <s_a, Sigma eta_j> for every element.
    Rng rng(noise_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    dots_.assign(static_cast<std::size_t>(num_draws_) * num_elements_, 0.0);
    std::vector<double> eta(dim), z(dim);
    for (int j = 0; j < num_draws_; ++j) {
      for (auto& e : eta) e = gauss(rng);
      if (sigma.empty()) {
        z = eta;
      } else {
        z = matvec(sigma, eta);
      }
      for (int a = 0; a < num_elements_; ++a) {
        dots_[static_cast<std::size_t>(j) * num_elements_ + a] =
            dot(vectors[a], z);
      }
    }
    // Normalize by the raw width of the full ground set (the maximum by
    // monotonicity).
    double full = 0.0;
    for (int j = 0; j < num_draws_; ++j) {
      const double* row = &dots_[static_cast<std::size_t>(j) * num_elements_];
      double m = 0.0;
      for (int a = 0; a < num_elements_; ++a) m = std::max(m, row[a]);
      full += m;
    }
    norm_ = full / num_draws_;
    if (norm_ <= 0.0) norm_ = 1.0;
  }

  // Unnormalized Monte Carlo width estimate.
  double raw_value(const ElementSet& s) const {
    if (s.empty()) return 0.0;
    if (s.elements().back() >= num_elements_) {
      throw std::domain_error("width: element id out of range");
    }
    double acc = 0.0;
    for (int j = 0; j < num_draws_; ++j) {
      const double* row = &dots_[static_cast<std::size_t>(j) * num_elements_];
      double m = 0.0;  // empty-set baseline
      for (int a : s) m = std::max(m, row[a]);
      acc += m;
    }
    return acc / num_draws_;
  }

  double value(const ElementSet& s, const Context&) const override {
    return clamp01(raw_value(s) / norm_);
  }

  double normalization_constant() const override { return norm_; }
  bool is_estimated() const override { return true; }
  int num_draws() const { return num_draws_; }

 private:
  int num_elements_;
  int num_draws_;
  std::vector<double> dots_;  // [draw * num_elements + element]
  double norm_;
};

// Ranked-list utility over (position, item) placements.  Ground elements are
// pairs flattened row-major: element = position * items + item.  The utility
// sums position-discounted coverage of the items placed in each prefix:
//   u(S, x) = sum_i lambda_i(x) * f_i(T_i),  T_i = items placed at positions
//   <= i, lambda_i(x) = c_i * logistic(<w, x>) with c nonincreasing >= 0, and
//   f_i(T) = min(1, sum_{j in T} q[i][j]) with q >= 0.
// Normalization is sum_i c_i (the largest attainable value).
class RankingFunction : public SetFunction {
 public:
  RankingFunction(int positions, std::vector<double> position_weights,
                  std::vector<double> context_weights,
                  std::vector<std::vector<double>> item_scores)
      : positions_(positions),
        c_(std::move(position_weights)),
        w_(std::move(context_weights)),
        q_(std::move(item_scores)) {
    if (positions_ < 1) throw std::domain_error("ranking: positions must be >= 1");
    if (static_cast<int>(c_.size()) != positions_ ||
        static_cast<int>(q_.size()) != positions_) {
      throw std::domain_error("ranking: need one weight row per position");
    }
    double total = 0.0;
    for (int i = 0; i < positions_; ++i) {
      if (c_[i] < 0.0) throw std::domain_error("ranking: weights must be >= 0");
      if (i > 0 && c_[i] > c_[i - 1] + 1e-12) {
        throw std::domain_error("ranking: position weights must be nonincreasing");
      }
      if (static_cast<int>(q_[i].size()) != positions_) {
        throw std::domain_error("ranking: item score rows must have one entry per item");
      }
      for (double v : q_[i]) {
        if (v < 0.0) throw std::domain_error("ranking: item scores must be >= 0");
      }
      total += c_[i];
    }
    norm_ = total > 0.0 ? total : 1.0;
  }

  double value(const ElementSet& s, const Context& ctx) const override {
    if (!s.empty() && s.elements().back() >= positions_ * positions_) {
      throw std::domain_error("ranking: element id out of range");
    }
    const double g = apply_link(LinkKind::kLogistic, dot(w_, ctx.x));
    std::vector<char> covered(positions_, 0);
    double v = 0.0;
    for (int i = 0; i < positions_; ++i) {
      for (int a : s) {
        if (a / positions_ == i) covered[a % positions_] = 1;
      }
      double fi = 0.0;
      for (int j = 0; j < positions_; ++j) {
        if (covered[j]) fi += q_[i][j];
      }
      v += c_[i] * std::min(1.0, fi);
    }
    return g * v / norm_;
  }

  double normalization_constant() const override { return norm_; }

 private:
  int positions_;
  std::vector<double> c_;
  std::vector<double> w_;
  std::vector<std::vector<double>> q_;
  double norm_;
};

// Single-index model: u(S, x) = v(S, x) * link(<theta, x>) with ||theta|| <= 1
// and v a normalized set utility.
class GlmFunction : public SetFunction {
 public:
  GlmFunction(SetFunctionPtr base, std::vector<double> theta, LinkKind link)
      : base_(std::move(base)), theta_(std::move(theta)), link_(link) {
    if (!base_) throw std::domain_error("glm: base utility required");
    if (norm2(theta_) > 1.0 + 1e-12) {
      throw std::domain_error("glm: ||theta|| must be <= 1");
    }
  }

  double value(const ElementSet& s, const Context& ctx) const override {
    return clamp01(base_->value(s, ctx) * apply_link(link_, dot(theta_, ctx.x)));
  }

  bool is_estimated() const override { return base_->is_estimated(); }

 private:
  SetFunctionPtr base_;
  std::vector<double> theta_;
  LinkKind link_;
};

// Sum of generalized linear terms sharing one parameter vector:
//   u(S, x) = sum_i v_i(S, x) * link(theta' P_i x).
struct MultiGlmTerm {
  SetFunctionPtr base;
  std::vector<std::vector<double>> projection;  // P_i
};

class MultiGlmFunction : public SetFunction {
 public:
  MultiGlmFunction(std::vector<MultiGlmTerm> terms, std::vector<double> theta,
                   LinkKind link = LinkKind::kRelu)
      : terms_(std::move(terms)), theta_(std::move(theta)), link_(link) {
    if (terms_.empty()) throw std::domain_error("multiglm: need >= 1 term");
    for (const auto& t : terms_) {
      if (!t.base) throw std::domain_error("multiglm: base utility required");
    }
    if (norm2(theta_) > 1.0 + 1e-12) {
      throw std::domain_error("multiglm: ||theta|| must be <= 1");
    }
  }

  double value(const ElementSet& s, const Context& ctx) const override {
    double v = 0.0;
    for (const auto& t : terms_) {
      v += t.base->value(s, ctx) *
           apply_link(link_, dot(theta_, matvec(t.projection, ctx.x)));
    }
    return clamp01(v);
  }

  bool is_estimated() const override {
    for (const auto& t : terms_) {
      if (t.base->is_estimated()) return true;
    }
    return false;
  }

 private:
  std::vector<MultiGlmTerm> terms_;
  std::vector<double> theta_;
  LinkKind link_;
};

}  // namespace subcb
