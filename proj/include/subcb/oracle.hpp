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

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subcb/element_set.hpp"
#include "subcb/set_function.hpp"

namespace subcb {

// Online square-loss regression over (set, context) pairs.  predict() returns
// a value clamped to [0, 1] and never mutates state; update() consumes one
// observed reward.  Instances are single-writer: one algorithm owns the
// update stream.  All bundled oracles accept any set size up to the rank, so
// subsampled exploration sets can be scored and trained on.
class RegressionOracle {
 public:
  virtual ~RegressionOracle() = default;
  virtual double predict(const ElementSet& s, const Context& ctx) const = 0;
  virtual void update(const ElementSet& s, const Context& ctx, double reward) = 0;
};

// Exponentially weighted aggregation over a finite model class.  Weights live
// in log space; each update adds -eta * (prediction_i - reward)^2 to expert
// i's log-weight.  With eta = 1/2 (square loss on [0,1] is 1/2-exp-concave)
// the aggregated square-loss regret against the best expert is at most
// 2 * ln(number of experts).
class FiniteClassOracle : public RegressionOracle {
 public:
  explicit FiniteClassOracle(std::vector<SetFunctionPtr> experts,
                             double eta = 0.5)
      : experts_(std::move(experts)), eta_(eta) {
    if (experts_.empty()) {
      throw std::invalid_argument("finite-class oracle needs >= 1 expert");
    }
    for (const auto& e : experts_) {
      if (!e) throw std::invalid_argument("finite-class oracle: null expert");
    }
    if (!(eta_ > 0.0)) throw std::domain_error("eta must be > 0");
    log_weights_.assign(experts_.size(), 0.0);
  }

  double predict(const ElementSet& s, const Context& ctx) const override {
    const std::vector<double> w = weights();
    double pred = 0.0;
    for (std::size_t i = 0; i < experts_.size(); ++i) {
      pred += w[i] * clamp01(experts_[i]->value(s, ctx));
    }
    return clamp01(pred);
  }

  void update(const ElementSet& s, const Context& ctx, double reward) override {
    double max_lw = -1e300;
    for (std::size_t i = 0; i < experts_.size(); ++i) {
      const double diff = clamp01(experts_[i]->value(s, ctx)) - reward;
      log_weights_[i] -= eta_ * diff * diff;
      max_lw = std::max(max_lw, log_weights_[i]);
    }
    // Renormalize in log space to keep magnitudes bounded.
    for (double& lw : log_weights_) lw -= max_lw;
  }

  // Normalized posterior weights.
  std::vector<double> weights() const {
    double max_lw = -1e300;
    for (double lw : log_weights_) max_lw = std::max(max_lw, lw);
    std::vector<double> w(log_weights_.size());
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = std::exp(log_weights_[i] - max_lw);
      total += w[i];
    }
    for (double& v : w) v /= total;
    return w;
  }

  std::size_t num_experts() const { return experts_.size(); }

 private:
  std::vector<SetFunctionPtr> experts_;
  double eta_;
  std::vector<double> log_weights_;
};

inline void project_unit_ball(std::vector<double>& v) {
  const double n = norm2(v);
  if (n > 1.0) {
    for (double& x : v) x /= n;
  }
}

// Projected-gradient single-index regression: predictions are
// v(S, x) * link(<theta, x>), and each update takes one square-loss gradient
// step
//   g = v(S,x) * (v(S,x) * link(<theta,x>) - reward) * x,
//   theta <- Proj_{||.||<=1}(theta - eta * g).
class GlmOracle : public RegressionOracle {
 public:
  GlmOracle(SetFunctionPtr base, LinkKind link, int dim, double eta)
      : base_(std::move(base)), link_(link), eta_(eta), theta_(dim, 0.0) {
    if (!base_) throw std::invalid_argument("glm oracle: base utility required");
    if (dim < 1) throw std::domain_error("glm oracle: dim must be >= 1");
    if (!(eta_ > 0.0)) throw std::domain_error("glm oracle: eta must be > 0");
  }

  double predict(const ElementSet& s, const Context& ctx) const override {
    return clamp01(raw_prediction(s, ctx));
  }

  void update(const ElementSet& s, const Context& ctx, double reward) override {
    const double v = clamp01(base_->value(s, ctx));
    const double err = v * apply_link(link_, dot(theta_, ctx.x)) - reward;
    for (std::size_t i = 0; i < theta_.size(); ++i) {
      theta_[i] -= eta_ * v * err * ctx.x[i];
    }
    project_unit_ball(theta_);
  }

  const std::vector<double>& theta() const { return theta_; }

 private:
  double raw_prediction(const ElementSet& s, const Context& ctx) const {
    return clamp01(base_->value(s, ctx)) * apply_link(link_, dot(theta_, ctx.x));
  }

  SetFunctionPtr base_;
  LinkKind link_;
  double eta_;
  std::vector<double> theta_;
};

// Sum-of-GLMs regression sharing one parameter vector:
//   prediction = sum_i v_i(S,x) * relu(theta' P_i x),
//   g = (prediction - reward) * (sum_i v_i(S,x) P_i) x,
//   theta <- Proj_{||.||<=1}(theta - eta * g).
// The oracle accumulates the empirical signal matrix
//   (1/n) sum_rounds (sum_i v_i P_i x)(sum_i v_i P_i x)'
// whose minimum eigenvalue estimates the identifiability of theta; runs where
// it drops below `threshold` should be flagged by callers.
class MultiGlmOracle : public RegressionOracle {
 public:
  MultiGlmOracle(std::vector<MultiGlmTerm> terms, int dim, double eta)
      : terms_(std::move(terms)), eta_(eta), theta_(dim, 0.0),
        signal_(Eigen::MatrixXd::Zero(dim, dim)) {
    if (terms_.empty()) {
      throw std::invalid_argument("multiglm oracle: need >= 1 term");
    }
    for (const auto& t : terms_) {
      if (!t.base) throw std::invalid_argument("multiglm oracle: null base");
    }
    if (dim < 1) throw std::domain_error("multiglm oracle: dim must be >= 1");
    if (!(eta_ > 0.0)) throw std::domain_error("multiglm oracle: eta must be > 0");
  }

  double predict(const ElementSet& s, const Context& ctx) const override {
    double pred = 0.0;
    for (const auto& t : terms_) {
      pred += clamp01(t.base->value(s, ctx)) *
              apply_link(LinkKind::kRelu, dot(theta_, matvec(t.projection, ctx.x)));
    }
    return clamp01(pred);
  }

  void update(const ElementSet& s, const Context& ctx, double reward) override {
    std::vector<double> combined(theta_.size(), 0.0);  // (sum_i v_i P_i) x
    double pred = 0.0;
    for (const auto& t : terms_) {
      const double v = clamp01(t.base->value(s, ctx));
      const std::vector<double> u = matvec(t.projection, ctx.x);
      pred += v * apply_link(LinkKind::kRelu, dot(theta_, u));
      for (std::size_t i = 0; i < combined.size(); ++i) combined[i] += v * u[i];
    }
    const double err = pred - reward;
    for (std::size_t i = 0; i < theta_.size(); ++i) {
      theta_[i] -= eta_ * err * combined[i];
    }
    project_unit_ball(theta_);
    Eigen::Map<const Eigen::VectorXd> w(combined.data(),
                                        static_cast<Eigen::Index>(combined.size()));
    signal_ += w * w.transpose();
    ++updates_;
  }

  const std::vector<double>& theta() const { return theta_; }

  double min_signal_eigenvalue() const {
    if (updates_ == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(signal_ / updates_);
    return solver.eigenvalues().minCoeff();
  }

  bool signal_flagged(double threshold = 1e-3) const {
    return min_signal_eigenvalue() < threshold;
  }

 private:
  std::vector<MultiGlmTerm> terms_;
  double eta_;
  std::vector<double> theta_;
  Eigen::MatrixXd signal_;
  std::int64_t updates_ = 0;
};

// The true utility exposed as an oracle (zero-regret reference).
class TruthOracle : public RegressionOracle {
 public:
  explicit TruthOracle(SetFunctionPtr truth) : truth_(std::move(truth)) {
    if (!truth_) throw std::invalid_argument("truth oracle: model required");
  }
  double predict(const ElementSet& s, const Context& ctx) const override {
    return clamp01(truth_->value(s, ctx));
  }
  void update(const ElementSet&, const Context&, double) override {}

 private:
  SetFunctionPtr truth_;
};

// Horizon-doubling wrapper for step-size rules of the form eta = n^(-1/2)
// when the horizon is unknown: the learner restarts whenever the total update
// count reaches 1, 2, 4, 8, ..., re-tuned with eta = 1/sqrt(next boundary),
// i.e. the step size a known-horizon learner would use for the doubled guess.
class DoublingOracle : public RegressionOracle {
 public:
  using Factory = std::function<std::unique_ptr<RegressionOracle>(double eta)>;

  explicit DoublingOracle(Factory factory)
      : factory_(std::move(factory)), boundary_(1) {
    inner_ = factory_(1.0);
    if (!inner_) throw std::invalid_argument("doubling oracle: factory returned null");
  }

  double predict(const ElementSet& s, const Context& ctx) const override {
    return inner_->predict(s, ctx);
  }

  void update(const ElementSet& s, const Context& ctx, double reward) override {
    inner_->update(s, ctx, reward);
    if (++total_ == boundary_) {
      boundary_ *= 2;
      inner_ = factory_(1.0 / std::sqrt(static_cast<double>(boundary_)));
    }
  }

  // The current horizon guess: the total update count at which the next
  // restart will occur.
  std::int64_t epoch_length() const { return boundary_; }

 private:
  Factory factory_;
  std::unique_ptr<RegressionOracle> inner_;
  std::int64_t boundary_;
  std::int64_t total_ = 0;
};

}  // namespace subcb
