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
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "subcb/element_set.hpp"
#include "subcb/errors.hpp"
#include "subcb/igw.hpp"
#include "subcb/local_search.hpp"
#include "subcb/matroid.hpp"
#include "subcb/oracle.hpp"
#include "subcb/rng.hpp"
#include "subcb/set_function.hpp"
#include "subcb/t_operator.hpp"

namespace subcb {

enum class RewardLaw { kBernoulli, kClippedGaussian };

struct RoundRecord {
  int t = 0;  // 1-based round index
  int context_id = 0;
  int matroid_id = 0;
  double benchmark = 0.0;
  std::string benchmark_method;
  ElementSet local_opt;
  ElementSet chosen;
  double reward = 0.0;
  double mean_reward = 0.0;  // true conditional mean of the chosen set
  double pred = 0.0;         // oracle prediction for the chosen set (pre-update)
  double inst_regret_half = 0.0;
  double inst_regret_1me = 0.0;
  double cum_regret_half = 0.0;
  double cum_regret_1me = 0.0;
  bool converged = true;  // local search convergence flag (not in the CSV)
};

// Produces the context for each round: a fixed list cycled by round index, an
// i.i.d. sampler (sphere / ball / norm-capped Gaussian -- all symmetric laws),
// or a script callback that may inspect the history of past plays but not the
// current round's randomness.
class ContextGenerator {
 public:
  using ScriptFn =
      std::function<std::vector<double>(int t, const std::vector<RoundRecord>&)>;
  enum class Kind { kFixedList, kSphere, kBall, kGaussian, kScript };

  static ContextGenerator fixed_list(std::vector<std::vector<double>> list) {
    if (list.empty()) {
      throw std::domain_error("context generator: fixed list must be nonempty");
    }
    ContextGenerator g;
    g.kind_ = Kind::kFixedList;
    g.list_ = std::move(list);
    g.dim_ = static_cast<int>(g.list_[0].size());
    for (const auto& x : g.list_) {
      if (static_cast<int>(x.size()) != g.dim_) {
        throw std::domain_error("context generator: ragged fixed list");
      }
    }
    return g;
  }

  static ContextGenerator iid(Kind kind, int dim) {
    if (kind == Kind::kFixedList || kind == Kind::kScript) {
      throw std::domain_error("context generator: iid kind required");
    }
    if (dim < 1) throw std::domain_error("context generator: dim must be >= 1");
    ContextGenerator g;
    g.kind_ = kind;
    g.dim_ = dim;
    return g;
  }

  static ContextGenerator script(ScriptFn fn, int dim) {
    if (!fn) throw std::domain_error("context generator: script required");
    ContextGenerator g;
    g.kind_ = Kind::kScript;
    g.script_ = std::move(fn);
    g.dim_ = dim;
    return g;
  }

  // Returns the context and its id: the list index for fixed lists, otherwise
  // the round index.  t is 1-based.
  std::pair<Context, int> generate(int t, const std::vector<RoundRecord>& history,
                                   Rng& rng) const {
    switch (kind_) {
      case Kind::kFixedList: {
        const int id = (t - 1) % static_cast<int>(list_.size());
        return {Context{list_[id]}, id};
      }
      case Kind::kScript:
        return {Context{script_(t, history)}, t};
      case Kind::kSphere:
      case Kind::kBall:
      case Kind::kGaussian: {
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> x(dim_);
        double n = 0.0;
        do {
          for (auto& v : x) v = gauss(rng);
          n = norm2(x);
        } while (n == 0.0);
        if (kind_ == Kind::kSphere) {
          for (auto& v : x) v /= n;
        } else if (kind_ == Kind::kBall) {
          const double r = std::pow(uniform_real(rng), 1.0 / dim_) / n;
          for (auto& v : x) v *= r;
        } else {  // Gaussian with variance 1/dim, projected into the unit ball
          const double scale =
              std::min(1.0 / n, 1.0 / std::sqrt(static_cast<double>(dim_)));
          for (auto& v : x) v *= scale;
        }
        return {Context{std::move(x)}, t};
      }
    }
    throw std::logic_error("unreachable");
  }

  // True when draws are i.i.d. from a sign-symmetric law (x and -x equally
  // likely), which the sum-of-GLMs analysis requires.
  bool symmetric_iid() const {
    return kind_ == Kind::kSphere || kind_ == Kind::kBall ||
           kind_ == Kind::kGaussian;
  }

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }

 private:
  Kind kind_ = Kind::kSphere;
  std::vector<std::vector<double>> list_;
  ScriptFn script_;
  int dim_ = 1;
};

// Per-round feasibility systems: one fixed matroid, a scripted list cycled by
// round, or a uniform draw from a pool each round.  All pool members must
// share one ground size and one rank (the engine requires rank == k).
class MatroidSchedule {
 public:
  enum class Mode { kCycle, kSampled };

  static MatroidSchedule fixed(Matroid m) {
    return MatroidSchedule({std::move(m)}, Mode::kCycle);
  }
  static MatroidSchedule cycle(std::vector<Matroid> pool) {
    return MatroidSchedule(std::move(pool), Mode::kCycle);
  }
  static MatroidSchedule sampled(std::vector<Matroid> pool) {
    return MatroidSchedule(std::move(pool), Mode::kSampled);
  }

  // Returns the matroid for round t (1-based) and its pool index.
  std::pair<const Matroid*, int> select(int t, Rng& rng) const {
    int id = 0;
    if (mode_ == Mode::kCycle) {
      id = (t - 1) % static_cast<int>(pool_.size());
    } else {
      id = uniform_int(rng, 0, static_cast<int>(pool_.size()) - 1);
    }
    return {&pool_[id], id};
  }

  int common_rank() const { return pool_[0].rank(); }
  int ground_size() const { return pool_[0].ground_size(); }
  const std::vector<Matroid>& pool() const { return pool_; }
  Mode mode() const { return mode_; }

 private:
  MatroidSchedule(std::vector<Matroid> pool, Mode mode)
      : pool_(std::move(pool)), mode_(mode) {
    if (pool_.empty()) {
      throw ConfigError("matroid schedule: pool must be nonempty");
    }
    for (const auto& m : pool_) {
      if (m.rank() != pool_[0].rank()) {
        throw ConfigError("matroid schedule: all matroids must share one rank");
      }
      if (m.ground_size() != pool_[0].ground_size()) {
        throw ConfigError("matroid schedule: all matroids must share one ground");
      }
    }
  }

  std::vector<Matroid> pool_;
  Mode mode_;
};

// The simulated bandit: a true utility, context and matroid streams, and a
// reward law with conditional mean u*(S, x).  Bernoulli rewards match the
// mean exactly; clipped-Gaussian rewards are mean + sigma * Z clamped to
// [0, 1].  Contexts and matroids for a round are generated before any
// decision is made, from the environment's own random stream.
class Environment {
 public:
  struct Round {
    Context ctx;
    int context_id = 0;
    const Matroid* matroid = nullptr;
    int matroid_id = 0;
  };

  Environment(SetFunctionPtr truth, ContextGenerator contexts,
              MatroidSchedule matroids, RewardLaw law, double reward_sigma,
              std::uint64_t seed)
      : truth_(std::move(truth)), contexts_(std::move(contexts)),
        matroids_(std::move(matroids)), law_(law), reward_sigma_(reward_sigma),
        rng_(make_stream(seed, StreamRole::kEnvironment)) {
    if (!truth_) throw std::invalid_argument("environment: truth model required");
    if (law_ == RewardLaw::kClippedGaussian && !(reward_sigma_ >= 0.0)) {
      throw std::domain_error("environment: reward sigma must be >= 0");
    }
  }

  Round next_round(int t, const std::vector<RoundRecord>& history) {
    Round r;
    auto [ctx, cid] = contexts_.generate(t, history, rng_);
    r.ctx = std::move(ctx);
    r.context_id = cid;
    auto [m, mid] = matroids_.select(t, rng_);
    r.matroid = m;
    r.matroid_id = mid;
    return r;
  }

  double true_mean(const ElementSet& s, const Context& ctx) const {
    return clamp01(truth_->value(s, ctx));
  }

  double draw_reward(double mean) {
    if (law_ == RewardLaw::kBernoulli) {
      std::bernoulli_distribution d(clamp01(mean));
      return d(rng_) ? 1.0 : 0.0;
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    return clamp01(mean + reward_sigma_ * gauss(rng_));
  }

  const SetFunction& truth() const { return *truth_; }
  SetFunctionPtr truth_ptr() const { return truth_; }
  const MatroidSchedule& schedule() const { return matroids_; }
  const ContextGenerator& contexts() const { return contexts_; }

 private:
  SetFunctionPtr truth_;
  ContextGenerator contexts_;
  MatroidSchedule matroids_;
  RewardLaw law_;
  double reward_sigma_;
  Rng rng_;
};

// Tuning constants shared by the algorithms.  reg_sq is the oracle's
// square-loss regret budget R-hat entering both schedules.
struct ScheduleParams {
  double c_gamma = 1.0;
  double c_rho = 1.0;
  double mu = 1.0;     // IGW 2K stiffening multiplier
  double delta = 0.05;
  double reg_sq = 1.0;
  double rho_min = 0.01;
  double ls_tol = 1e-9;
  int ls_max_iters = 10000;
  std::uint64_t benchmark_budget = Matroid::kDefaultEnumerationBudget;
};

// gamma = c_gamma * sqrt(n * k * (A - k) / reg_sq); the k(A-k) factor is the
// swap-slate size scale.  Guarded below by 1 so rank == ground degenerate
// cases keep gamma positive.
inline double squarecb_gamma(const ScheduleParams& sp, int n, int k, int ground) {
  if (!(sp.reg_sq > 0.0)) throw std::domain_error("reg_sq must be > 0");
  const double slate = std::max(1.0, static_cast<double>(k) * (ground - k));
  return sp.c_gamma * std::sqrt(static_cast<double>(n) * slate / sp.reg_sq);
}

// rho = c_rho * n^(-1/3) * (2 (1-1/e) k B tau_k)^(2/3) * (4 reg_sq +
// 32 ln(2/delta))^(1/3) with B = k(A-k)+1, clipped to [rho_min, 1/2 - 1e-6].
inline double epsgreedy_rho(const ScheduleParams& sp, int n, int k, int ground,
                            double tau_k) {
  if (!(sp.reg_sq > 0.0)) throw std::domain_error("reg_sq must be > 0");
  if (!(sp.delta > 0.0 && sp.delta < 1.0)) {
    throw std::domain_error("delta must be in (0, 1)");
  }
  const double b = static_cast<double>(k) * (ground - k) + 1.0;
  const double phi = 2.0 * kOneMinusInvE * k * b * tau_k;
  const double raw = sp.c_rho * std::pow(static_cast<double>(n), -1.0 / 3.0) *
                     std::pow(phi, 2.0 / 3.0) *
                     std::cbrt(4.0 * sp.reg_sq + 32.0 * std::log(2.0 / sp.delta));
  return std::clamp(raw, sp.rho_min, 0.5 - 1e-6);
}

struct BenchmarkResult {
  double value = 0.0;
  std::string method;  // "exact" or "greedy-(1-1/e)"
};

// Best base value of u(., ctx): exact enumeration when C(A, rank) fits the
// budget (monotone u attains its constrained maximum at a base), otherwise
// lazy greedy, tagged with its (1-1/e) guarantee.  Stale-gain entries are
// re-evaluated before acceptance; elements whose addition became infeasible
// are discarded for good (independence is downward closed).
inline BenchmarkResult benchmark_value(
    const SetFunction& u, const Matroid& m, const Context& ctx,
    std::uint64_t budget = Matroid::kDefaultEnumerationBudget) {
  try {
    double best = 0.0;
    bool first = true;
    for (const ElementSet& b : m.enumerate_bases(budget)) {
      const double v = u.value(b, ctx);
      if (first || v > best) {
        best = v;
        first = false;
      }
    }
    return {best, "exact"};
  } catch (const CapacityError&) {
    // (gain, -element, size of S when the gain was computed); ordering by
    // negated element id keeps ties deterministic.
    std::priority_queue<std::tuple<double, int, int>> queue;
    ElementSet s;
    double current = u.value(s, ctx);
    for (int a = 0; a < m.ground_size(); ++a) {
      if (m.is_independent(s.with(a))) {
        queue.emplace(u.value(s.with(a), ctx) - current, -a, 0);
      }
    }
    while (s.size() < m.rank() && !queue.empty()) {
      auto [gain, neg_a, at_size] = queue.top();
      queue.pop();
      const int a = -neg_a;
      if (!m.is_independent(s.with(a))) continue;
      if (at_size == s.size()) {
        s = s.with(a);
        current += gain;
      } else {
        queue.emplace(u.value(s.with(a), ctx) - current, neg_a, s.size());
      }
    }
    return {u.value(s, ctx), "greedy-(1-1/e)"};
  }
}

namespace detail {

inline void finalize_record(RoundRecord& rec, double bench, double* cum_half,
                            double* cum_1me) {
  rec.benchmark = bench;
  rec.inst_regret_half = 0.5 * bench - rec.mean_reward;
  rec.inst_regret_1me = kOneMinusInvE * bench - rec.mean_reward;
  *cum_half += rec.inst_regret_half;
  *cum_1me += rec.inst_regret_1me;
  rec.cum_regret_half = *cum_half;
  rec.cum_regret_1me = *cum_1me;
}

inline void assert_playable(const Matroid& m, const ElementSet& s) {
  if (!m.is_independent(s)) {
    throw std::logic_error("engine invariant violated: played set " +
                           s.to_string() + " is not independent");
  }
}

}  // namespace detail

// One round of the greedy-slate exploration algorithm: localize a swap-local
// optimum of the oracle's predictions, score its swap slate, and sample from
// the inverse-gap-weighted distribution over the slate.
inline std::vector<RoundRecord> run_squarecb(Environment& env,
                                             RegressionOracle& oracle,
                                             const ScheduleParams& sp, int n,
                                             Rng& alg_rng) {
  const int k = env.schedule().common_rank();
  const int ground = env.schedule().ground_size();
  const double gamma = squarecb_gamma(sp, n, k, ground);
  std::vector<RoundRecord> records;
  records.reserve(n);
  double cum_half = 0.0, cum_1me = 0.0;
  for (int t = 1; t <= n; ++t) {
    Environment::Round round = env.next_round(t, records);
    const Matroid& m = *round.matroid;
    const ScoreFn pred = [&](const ElementSet& s) {
      return clamp01(oracle.predict(s, round.ctx));
    };
    const LocalSearchResult ls =
        local_optimum(pred, m, NeighborhoodMode::kSwap, sp.ls_tol, sp.ls_max_iters);
    const SwapNeighborhood nb = m.swap_neighborhood(ls.set);
    const ScoredActions sa = neighborhood_scores(pred, nb, gamma);
    const int idx = igw_sample(sa, alg_rng, sp.mu);
    const ElementSet& chosen = sa.actions[idx];
    detail::assert_playable(m, chosen);

    RoundRecord rec;
    rec.t = t;
    rec.context_id = round.context_id;
    rec.matroid_id = round.matroid_id;
    rec.local_opt = ls.set;
    rec.chosen = chosen;
    rec.converged = ls.converged;
    rec.pred = sa.scores[idx];
    rec.mean_reward = env.true_mean(chosen, round.ctx);
    rec.reward = env.draw_reward(rec.mean_reward);
    oracle.update(chosen, round.ctx, rec.reward);
    const BenchmarkResult bench =
        benchmark_value(env.truth(), m, round.ctx, sp.benchmark_budget);
    rec.benchmark_method = bench.method;
    detail::finalize_record(rec, bench.value, &cum_half, &cum_1me);
    records.push_back(std::move(rec));
  }
  return records;
}

// One round of the reweighted-exploration algorithm: localize a base-local
// optimum of the subset-reweighted predictions T u-hat, then play it with
// probability 1 - rho, or jump to a uniform neighboring base and play a
// random nonempty subset of it drawn from the reweighting distribution.
inline std::vector<RoundRecord> run_epsgreedy(Environment& env,
                                              RegressionOracle& oracle,
                                              const ScheduleParams& sp, int n,
                                              const WeightTable& table,
                                              Rng& alg_rng) {
  const int k = env.schedule().common_rank();
  const int ground = env.schedule().ground_size();
  if (k > table.k_max()) {
    throw std::domain_error("weight table too small for rank " + std::to_string(k));
  }
  const double rho = k == 0 ? 0.0 : epsgreedy_rho(sp, n, k, ground, table.tau(k));
  std::vector<RoundRecord> records;
  records.reserve(n);
  double cum_half = 0.0, cum_1me = 0.0;
  for (int t = 1; t <= n; ++t) {
    Environment::Round round = env.next_round(t, records);
    const Matroid& m = *round.matroid;
    const ScoreFn pred = [&](const ElementSet& s) {
      return clamp01(oracle.predict(s, round.ctx));
    };
    const ScoreFn t_pred = [&](const ElementSet& s) {
      return t_value(pred, s, table);
    };
    const LocalSearchResult ls = local_optimum(t_pred, m, NeighborhoodMode::kBase,
                                               sp.ls_tol, sp.ls_max_iters);
    const SwapNeighborhood nb = m.base_neighborhood(ls.set);
    const int nbr =
        uniform_int(alg_rng, 0, static_cast<int>(nb.members.size()) - 1);
    ElementSet chosen = ls.set;
    if (!ls.set.empty() && uniform_real(alg_rng) < rho) {
      chosen = sample_subset(subset_distribution(nb.members[nbr], table), alg_rng);
    }
    detail::assert_playable(m, chosen);

    RoundRecord rec;
    rec.t = t;
    rec.context_id = round.context_id;
    rec.matroid_id = round.matroid_id;
    rec.local_opt = ls.set;
    rec.chosen = chosen;
    rec.converged = ls.converged;
    rec.pred = pred(chosen);
    rec.mean_reward = env.true_mean(chosen, round.ctx);
    rec.reward = env.draw_reward(rec.mean_reward);
    oracle.update(chosen, round.ctx, rec.reward);
    const BenchmarkResult bench =
        benchmark_value(env.truth(), m, round.ctx, sp.benchmark_budget);
    rec.benchmark_method = bench.method;
    detail::finalize_record(rec, bench.value, &cum_half, &cum_1me);
    records.push_back(std::move(rec));
  }
  return records;
}

// Plays a uniformly random base each round (enumerating bases within the
// budget; beyond it, a random-permutation greedy base).  No oracle runs, so
// the prediction column is NaN and the local-optimum column is empty.
inline std::vector<RoundRecord> run_uniform_baseline(Environment& env,
                                                     const ScheduleParams& sp,
                                                     int n, Rng& alg_rng) {
  std::vector<RoundRecord> records;
  records.reserve(n);
  double cum_half = 0.0, cum_1me = 0.0;
  std::map<const Matroid*, std::vector<ElementSet>> base_cache;
  for (int t = 1; t <= n; ++t) {
    Environment::Round round = env.next_round(t, records);
    const Matroid& m = *round.matroid;
    ElementSet chosen;
    auto it = base_cache.find(&m);
    if (it == base_cache.end()) {
      std::vector<ElementSet> bases;
      try {
        bases = m.enumerate_bases(sp.benchmark_budget);
      } catch (const CapacityError&) {
        // leave empty: fall through to permutation sampling below
      }
      it = base_cache.emplace(&m, std::move(bases)).first;
    }
    if (!it->second.empty()) {
      chosen = it->second[uniform_int(
          alg_rng, 0, static_cast<int>(it->second.size()) - 1)];
    } else {
      chosen = random_permutation_base(m, alg_rng);
    }
    detail::assert_playable(m, chosen);

    RoundRecord rec;
    rec.t = t;
    rec.context_id = round.context_id;
    rec.matroid_id = round.matroid_id;
    rec.chosen = chosen;
    rec.pred = std::nan("");
    rec.mean_reward = env.true_mean(chosen, round.ctx);
    rec.reward = env.draw_reward(rec.mean_reward);
    const BenchmarkResult bench =
        benchmark_value(env.truth(), m, round.ctx, sp.benchmark_budget);
    rec.benchmark_method = bench.method;
    detail::finalize_record(rec, bench.value, &cum_half, &cum_1me);
    records.push_back(std::move(rec));
  }
  return records;
}

// The greedy-slate algorithm with the true utility in place of a learned
// oracle (zero-regret reference run).
inline std::vector<RoundRecord> run_truth_baseline(Environment& env,
                                                   const ScheduleParams& sp,
                                                   int n, Rng& alg_rng) {
  TruthOracle oracle(env.truth_ptr());
  return run_squarecb(env, oracle, sp, n, alg_rng);
}

// Least-squares slope of ln(max(cum_t, floor)) against ln(t) over rounds
// t in [max(10, n/10), n]; 0 when fewer than two points fall in the window.
inline double fit_loglog_slope(const std::vector<double>& cum,
                               double floor = 1e-6) {
  const int n = static_cast<int>(cum.size());
  const int t0 = std::max(10, n / 10);
  if (n - t0 + 1 < 2) return 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int t = t0; t <= n; ++t) {
    const double x = std::log(static_cast<double>(t));
    const double y = std::log(std::max(cum[t - 1], floor));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double denom = count * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (count * sxy - sx * sy) / denom;
}

struct RegretReport {
  double benchmark_fraction = 0.5;  // the c in c * benchmark - value
  std::vector<double> cumulative;   // one entry per round
  double final_cum = 0.0;
  std::vector<std::pair<int, double>> checkpoints;  // at n/10, n/2, n
  double loglog_slope = 0.0;
};

// Cumulative regret against fraction c of the per-round benchmark, its
// checkpoint values, and the fitted log-log growth slope.
inline RegretReport regret_report(const std::vector<RoundRecord>& records,
                                  double c) {
  RegretReport r;
  r.benchmark_fraction = c;
  r.cumulative.reserve(records.size());
  double cum = 0.0;
  for (const auto& rec : records) {
    cum += c * rec.benchmark - rec.mean_reward;
    r.cumulative.push_back(cum);
  }
  r.final_cum = cum;
  const int n = static_cast<int>(records.size());
  for (int cp : {n / 10, n / 2, n}) {
    if (cp >= 1) r.checkpoints.emplace_back(cp, r.cumulative[cp - 1]);
  }
  r.loglog_slope = fit_loglog_slope(r.cumulative);
  return r;
}

// Oracle-only evaluation: feed uniformly random feasible sets (bases, or with
// probability 1/2 a uniform nonempty subset of the base when `subsets` is
// set), observe rewards, and accumulate the squared gap between the oracle's
// pre-update prediction and the true conditional mean.  Returns the
// cumulative squared estimation error at each requested checkpoint round
// (checkpoints must be positive and strictly increasing).
inline std::vector<double> run_oracle_regression(
    Environment& env, RegressionOracle& oracle,
    const std::vector<int>& checkpoints, bool subsets, Rng& alg_rng,
    std::uint64_t budget = Matroid::kDefaultEnumerationBudget) {
  if (checkpoints.empty()) {
    throw std::invalid_argument("oracle regression needs >= 1 checkpoint");
  }
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw std::invalid_argument(
          "oracle regression checkpoints must be positive and increasing");
    }
  }
  const int n = checkpoints.back();
  std::vector<double> out;
  double cum_sq = 0.0;
  std::size_t next_cp = 0;
  std::map<const Matroid*, std::vector<ElementSet>> base_cache;
  std::vector<RoundRecord> empty_history;
  for (int t = 1; t <= n; ++t) {
    Environment::Round round = env.next_round(t, empty_history);
    const Matroid& m = *round.matroid;
    auto it = base_cache.find(&m);
    if (it == base_cache.end()) {
      std::vector<ElementSet> bases;
      try {
        bases = m.enumerate_bases(budget);
      } catch (const CapacityError&) {
      }
      it = base_cache.emplace(&m, std::move(bases)).first;
    }
    ElementSet s =
        it->second.empty()
            ? random_permutation_base(m, alg_rng)
            : it->second[uniform_int(alg_rng, 0,
                                     static_cast<int>(it->second.size()) - 1)];
    if (subsets && !s.empty() && uniform_real(alg_rng) < 0.5) {
      const int size = uniform_int(alg_rng, 1, s.size());
      std::vector<int> pool = s.elements();
      for (int i = 0; i < size; ++i) {
        std::swap(pool[i], pool[uniform_int(alg_rng, i, s.size() - 1)]);
      }
      pool.resize(size);
      s = ElementSet(std::move(pool));
    }
    const double mean = env.true_mean(s, round.ctx);
    const double pred = oracle.predict(s, round.ctx);
    cum_sq += (pred - mean) * (pred - mean);
    oracle.update(s, round.ctx, env.draw_reward(mean));
    if (t == checkpoints[next_cp]) {
      out.push_back(cum_sq);
      ++next_cp;
    }
  }
  return out;
}

}  // namespace subcb
