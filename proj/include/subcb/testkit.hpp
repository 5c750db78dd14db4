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

// Brute-force verification kit.  Everything here trades efficiency for
// obviousness: exhaustive lattice sweeps, explicit enumeration of joint local
// optima, and small random instance generators whose outputs are certified
// submodular by construction.  Intended for desk-scale parameters (ground
// size <= ~10, rank <= 3); the guards throw rather than silently truncate.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subcb/element_set.hpp"
#include "subcb/errors.hpp"
#include "subcb/igw.hpp"
#include "subcb/local_search.hpp"
#include "subcb/matroid.hpp"
#include "subcb/rng.hpp"
#include "subcb/set_function.hpp"
#include "subcb/t_operator.hpp"

namespace subcb::testkit {

inline constexpr double kSlackTol = 1e-9;
inline constexpr int kMaxExhaustiveGround = 24;

// Evaluates u(., ctx) on every subset of {0, ..., ground-1}; entry [mask]
// holds the value of the set whose bits are mask.
inline std::vector<double> tabulate(const SetFunction& u, const Context& ctx,
                                    int ground) {
  if (ground < 0 || ground > kMaxExhaustiveGround) {
    throw std::domain_error("tabulate: ground size too large for exhaustion");
  }
  std::vector<double> vals(std::size_t{1} << ground);
  for (std::uint64_t mask = 0; mask < vals.size(); ++mask) {
    vals[mask] = u.value(ElementSet::from_mask(mask), ctx);
  }
  return vals;
}

// Outcome of an exhaustive inequality sweep.  `worst_margin` is the smallest
// left-minus-right difference observed; checks pass when it stays above the
// negated tolerance.
struct LatticeReport {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();

  void record(double margin, double tol) {
    ++checks;
    if (margin < -tol) ++violations;
    worst_margin = std::min(worst_margin, margin);
  }
  bool passed() const { return violations == 0; }
};

// Exhaustively checks that tabulated values describe a normalized nonnegative
// monotone submodular function: value at the empty set is 0, all values lie
// in [0, 1], adding an element never hurts, and marginal gains diminish
// (u(S+a) + u(S+b) >= u(S+a+b) + u(S) for distinct a, b outside S).
inline LatticeReport check_monotone_submodular(const std::vector<double>& vals,
                                               double tol = kSlackTol) {
  int ground = 0;
  while ((std::size_t{1} << ground) < vals.size()) ++ground;
  if ((std::size_t{1} << ground) != vals.size()) {
    throw std::invalid_argument("value table size must be a power of two");
  }
  LatticeReport report;
  report.record(-std::abs(vals[0]), tol);  // empty set pins the zero level
  for (std::uint64_t mask = 0; mask < vals.size(); ++mask) {
    report.record(vals[mask], tol);        // nonnegative
    report.record(1.0 - vals[mask], tol);  // normalized
    for (int a = 0; a < ground; ++a) {
      if (mask & (std::uint64_t{1} << a)) continue;
      const std::uint64_t with_a = mask | (std::uint64_t{1} << a);
      report.record(vals[with_a] - vals[mask], tol);  // monotone
      for (int b = a + 1; b < ground; ++b) {
        if (mask & (std::uint64_t{1} << b)) continue;
        const std::uint64_t with_b = mask | (std::uint64_t{1} << b);
        report.record(vals[with_a] + vals[with_b] - vals[with_a | with_b] -
                          vals[mask],
                      tol);  // diminishing returns
      }
    }
  }
  return report;
}

struct MaxResult {
  ElementSet set;
  double value = 0.0;
};

// True constrained maximum of u(., ctx) over all independent sets, by scanning
// the full lattice.  Deterministic tie-break: the lowest mask wins.
inline MaxResult exhaustive_max(const SetFunction& u, const Matroid& m,
                                const Context& ctx,
                                std::uint64_t budget = std::uint64_t{1} << 22) {
  const int ground = m.ground_size();
  if (ground > kMaxExhaustiveGround ||
      (std::uint64_t{1} << ground) > budget) {
    throw CapacityError("exhaustive_max: 2^" + std::to_string(ground) +
                        " subsets exceed the enumeration budget");
  }
  MaxResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground); ++mask) {
    const ElementSet s = ElementSet::from_mask(mask);
    if (!m.is_independent(s)) continue;
    const double v = u.value(s, ctx);
    if (v > best.value) {
      best.value = v;
      best.set = s;
    }
  }
  return best;
}

// A bijection between T \ S and S \ T, stored as (t, pi(t)) pairs in
// ascending t order.
using ExchangeBijection = std::vector<std::pair<int, int>>;

namespace detail {

// Backtracking search over perfect matchings between T \ S and S \ T where
// pairing (t, s) requires S - s + t to be a base.  Candidates are tried in
// ascending order, so the first complete matching found is the
// lexicographically smallest.  When `collect_all` is set, every matching is
// appended; otherwise the search stops at the first.
inline bool match_exchanges(const Matroid& m, const ElementSet& s_base,
                            const std::vector<int>& t_only,
                            const std::vector<int>& s_only, std::size_t level,
                            std::vector<int>& assignment,
                            std::vector<char>& used, bool collect_all,
                            std::vector<ExchangeBijection>& out) {
  if (level == t_only.size()) {
    ExchangeBijection b;
    for (std::size_t i = 0; i < t_only.size(); ++i) {
      b.emplace_back(t_only[i], s_only[assignment[i]]);
    }
    out.push_back(std::move(b));
    return true;
  }
  bool found = false;
  for (std::size_t j = 0; j < s_only.size(); ++j) {
    if (used[j]) continue;
    if (!m.is_base(s_base.without(s_only[j]).with(t_only[level]))) continue;
    used[j] = 1;
    assignment[level] = static_cast<int>(j);
    if (match_exchanges(m, s_base, t_only, s_only, level + 1, assignment, used,
                        collect_all, out)) {
      found = true;
    }
    used[j] = 0;
    if (found && !collect_all) return true;
  }
  return found;
}

inline std::vector<ExchangeBijection> exchange_bijections(const Matroid& m,
                                                          const ElementSet& s,
                                                          const ElementSet& t,
                                                          bool collect_all) {
  if (!m.is_base(s) || !m.is_base(t)) {
    throw std::invalid_argument("exchange bijection requires two bases");
  }
  const std::vector<int> t_only = set_minus(t, s).elements();
  const std::vector<int> s_only = set_minus(s, t).elements();
  std::vector<ExchangeBijection> out;
  std::vector<int> assignment(t_only.size(), -1);
  std::vector<char> used(s_only.size(), 0);
  match_exchanges(m, s, t_only, s_only, 0, assignment, used, collect_all, out);
  return out;
}

}  // namespace detail

// The lexicographically first bijection pi: T \ S -> S \ T with S - pi(t) + t
// a base for every t, or nullopt if none exists.  The matroid exchange
// theorem guarantees existence for genuine matroids, so nullopt signals an
// implementation bug in the constraint structure under test.
inline std::optional<ExchangeBijection> find_exchange_bijection(
    const Matroid& m, const ElementSet& s, const ElementSet& t) {
  auto all = detail::exchange_bijections(m, s, t, /*collect_all=*/false);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

// Every valid exchange bijection between the two bases.
inline std::vector<ExchangeBijection> all_exchange_bijections(
    const Matroid& m, const ElementSet& s, const ElementSet& t) {
  return detail::exchange_bijections(m, s, t, /*collect_all=*/true);
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

enum class ModelKind { kCoverage, kWidth, kConcaveModular };

// Supplies random certified-submodular set functions of one of three kinds:
// weighted coverage, Monte Carlo width with a shared noise panel, and a
// concave transform (sqrt or cap) of a modular function.  Every output passes
// the exhaustive lattice check by construction.
class RandomSubmodularGen {
 public:
  RandomSubmodularGen(ModelKind kind, std::uint64_t seed, int ground)
      : kind_(kind), ground_(ground), rng_(seed) {
    if (ground_ < 1) throw std::domain_error("generator: ground must be >= 1");
  }

  SetFunctionPtr next() {
    switch (kind_) {
      case ModelKind::kCoverage: {
        const int topics = uniform_int(rng_, 2, 6);
        std::vector<double> weights(topics);
        for (auto& w : weights) w = uniform_real(rng_, 0.1, 1.0);
        std::vector<std::vector<int>> element_topics(ground_);
        for (auto& ts : element_topics) {
          ts.push_back(uniform_int(rng_, 0, topics - 1));  // at least one
          for (int g = 0; g < topics; ++g) {
            if (g != ts[0] && uniform_real(rng_) < 0.35) ts.push_back(g);
          }
          std::sort(ts.begin(), ts.end());
          ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        }
        return std::make_shared<CoverageFunction>(std::move(weights),
                                                  std::move(element_topics));
      }
      case ModelKind::kWidth: {
        const int dim = uniform_int(rng_, 2, 3);
        std::vector<std::vector<double>> vectors(ground_,
                                                 std::vector<double>(dim));
        for (auto& v : vectors) {
          for (auto& c : v) c = uniform_real(rng_, -1.0, 1.0);
        }
        const int draws = uniform_int(rng_, 32, 96);
        return std::make_shared<WidthFunction>(std::move(vectors), draws,
                                               rng_());
      }
      case ModelKind::kConcaveModular: {
        std::vector<double> weights(ground_);
        double total = 0.0;
        for (auto& w : weights) {
          w = uniform_real(rng_, 0.05, 1.0);
          total += w;
        }
        if (uniform_real(rng_) < 0.5) {
          return std::make_shared<ConcaveModularFunction>(
              std::move(weights), ConcaveModularFunction::Phi::kSqrt);
        }
        const double cap = uniform_real(rng_, 0.3, 0.9) * total;
        return std::make_shared<ConcaveModularFunction>(
            std::move(weights), ConcaveModularFunction::Phi::kCapped, cap);
      }
    }
    throw std::logic_error("unreachable");
  }

  ModelKind kind() const { return kind_; }
  int ground() const { return ground_; }

 private:
  ModelKind kind_;
  int ground_;
  Rng rng_;
};

// A random matroid of the requested rank: uniform, a partition with random
// blocks and capacities summing to the rank, or a laminar chain of prefixes
// whose caps are sampled to keep the overall rank intact.  The constructed
// rank is asserted.
inline Matroid random_rank_k_matroid(int ground, int k, Rng& rng) {
  if (k < 0 || k > ground) throw std::domain_error("rank must be in [0, ground]");
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int kind = uniform_int(rng, 0, 2);
    std::optional<Matroid> m;
    if (kind == 0 || k == 0) {
      m = Matroid::uniform(ground, k);
    } else if (kind == 1) {
      std::vector<int> ids(ground);
      for (int i = 0; i < ground; ++i) ids[i] = i;
      std::shuffle(ids.begin(), ids.end(), rng);
      const int nblocks = uniform_int(rng, 1, std::min(k, ground));
      // nblocks nonempty chunks of a shuffled id list
      std::vector<std::vector<int>> chunks(nblocks);
      for (int i = 0; i < ground; ++i) {
        chunks[std::min(i, nblocks - 1)].push_back(ids[i]);
      }
      std::vector<int> caps(nblocks, 0);
      for (int unit = 0; unit < k; ++unit) {  // k units over non-full blocks
        int b = uniform_int(rng, 0, nblocks - 1);
        while (caps[b] >= static_cast<int>(chunks[b].size())) {
          b = (b + 1) % nblocks;
        }
        ++caps[b];
      }
      std::vector<ElementSet> blocks;
      for (auto& c : chunks) blocks.emplace_back(std::move(c));
      m = Matroid::partition(ground, std::move(blocks), caps);
    } else {
      std::vector<int> ids(ground);
      for (int i = 0; i < ground; ++i) ids[i] = i;
      std::shuffle(ids.begin(), ids.end(), rng);
      const int depth = uniform_int(rng, 1, 2);
      std::vector<ElementSet> chain;
      std::vector<int> caps;
      int prev_size = 0;
      for (int lvl = 0; lvl < depth; ++lvl) {
        const int size = uniform_int(rng, prev_size + 1, ground - (depth - lvl));
        chain.emplace_back(std::vector<int>(ids.begin(), ids.begin() + size));
        // keep rank k reachable: at least k - (elements outside this set)
        const int lo = std::max(0, k - (ground - size));
        caps.push_back(uniform_int(rng, lo, std::min(size, k)));
        prev_size = size;
      }
      chain.emplace_back(std::vector<int>(ids.begin(), ids.end()));
      caps.push_back(k);
      // caps must be attainable through the nesting: outer >= inner
      for (std::size_t i = 1; i < caps.size(); ++i) {
        caps[i] = std::max(caps[i], caps[i - 1]);
      }
      caps.back() = k;
      m = Matroid::laminar(ground, std::move(chain), caps);
    }
    if (m->rank() == k) return *std::move(m);
  }
  return Matroid::uniform(ground, k);  // unreachable in practice
}

// ---------------------------------------------------------------------------
// Joint local optimum verification
// ---------------------------------------------------------------------------

// A batch of set functions (tabulated on a shared ground) with one matroid
// each, all of equal rank: the arena in which the joint-local-optimum
// inequalities are enumerated.
struct JointInstance {
  std::vector<std::vector<double>> values;  // [j][mask]
  std::vector<Matroid> matroids;            // one per function, equal ranks
};

// Randomly generated joint instance: per-function model kind cycles through
// the three generators, and each function is scaled by a random context-held
// factor in (0, 1) via the single-index wrapper (which preserves monotone
// submodularity).
inline JointInstance random_joint_instance(int n, int ground, int k, Rng& rng) {
  JointInstance inst;
  const ModelKind kinds[] = {ModelKind::kCoverage, ModelKind::kWidth,
                             ModelKind::kConcaveModular};
  for (int j = 0; j < n; ++j) {
    RandomSubmodularGen gen(kinds[uniform_int(rng, 0, 2)], rng(), ground);
    SetFunctionPtr u = gen.next();
    Context ctx{{0.0}};
    if (uniform_real(rng) < 0.5) {
      std::vector<double> theta{uniform_real(rng, -1.0, 1.0)};
      ctx.x[0] = uniform_real(rng, -1.0, 1.0);
      u = std::make_shared<GlmFunction>(std::move(u), std::move(theta),
                                        LinkKind::kLogistic);
    }
    inst.values.push_back(tabulate(*u, ctx, ground));
    inst.matroids.push_back(random_rank_k_matroid(ground, k, rng));
  }
  return inst;
}

// Result of an exhaustive sweep over joint tuples: how many tuples were
// checked and the smallest slack (left minus right side) of the target
// inequality among them.
struct SlackReport {
  std::uint64_t tuples = 0;
  double min_slack = std::numeric_limits<double>::infinity();

  bool passed(double tol = kSlackTol) const {
    return tuples == 0 || min_slack >= -tol;
  }
};

namespace detail {

struct TupleTables {
  // per function j: the bases, u at each base, the local-neighborhood maximum
  // of the relevant potential at each base, and the global benchmark.
  std::vector<std::vector<ElementSet>> bases;
  std::vector<std::vector<double>> u_at;
  std::vector<std::vector<double>> local_max;
  std::vector<double> benchmark;
  int k = 0;

  std::uint64_t tuple_count() const {
    std::uint64_t total = 1;
    for (const auto& b : bases) {
      if (b.empty()) return 0;
      if (total > (std::uint64_t{1} << 62) / b.size()) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      total *= b.size();
    }
    return total;
  }
};

// Iterates the cross product of base lists; fn receives u-sum and
// local-max-sum for the current tuple.
template <typename Fn>
void for_each_tuple(const TupleTables& tables, Fn&& fn) {
  const int n = static_cast<int>(tables.bases.size());
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    double sum_u = 0.0, sum_local = 0.0;
    for (int j = 0; j < n; ++j) {
      sum_u += tables.u_at[j][idx[j]];
      sum_local += tables.local_max[j][idx[j]];
    }
    fn(sum_u, sum_local);
    int j = n - 1;
    while (j >= 0 && ++idx[j] == tables.bases[j].size()) {
      idx[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
}

inline double value_of(const std::vector<double>& vals, const ElementSet& s) {
  return vals[s.to_mask()];
}

}  // namespace detail

// Exhaustive verification of the half-approximation guarantee for joint local
// optima under swap neighborhoods.  For eps >= 0, every size-k tuple that
// qualifies as a joint local eps-optimum is checked against
//   sum_j u_j(S_j) >= 1/2 (sum_j max_indep u_j - n k eps).
// For eps < 0, every tuple is checked at its own implied minimal eps (the
// strongest form: any tuple is an eps-local optimum for its implied eps).
inline SlackReport verify_lemma1(const JointInstance& inst, double eps,
                                 std::uint64_t tuple_budget = 1 << 20) {
  const int n = static_cast<int>(inst.values.size());
  if (n == 0 || inst.matroids.size() != inst.values.size()) {
    throw std::invalid_argument("joint instance needs matched functions/matroids");
  }
  detail::TupleTables tables;
  tables.k = inst.matroids[0].rank();
  for (int j = 0; j < n; ++j) {
    const Matroid& m = inst.matroids[j];
    if (m.rank() != tables.k) {
      throw std::invalid_argument("joint instance requires equal ranks");
    }
    const auto& vals = inst.values[j];
    std::vector<ElementSet> bases = m.enumerate_bases();
    std::vector<double> u_at, local_max;
    for (const ElementSet& b : bases) {
      u_at.push_back(detail::value_of(vals, b));
      double lm = -std::numeric_limits<double>::infinity();
      for (const ElementSet& nb : m.swap_neighborhood(b).members) {
        lm = std::max(lm, detail::value_of(vals, nb));
      }
      local_max.push_back(lm);
    }
    double bench = 0.0;  // max over all independent sets (empty set included)
    for (std::uint64_t mask = 0; mask < vals.size(); ++mask) {
      if (m.is_independent(ElementSet::from_mask(mask))) {
        bench = std::max(bench, vals[mask]);
      }
    }
    tables.bases.push_back(std::move(bases));
    tables.u_at.push_back(std::move(u_at));
    tables.local_max.push_back(std::move(local_max));
    tables.benchmark.push_back(bench);
  }
  if (tables.tuple_count() > tuple_budget) {
    throw CapacityError("verify_lemma1: tuple count exceeds budget");
  }
  double bench_sum = 0.0;
  for (double b : tables.benchmark) bench_sum += b;
  SlackReport report;
  detail::for_each_tuple(tables, [&](double sum_u, double sum_local) {
    double use_eps = eps;
    if (eps >= 0.0) {
      if (sum_u < sum_local - n * eps) return;  // not an eps-local optimum
    } else {
      use_eps = std::max(0.0, (sum_local - sum_u) / n);
    }
    ++report.tuples;
    const double rhs = 0.5 * (bench_sum - n * tables.k * use_eps);
    report.min_slack = std::min(report.min_slack, sum_u - rhs);
  });
  return report;
}

// Exhaustive verification of the (1 - 1/e) guarantee for joint local optima
// of the subset-reweighted potential under base neighborhoods:
//   sum_j u_j(S_j) >= (1 - 1/e) (sum_j max_base u_j - n k eps),
// where eps-local optimality is read on the reweighted values T u_j.
inline SlackReport verify_lemma2(const JointInstance& inst,
                                 const WeightTable& table, double eps,
                                 std::uint64_t tuple_budget = 1 << 20) {
  const int n = static_cast<int>(inst.values.size());
  if (n == 0 || inst.matroids.size() != inst.values.size()) {
    throw std::invalid_argument("joint instance needs matched functions/matroids");
  }
  detail::TupleTables tables;  // u_at holds u, local_max holds Tu-neighborhood max
  std::vector<std::vector<double>> tu_at;
  tables.k = inst.matroids[0].rank();
  for (int j = 0; j < n; ++j) {
    const Matroid& m = inst.matroids[j];
    if (m.rank() != tables.k) {
      throw std::invalid_argument("joint instance requires equal ranks");
    }
    const auto& vals = inst.values[j];
    const SetValueFn fn = [&vals](const ElementSet& s) {
      return detail::value_of(vals, s);
    };
    std::vector<ElementSet> bases = m.enumerate_bases();
    std::vector<double> u_at, local_max, tu;
    double bench = 0.0;
    for (const ElementSet& b : bases) {
      u_at.push_back(detail::value_of(vals, b));
      bench = std::max(bench, u_at.back());
      tu.push_back(t_value(fn, b, table));
      double lm = -std::numeric_limits<double>::infinity();
      for (const ElementSet& nb : m.base_neighborhood(b).members) {
        lm = std::max(lm, t_value(fn, nb, table));
      }
      local_max.push_back(lm);
    }
    tables.bases.push_back(std::move(bases));
    tables.u_at.push_back(std::move(u_at));
    tables.local_max.push_back(std::move(local_max));
    tables.benchmark.push_back(bench);
    tu_at.push_back(std::move(tu));
  }
  if (tables.tuple_count() > tuple_budget) {
    throw CapacityError("verify_lemma2: tuple count exceeds budget");
  }
  double bench_sum = 0.0;
  for (double b : tables.benchmark) bench_sum += b;
  // Walk tuples manually: eps-locality reads the Tu sums while the guarantee
  // reads the raw u sums, so both are accumulated per tuple.
  SlackReport report;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    double sum_u = 0.0, sum_tu = 0.0, sum_tu_local = 0.0;
    for (int j = 0; j < n; ++j) {
      sum_u += tables.u_at[j][idx[j]];
      sum_tu += tu_at[j][idx[j]];
      sum_tu_local += tables.local_max[j][idx[j]];
    }
    double use_eps = eps;
    bool qualifies = true;
    if (eps >= 0.0) {
      qualifies = sum_tu >= sum_tu_local - n * eps;
    } else {
      use_eps = std::max(0.0, (sum_tu_local - sum_tu) / n);
    }
    if (qualifies) {
      ++report.tuples;
      const double rhs =
          kOneMinusInvE * (bench_sum - n * tables.k * use_eps);
      report.min_slack = std::min(report.min_slack, sum_u - rhs);
    }
    int j = n - 1;
    while (j >= 0 && ++idx[j] == tables.bases[j].size()) {
      idx[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return report;
}

// Exhaustive verification of the base-exchange inequality behind the
// (1 - 1/e) guarantee: for every ordered pair of bases (S, T) and every valid
// exchange bijection pi,
//   u(S) >= (1-1/e) u(T) + (1-1/e) sum_t [Tu(S) - Tu(S - pi(t) + t)].
// A pair with no valid bijection at all is a matroid bug and counts as a
// failed check (slack -infinity).
inline SlackReport verify_filmus_ward(const std::vector<double>& vals,
                                      const Matroid& m,
                                      const WeightTable& table,
                                      std::uint64_t pair_budget = 1 << 16) {
  const SetValueFn fn = [&vals](const ElementSet& s) {
    return detail::value_of(vals, s);
  };
  const std::vector<ElementSet> bases = m.enumerate_bases();
  if (bases.size() * bases.size() > pair_budget) {
    throw CapacityError("verify_filmus_ward: too many base pairs");
  }
  std::vector<double> tu(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    tu[i] = t_value(fn, bases[i], table);
  }
  SlackReport report;
  for (std::size_t si = 0; si < bases.size(); ++si) {
    const ElementSet& s = bases[si];
    for (std::size_t ti = 0; ti < bases.size(); ++ti) {
      const ElementSet& t = bases[ti];
      const auto bijections = all_exchange_bijections(m, s, t);
      if (bijections.empty()) {
        ++report.tuples;
        report.min_slack = -std::numeric_limits<double>::infinity();
        continue;
      }
      const double u_s = detail::value_of(vals, s);
      const double u_t = detail::value_of(vals, t);
      for (const ExchangeBijection& pi : bijections) {
        double gap_sum = 0.0;
        for (const auto& [te, se] : pi) {
          gap_sum += tu[si] - t_value(fn, s.without(se).with(te), table);
        }
        ++report.tuples;
        report.min_slack =
            std::min(report.min_slack,
                     u_s - kOneMinusInvE * u_t - kOneMinusInvE * gap_sum);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Seeded batteries (consumed by the CLI `verify` subcommand and reused by the
// acceptance suite with larger instance counts)
// ---------------------------------------------------------------------------

struct BatteryResult {
  std::string name;
  bool passed = false;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  // Smallest inequality margin observed (informational; the pass verdict
  // already accounts for the battery's tolerance).
  double worst_slack = std::numeric_limits<double>::infinity();
  std::string detail;
};

// Quadrature weights against closed-form antiderivative values, the harmonic
// bound on the normalizer, and internal consistency of the subset
// distribution.
inline BatteryResult battery_weight_table(int k_max = 20) {
  BatteryResult r;
  r.name = "weight-table";
  const WeightTable table(k_max);
  const double e = std::exp(1.0);
  const struct {
    int s, t;
    double want;
  } closed[] = {
      {1, 1, 1.0},
      {2, 1, (e - 2.0) / (e - 1.0)},
      {2, 2, 1.0 / (e - 1.0)},
      {3, 1, (2.0 * e - 5.0) / (e - 1.0)},
      {3, 2, (3.0 - e) / (e - 1.0)},
      {3, 3, (e - 2.0) / (e - 1.0)},
  };
  const double eq_tol = 1e-10;
  auto check_eq = [&](double got, double want) {
    ++r.checks;
    const double margin = eq_tol - std::abs(got - want);
    r.worst_slack = std::min(r.worst_slack, margin);
    if (margin < 0.0) ++r.violations;
  };
  auto check_ge = [&](double lhs, double rhs, double tol) {
    ++r.checks;
    const double margin = lhs - rhs;
    r.worst_slack = std::min(r.worst_slack, margin);
    if (margin < -tol) ++r.violations;
  };
  for (const auto& c : closed) check_eq(table.w(c.s, c.t), c.want);
  check_eq(table.tau(1), 1.0);
  check_eq(table.tau(2), (2.0 * e - 3.0) / (e - 1.0));
  double harmonic = 0.0;
  for (int s = 1; s <= k_max; ++s) {
    harmonic += 1.0 / s;
    check_ge(e / (e - 1.0) * harmonic, table.tau(s), kSlackTol);
    // the normalizer matches its own row sum
    double row = 0.0;
    for (int t = 1; t <= s; ++t) {
      check_ge(table.w(s, t), 0.0, 0.0);  // positivity
      row += static_cast<double>(table.binomial(s, t)) * table.w(s, t);
    }
    check_eq(row, table.tau(s));
    // identity on modular functions: a fixed element of S lies in
    // C(s-1,t-1) subsets of each size t, and its total weight is 1
    double element_weight = 0.0;
    for (int t = 1; t <= s; ++t) {
      element_weight +=
          static_cast<double>(table.binomial(s - 1, t - 1)) * table.w(s, t);
    }
    check_eq(element_weight, 1.0);
    // the subset distribution is a probability measure
    if (s <= 10) {
      std::vector<int> ids(s);
      for (int i = 0; i < s; ++i) ids[i] = i;
      const SubsetDistribution d = subset_distribution(ElementSet(ids), table);
      double mass = 0.0;
      for (int t = 1; t <= s; ++t) {
        mass += static_cast<double>(table.binomial(s, t)) * d.subset_prob(t);
      }
      ++r.checks;
      const double margin = 1e-9 - std::abs(mass - 1.0);
      r.worst_slack = std::min(r.worst_slack, margin);
      if (margin < 0.0) ++r.violations;
    }
  }
  r.passed = r.violations == 0;
  std::ostringstream os;
  os << "k_max=" << k_max;
  r.detail = os.str();
  return r;
}

// Exhaustive matroid axioms on random instances: downward closure, the
// exchange property, rank consistency, base enumeration against a brute-force
// scan, and neighborhood contracts (size bound, independence, and the
// equality of swap and base neighborhoods at full rank).
inline BatteryResult battery_matroid_axioms(std::uint64_t seed,
                                            int instances = 50) {
  BatteryResult r;
  r.name = "matroid-axioms";
  r.worst_slack = 0.0;
  Rng rng(seed);
  auto expect = [&r](bool ok) {
    ++r.checks;
    if (!ok) ++r.violations;
  };
  for (int inst = 0; inst < instances; ++inst) {
    const int ground = uniform_int(rng, 3, 7);
    const int k = uniform_int(rng, 1, std::min(3, ground));
    const Matroid m = random_rank_k_matroid(ground, k, rng);
    expect(m.rank() == k);
    const std::uint64_t full = std::uint64_t{1} << ground;
    std::vector<char> indep(full, 0);
    for (std::uint64_t mask = 0; mask < full; ++mask) {
      indep[mask] = m.is_independent(ElementSet::from_mask(mask)) ? 1 : 0;
    }
    expect(indep[0] == 1);
    std::uint64_t brute_bases = 0;
    int max_indep_size = 0;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
      if (!indep[mask]) continue;
      max_indep_size = std::max(max_indep_size, std::popcount(mask));
      // downward closure
      for (int a = 0; a < ground; ++a) {
        if (mask & (std::uint64_t{1} << a)) {
          expect(indep[mask ^ (std::uint64_t{1} << a)] == 1);
        }
      }
      // exchange property against every larger independent set
      for (std::uint64_t other = 0; other < full; ++other) {
        if (!indep[other] || std::popcount(other) <= std::popcount(mask)) {
          continue;
        }
        bool extended = false;
        for (int a = 0; a < ground && !extended; ++a) {
          const std::uint64_t bit = std::uint64_t{1} << a;
          if ((other & bit) && !(mask & bit) && indep[mask | bit]) {
            extended = true;
          }
        }
        expect(extended);
      }
      if (std::popcount(mask) == k) ++brute_bases;
    }
    expect(max_indep_size == k);
    const std::vector<ElementSet> bases = m.enumerate_bases();
    expect(bases.size() == brute_bases);
    for (const ElementSet& b : bases) {
      expect(m.is_base(b));
      const SwapNeighborhood swap = m.swap_neighborhood(b);
      const SwapNeighborhood base = m.base_neighborhood(b);
      expect(swap.members.size() <=
             static_cast<std::size_t>(k * (ground - k) + 1));
      expect(!swap.members.empty() && swap.members.front() == b);
      for (const ElementSet& nb : swap.members) expect(indep[nb.to_mask()] == 1);
      for (const ElementSet& nb : base.members) expect(m.is_base(nb));
      // at full rank the two neighborhoods coincide
      expect(swap.members == base.members);
      // neighborhoods hold no duplicates
      std::vector<ElementSet> sorted = swap.members;
      std::sort(sorted.begin(), sorted.end());
      expect(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
    expect(m.is_base(random_permutation_base(m, rng)));
  }
  r.passed = r.violations == 0;
  r.detail = std::to_string(instances) + " random matroids, ground <= 7";
  return r;
}

// Exhaustive monotone-submodular lattice checks on all generator kinds plus
// the ranking utility and single-index wrappers.
inline BatteryResult battery_lattice(std::uint64_t seed, int instances = 60) {
  BatteryResult r;
  r.name = "lattice";
  Rng rng(seed);
  const ModelKind kinds[] = {ModelKind::kCoverage, ModelKind::kWidth,
                             ModelKind::kConcaveModular};
  for (int inst = 0; inst < instances; ++inst) {
    SetFunctionPtr u;
    int ground;
    Context ctx{{uniform_real(rng, -1.0, 1.0), uniform_real(rng, -1.0, 1.0)}};
    if (inst % 4 == 3) {
      // ranking utility on a 2x2 position/item grid
      const int positions = 2;
      ground = positions * positions;
      std::vector<double> c{1.0, uniform_real(rng, 0.0, 1.0)};
      std::vector<double> w{uniform_real(rng, -1.0, 1.0),
                            uniform_real(rng, -1.0, 1.0)};
      std::vector<std::vector<double>> q(positions,
                                         std::vector<double>(positions));
      for (auto& row : q) {
        for (auto& v : row) v = uniform_real(rng, 0.0, 0.9);
      }
      u = std::make_shared<RankingFunction>(positions, std::move(c),
                                            std::move(w), std::move(q));
    } else {
      ground = uniform_int(rng, 3, 6);
      RandomSubmodularGen gen(kinds[inst % 3], rng(), ground);
      u = gen.next();
      if (uniform_real(rng) < 0.34) {
        std::vector<double> theta{uniform_real(rng, -0.7, 0.7),
                                  uniform_real(rng, -0.7, 0.7)};
        u = std::make_shared<GlmFunction>(std::move(u), std::move(theta),
                                          LinkKind::kLogistic);
      }
    }
    const LatticeReport rep =
        check_monotone_submodular(tabulate(*u, ctx, ground));
    r.checks += rep.checks;
    r.violations += rep.violations;
    r.worst_slack = std::min(r.worst_slack, rep.worst_margin);
  }
  r.passed = r.violations == 0;
  r.detail = std::to_string(instances) + " models, ground <= 6";
  return r;
}

// Random-instance audit of the inverse-gap-weighted distribution: probability
// normalization, the 1/2 floor on the leader, the per-action closed form, and
// the decision-theoretic bound
//   sum_a p(a) [max f - f(a) - (gamma/4)(yhat(a) - f(a))^2] <= 2K/gamma.
inline BatteryResult battery_igw(std::uint64_t seed, int instances = 2000) {
  BatteryResult r;
  r.name = "igw";
  Rng rng(seed);
  auto check = [&r](double margin, double tol) {
    ++r.checks;
    r.worst_slack = std::min(r.worst_slack, margin);
    if (margin < -tol) ++r.violations;
  };
  for (int inst = 0; inst < instances; ++inst) {
    const int num_actions = uniform_int(rng, 2, 50);
    const double gamma =
        std::exp(uniform_real(rng, 0.0, std::log(1e4)));
    std::vector<double> scores(num_actions), truth(num_actions);
    for (auto& s : scores) s = uniform_real(rng);
    for (auto& f : truth) f = uniform_real(rng);
    const std::vector<double> p = igw_distribution(scores, gamma);
    int best = 0;
    for (int a = 1; a < num_actions; ++a) {
      if (scores[a] > scores[best]) best = a;
    }
    double mass = 0.0;
    for (double q : p) {
      mass += q;
      check(q, 0.0);  // probabilities are positive
    }
    check(1e-12 - std::abs(mass - 1.0), 0.0);
    check(p[best] - 0.5, 1e-12);
    for (int a = 0; a < num_actions; ++a) {
      if (a == best) continue;
      const double expected =
          1.0 / (2.0 * num_actions + gamma * (scores[best] - scores[a]));
      check(1e-9 - std::abs(p[a] - expected), 0.0);
    }
    double f_max = truth[0];
    for (double f : truth) f_max = std::max(f_max, f);
    double lhs = 0.0;
    for (int a = 0; a < num_actions; ++a) {
      const double se = (scores[a] - truth[a]) * (scores[a] - truth[a]);
      lhs += p[a] * (f_max - truth[a] - 0.25 * gamma * se);
    }
    check(2.0 * num_actions / gamma - lhs, kSlackTol);
  }
  r.passed = r.violations == 0;
  r.detail = std::to_string(instances) + " instances, K in [2,50]";
  return r;
}

// Empirical law of the subset sampler against the exact nonempty-subset
// distribution (total variation over all subsets), plus the exact probability
// identity at larger cardinalities.
inline BatteryResult battery_subset_sampler(std::uint64_t seed,
                                            std::uint64_t draws = 200000,
                                            double tv_bound = 0.01) {
  BatteryResult r;
  r.name = "subset-sampler";
  const WeightTable table(10);
  Rng rng(seed);
  for (int size = 1; size <= 4; ++size) {
    std::vector<int> ids(size);
    for (int i = 0; i < size; ++i) ids[i] = i;
    const ElementSet s(ids);
    const SubsetDistribution d = subset_distribution(s, table);
    std::vector<std::uint64_t> counts(std::size_t{1} << size, 0);
    for (std::uint64_t i = 0; i < draws; ++i) {
      ++counts[sample_subset(d, rng).to_mask()];
    }
    double tv = 0.0;
    for (std::uint64_t mask = 0; mask < counts.size(); ++mask) {
      const double exact =
          mask == 0 ? 0.0 : d.subset_prob(std::popcount(mask));
      tv += std::abs(static_cast<double>(counts[mask]) / draws - exact);
    }
    tv *= 0.5;
    ++r.checks;
    r.worst_slack = std::min(r.worst_slack, tv_bound - tv);
    if (tv > tv_bound) ++r.violations;
  }
  r.passed = r.violations == 0;
  std::ostringstream os;
  os << draws << " draws per size, TV bound " << tv_bound;
  r.detail = os.str();
  return r;
}

// Exhaustive half-approximation sweep (all joint tuples at their implied
// local-optimality slack) over random joint instances.
inline BatteryResult battery_lemma1(std::uint64_t seed, int instances = 150) {
  BatteryResult r;
  r.name = "local-opt-half";
  Rng rng(seed);
  for (int inst = 0; inst < instances; ++inst) {
    const int ground = uniform_int(rng, 3, 6);
    const int k = uniform_int(rng, 1, std::min(3, ground));
    const int n = uniform_int(rng, 1, 3);
    const SlackReport rep =
        verify_lemma1(random_joint_instance(n, ground, k, rng), -1.0);
    r.checks += rep.tuples;
    if (!rep.passed()) ++r.violations;
    r.worst_slack = std::min(r.worst_slack, rep.min_slack);
  }
  r.passed = r.violations == 0;
  r.detail = std::to_string(instances) + " joint instances, n <= 3";
  return r;
}

// Exhaustive (1 - 1/e) sweep for the reweighted potential, analogous to the
// half-approximation battery but over base neighborhoods.
inline BatteryResult battery_lemma2(std::uint64_t seed, int instances = 100) {
  BatteryResult r;
  r.name = "local-opt-1me";
  Rng rng(seed);
  const WeightTable table(6);
  for (int inst = 0; inst < instances; ++inst) {
    const int ground = uniform_int(rng, 3, 6);
    const int k = uniform_int(rng, 1, std::min(3, ground));
    const int n = uniform_int(rng, 1, 3);
    const SlackReport rep =
        verify_lemma2(random_joint_instance(n, ground, k, rng), table, -1.0);
    r.checks += rep.tuples;
    if (!rep.passed()) ++r.violations;
    r.worst_slack = std::min(r.worst_slack, rep.min_slack);
  }
  r.passed = r.violations == 0;
  r.detail = std::to_string(instances) + " joint instances, n <= 3";
  return r;
}

// Exhaustive base-exchange inequality sweep over random models and matroids.
inline BatteryResult battery_filmus_ward(std::uint64_t seed,
                                         int instances = 100) {
  BatteryResult r;
  r.name = "base-exchange";
  Rng rng(seed);
  const WeightTable table(6);
  const ModelKind kinds[] = {ModelKind::kCoverage, ModelKind::kWidth,
                             ModelKind::kConcaveModular};
  for (int inst = 0; inst < instances; ++inst) {
    const int ground = uniform_int(rng, 3, 6);
    const int k = uniform_int(rng, 1, std::min(3, ground));
    const Matroid m = random_rank_k_matroid(ground, k, rng);
    RandomSubmodularGen gen(kinds[inst % 3], rng(), ground);
    const SetFunctionPtr u = gen.next();
    const SlackReport rep =
        verify_filmus_ward(tabulate(*u, Context{{0.0}}, ground), m, table);
    r.checks += rep.tuples;
    if (!rep.passed()) ++r.violations;
    r.worst_slack = std::min(r.worst_slack, rep.min_slack);
  }
  r.passed = r.violations == 0;
  r.detail = std::to_string(instances) + " base pairs sweeps, all bijections";
  return r;
}

inline std::vector<BatteryResult> run_all_batteries(std::uint64_t seed) {
  return {
      battery_weight_table(),
      battery_matroid_axioms(seed, 50),
      battery_lattice(seed + 1, 60),
      battery_igw(seed + 2, 2000),
      battery_subset_sampler(seed + 3, 200000),
      battery_lemma1(seed + 4, 150),
      battery_lemma2(seed + 5, 100),
      battery_filmus_ward(seed + 6, 100),
  };
}

}  // namespace subcb::testkit
