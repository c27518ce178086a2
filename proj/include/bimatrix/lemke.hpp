// Copyright 2026 The bimatrix Authors.
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

// Lemke's algorithm from an arbitrary starting pair (xbar1, xbar2).
//
// Variables z0, v1, v2 (free), x1, x2 and slacks w1, w2 satisfy
//
//   sum x1 + z0 = 1
//   sum x2 + z0 = 1
//   v1 - U1 x2 - (U1 xbar2) z0 - w1 = 0
//   v2 - U2^T x1 - (U2^T xbar1) z0 - w2 = 0
//
// with x, w, z0 >= 0 and x_{i,a} w_{i,a} = 0. At z0 = 1 the solution is the
// starting pair; when z0 leaves the basis the x part is an equilibrium.
// Along the path, x_i + z0 * xbar_i is a strategy of agent i.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bimatrix/errors.hpp"
#include "bimatrix/game.hpp"
#include "bimatrix/metrics.hpp"
#include "bimatrix/random.hpp"
#include "bimatrix/report.hpp"
#include "bimatrix/tableau.hpp"

namespace bimatrix {

struct LemkeStepTrace {
  std::vector<Rat> z0_values;                // initial 1 through the last step
  std::vector<StrategyProfile> profiles;     // interpolated, one per z0 value
  std::vector<SolutionMetrics> step_metrics;
};

class LemkeSystem {
 public:
  // Best-response ties at the start are broken toward the lowest index; the
  // other tied actions keep their w slack basic at zero.
  LemkeSystem(const BimatrixGame& g, const MixedStrategy& xbar1,
              const MixedStrategy& xbar2)
      : game_(positive_shift(g)), xbar1_(xbar1), xbar2_(xbar2) {
    if (xbar1.size() != g.m1() || xbar2.size() != g.m2())
      throw DimensionMismatch("start strategies do not match the game");
    const std::size_t m1 = g.m1();
    const std::size_t m2 = g.m2();
    const StrategyProfile start{xbar1, xbar2};
    const std::vector<Rat> d1 = detail::action_values(game_, start, 1);
    const std::vector<Rat> d2 = detail::action_values(game_, start, 2);
    b1_ = best_index(d1);
    b2_ = best_index(d2);

    LinearSystem sys;
    sys.columns.push_back(VariableId::z0());
    sys.columns.push_back(VariableId::v(1));
    sys.columns.push_back(VariableId::v(2));
    for (std::size_t j = 0; j < m1; ++j) sys.columns.push_back(VariableId::x(1, j));
    for (std::size_t k = 0; k < m2; ++k) sys.columns.push_back(VariableId::x(2, k));
    for (std::size_t j = 0; j < m1; ++j) sys.columns.push_back(VariableId::w(1, j));
    for (std::size_t k = 0; k < m2; ++k) sys.columns.push_back(VariableId::w(2, k));
    sys.free_variables = {VariableId::v(1), VariableId::v(2)};
    const std::size_t n = sys.columns.size();
    const std::size_t x1_at = 3;
    const std::size_t x2_at = 3 + m1;
    const std::size_t w1_at = 3 + m1 + m2;
    const std::size_t w2_at = 3 + 2 * m1 + m2;

    auto add_row = [&](std::vector<Rat> row, Rat rhs) {
      Int den = rhs.get_den();
      for (const auto& e : row) den = lcm(den, e.get_den());
      std::vector<Int> ints;
      ints.reserve(n);
      for (const auto& e : row) ints.push_back(Rat(e * Rat(den)).get_num());
      sys.coefficients.push_back(std::move(ints));
      sys.rhs.push_back(Rat(rhs * Rat(den)).get_num());
    };

    {
      std::vector<Rat> row(n, Rat(0));
      row[0] = 1;
      for (std::size_t j = 0; j < m1; ++j) row[x1_at + j] = 1;
      add_row(std::move(row), 1);
    }
    {
      std::vector<Rat> row(n, Rat(0));
      row[0] = 1;
      for (std::size_t k = 0; k < m2; ++k) row[x2_at + k] = 1;
      add_row(std::move(row), 1);
    }
    for (std::size_t j = 0; j < m1; ++j) {
      std::vector<Rat> row(n, Rat(0));
      row[0] = -d1[j];
      row[1] = 1;
      for (std::size_t k = 0; k < m2; ++k) row[x2_at + k] = -game_.u1()(j, k);
      row[w1_at + j] = -1;
      add_row(std::move(row), 0);
    }
    for (std::size_t k = 0; k < m2; ++k) {
      std::vector<Rat> row(n, Rat(0));
      row[0] = -d2[k];
      row[2] = 1;
      for (std::size_t j = 0; j < m1; ++j) row[x1_at + j] = -game_.u2()(j, k);
      row[w2_at + k] = -1;
      add_row(std::move(row), 0);
    }

    std::vector<VariableId> basis{VariableId::z0(), VariableId::v(1),
                                  VariableId::v(2), VariableId::x(2, b2_)};
    for (std::size_t j = 0; j < m1; ++j)
      if (j != b1_) basis.push_back(VariableId::w(1, j));
    for (std::size_t k = 0; k < m2; ++k)
      if (k != b2_) basis.push_back(VariableId::w(2, k));
    tableau_.emplace(std::move(sys), basis);
  }

  const Tableau& tableau() const { return *tableau_; }
  Tableau& tableau() { return *tableau_; }
  const BimatrixGame& shifted_game() const { return game_; }
  const MixedStrategy& xbar1() const { return xbar1_; }
  const MixedStrategy& xbar2() const { return xbar2_; }
  std::size_t excluded_best_response() const { return b1_; }

  VariableId first_entering() const { return VariableId::x(1, b1_); }

  static VariableId complement(const VariableId& v) {
    if (v.kind == VarKind::kPrimalX) return VariableId::w(v.agent, v.index);
    if (v.kind == VarKind::kSlackW) return VariableId::x(v.agent, v.index);
    throw std::invalid_argument("variable has no complement in the Lemke system");
  }

  Rat z0() const { return tableau_->value(VariableId::z0()); }

  // (x1 + z0 xbar1, x2 + z0 xbar2); a valid profile at every basis.
  StrategyProfile interpolated() const {
    const Rat z = z0();
    auto part = [&](int agent, const MixedStrategy& xbar) {
      std::vector<Rat> p;
      p.reserve(xbar.size());
      for (std::size_t a = 0; a < xbar.size(); ++a)
        p.push_back(tableau_->value(VariableId::x(agent, a)) + z * xbar[a]);
      return MixedStrategy(std::move(p));
    };
    return {part(1, xbar1_), part(2, xbar2_)};
  }

 private:
  static std::size_t best_index(const std::vector<Rat>& values) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < values.size(); ++a)
      if (values[a] > values[best]) best = a;
    return best;
  }

  BimatrixGame game_;
  MixedStrategy xbar1_;
  MixedStrategy xbar2_;
  std::size_t b1_ = 0;
  std::size_t b2_ = 0;
  std::optional<Tableau> tableau_;
};

struct LemkeResult {
  enum class Status { kEquilibrium, kRayTermination, kStepLimitExceeded, kInterrupted };

  Status status = Status::kStepLimitExceeded;
  std::uint64_t steps = 0;
  std::optional<StrategyProfile> equilibrium;
  LemkeStepTrace trace;

  bool found_equilibrium() const { return status == Status::kEquilibrium; }
};

struct LemkeOptions {
  std::optional<std::uint64_t> step_limit;
  // Returns the step budget given the trace so far; checked after each step.
  std::function<std::uint64_t(const LemkeStepTrace&)> budget;
  bool record_trace = true;
  bool record_metrics = true;  // evaluated on the caller's game
  TieBreak tie_break = TieBreak::kLexicographic;
  Deadline deadline;
  std::function<void(const LemkeSystem&, std::uint64_t)> on_step;
};

inline LemkeResult lemke_solve(const BimatrixGame& g, const MixedStrategy& xbar1,
                               const MixedStrategy& xbar2,
                               const LemkeOptions& options = {}) {
  LemkeSystem sys(g, xbar1, xbar2);
  LemkeResult result;
  auto record = [&]() {
    if (!options.record_trace) return;
    result.trace.z0_values.push_back(sys.z0());
    result.trace.profiles.push_back(sys.interpolated());
    if (options.record_metrics)
      result.trace.step_metrics.push_back(evaluate(g, result.trace.profiles.back()));
  };
  record();

  Tableau& t = sys.tableau();
  VariableId entering = sys.first_entering();
  for (;;) {
    if (options.step_limit && result.steps >= *options.step_limit) {
      result.status = LemkeResult::Status::kStepLimitExceeded;
      return result;
    }
    if (options.budget && result.steps >= options.budget(result.trace)) {
      result.status = LemkeResult::Status::kStepLimitExceeded;
      return result;
    }
    if (options.deadline.expired()) {
      result.status = LemkeResult::Status::kInterrupted;
      return result;
    }
    auto leaving = t.find_leaving(entering, options.tie_break);
    if (!leaving) {
      result.status = LemkeResult::Status::kRayTermination;
      return result;
    }
    t.pivot(entering, *leaving);
    ++result.steps;
    record();
    if (options.on_step) options.on_step(sys, result.steps);
    if (leaving->kind == VarKind::kAuxZ0) {
      result.status = LemkeResult::Status::kEquilibrium;
      result.equilibrium = sys.interpolated();
      return result;
    }
    entering = LemkeSystem::complement(*leaving);
  }
}

enum class QualityMetric { kEps, kEpsWs, kRegret };

inline const char* to_string(QualityMetric m) {
  switch (m) {
    case QualityMetric::kEps:
      return "eps";
    case QualityMetric::kEpsWs:
      return "eps_ws";
    case QualityMetric::kRegret:
      return "regret";
  }
  return "?";
}

inline Rat metric_value(const SolutionMetrics& m, QualityMetric which) {
  switch (which) {
    case QualityMetric::kEps:
      return m.eps;
    case QualityMetric::kEpsWs:
      return m.eps_ws;
    case QualityMetric::kRegret:
      return m.regret;
  }
  return m.eps;
}

struct RRLConfig {
  QualityMetric metric = QualityMetric::kEps;
  Rat threshold = 0;  // th <= 0 accepts every start
  // Step budget of a guarded attempt; defaults to 20 (m1 + m2).
  std::function<std::uint64_t(const LemkeStepTrace&)> cutoff_schedule;
  // Attempts (accepted or not) made under the cutoff; later ones run
  // uncapped. Defaults to 2 (m1 + m2).
  std::optional<std::uint64_t> max_guarded_restarts;
  std::uint64_t seed = 0;
  Deadline deadline;
  std::optional<bool> track_best;
};

// Lemke with random restarts from random starting pairs.
inline SolveReport rr_l(const BimatrixGame& g, const RRLConfig& cfg) {
  const std::uint64_t labels = g.m1() + g.m2();
  const std::uint64_t max_guarded = cfg.max_guarded_restarts.value_or(2 * labels);
  const bool track = cfg.track_best.value_or(cfg.deadline.is_set());
  auto schedule = cfg.cutoff_schedule;
  if (!schedule) schedule = [labels](const LemkeStepTrace&) { return 20 * labels; };

  SolveReport report;
  report.algorithm = "rrl";
  BestProfile best;
  auto timeout = [&]() {
    StrategyProfile fallback =
        best.has_value() ? best.profile()
                         : StrategyProfile{MixedStrategy::uniform(g.m1()),
                                           MixedStrategy::uniform(g.m2())};
    finish_report(report, g, fallback, Outcome::kTimeout);
    return report;
  };

  for (std::uint64_t attempt = 0;; ++attempt) {
    if (cfg.deadline.expired()) return timeout();
    Rng rng(Rng::mix(cfg.seed, attempt));
    MixedStrategy xbar1 = random_dyadic_strategy(rng, g.m1());
    MixedStrategy xbar2 = random_dyadic_strategy(rng, g.m2());
    const bool guarded = attempt < max_guarded;
    if (guarded && sgn(cfg.threshold) > 0) {
      const SolutionMetrics start = evaluate(g, StrategyProfile{xbar1, xbar2});
      if (!(metric_value(start, cfg.metric) > cfg.threshold)) {
        ++report.restarts;
        continue;
      }
    }
    LemkeOptions opt;
    opt.record_trace = guarded || track;
    opt.record_metrics = false;
    if (guarded) opt.budget = schedule;
    opt.deadline = cfg.deadline;
    if (track) {
      opt.on_step = [&](const LemkeSystem& sys, std::uint64_t) {
        best.offer(g, sys.interpolated());
      };
    }
    LemkeResult res = lemke_solve(g, xbar1, xbar2, opt);
    report.steps += res.steps;
    if (res.found_equilibrium()) {
      finish_report(report, g, *res.equilibrium, Outcome::kExact);
      return report;
    }
    if (res.status == LemkeResult::Status::kInterrupted) return timeout();
    ++report.restarts;
  }
}

// (1 / z0_1) * sum_{k=1..h} |z0_k - z0_{k+1}|, 1-based.
inline Rat decr(const std::vector<Rat>& z0_values, std::size_t h) {
  if (h == 0 || z0_values.size() < h + 1)
    throw EmptyTrace("decr needs at least h + 1 values of z0");
  if (sgn(z0_values[0]) <= 0) throw std::invalid_argument("z0_1 must be positive");
  Rat total = 0;
  for (std::size_t k = 0; k < h; ++k) total += abs(z0_values[k] - z0_values[k + 1]);
  return total / z0_values[0];
}

inline Rat d_inf(const StrategyProfile& p, const StrategyProfile& q) {
  if (p.x1.size() != q.x1.size() || p.x2.size() != q.x2.size())
    throw DimensionMismatch("profiles differ in shape");
  Rat out = 0;
  for (int agent : {1, 2}) {
    const auto& a = p.of(agent);
    const auto& b = q.of(agent);
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rat d = abs(a[i] - b[i]);
      if (d > out) out = d;
    }
  }
  return out;
}

}  // namespace bimatrix
