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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bimatrix/errors.hpp"
#include "bimatrix/game.hpp"
#include "bimatrix/lh.hpp"
#include "bimatrix/metrics.hpp"
#include "bimatrix/random.hpp"
#include "bimatrix/report.hpp"

namespace bimatrix {

struct PerturbSpec {
  Rat delta = 0;
  std::uint64_t seed = 0;
};

inline constexpr unsigned kPerturbGridBits = 24;

// Adds delta * (2k - 2^24) / 2^24 to every payoff, k uniform in [0, 2^24].
inline BimatrixGame perturb(const BimatrixGame& g, const PerturbSpec& spec) {
  if (sgn(spec.delta) < 0) throw InvalidSpec("delta must be >= 0");
  Rng rng(spec.seed);
  const std::uint64_t grid = std::uint64_t{1} << kPerturbGridBits;
  const Int denom = pow2(kPerturbGridBits);
  auto shake = [&](const RatMatrix& m) {
    RatMatrix out = m;
    for (auto& e : out.data()) {
      const std::uint64_t k = rng.below(grid + 1);
      const Int offset = Int(static_cast<unsigned long>(2 * k)) - denom;
      e += spec.delta * make_rat(offset, denom);
    }
    return out;
  };
  RatMatrix u1 = shake(g.u1());
  RatMatrix u2 = shake(g.u2());
  return BimatrixGame(std::move(u1), std::move(u2), false);
}

// Largest entrywise payoff difference over both agents.
inline Rat max_deviation(const BimatrixGame& a, const BimatrixGame& b) {
  if (a.m1() != b.m1() || a.m2() != b.m2())
    throw DimensionMismatch("games differ in shape");
  Rat out = 0;
  for (int agent : {1, 2}) {
    const auto& x = a.payoff(agent).data();
    const auto& y = b.payoff(agent).data();
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rat d = abs(x[i] - y[i]);
      if (d > out) out = d;
    }
  }
  return out;
}

struct Theorem1Result {
  Rat eps_on_original;
  Rat bound;
  bool holds = false;
};

// Checks that an equilibrium of the perturbed game is a 2 delta-equilibrium
// of the original. Without `delta` the observed maximal deviation is used.
inline Theorem1Result theorem1_check(const BimatrixGame& g,
                                     const BimatrixGame& g_pert,
                                     const StrategyProfile& ne_pert,
                                     std::optional<Rat> delta = std::nullopt) {
  if (!verify_ne(g_pert, ne_pert))
    throw NotAnEquilibrium("profile is not an equilibrium of the perturbed game");
  const Rat dev = max_deviation(g, g_pert);
  if (delta && dev > *delta)
    throw std::invalid_argument("perturbation exceeds the stated delta");
  Theorem1Result r;
  r.eps_on_original = epsilon(g, ne_pert);
  r.bound = 2 * (delta ? *delta : dev);
  r.holds = r.eps_on_original <= r.bound;
  return r;
}

struct IpLhIteration {
  unsigned k = 0;
  Rat delta;
  std::uint64_t steps = 0;
  std::optional<Rat> eps;  // unset when the iteration was interrupted
  Rat best_eps;            // incumbent after the iteration
};

struct IpLhState {
  unsigned k = 3;
  std::optional<StrategyProfile> best;
  Rat best_eps;
  std::vector<IpLhIteration> iterations;
};

struct IpLhConfig {
  Deadline deadline;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_iterations;
  bool random_label = false;
};

// Anytime loop: solve ever finer perturbations of g with LH and keep the
// profile with the lowest epsilon on g. Stops at the deadline, after
// max_iterations, or on an exact equilibrium.
inline std::pair<SolveReport, IpLhState> ip_lh(const BimatrixGame& g,
                                               const IpLhConfig& cfg) {
  if (!cfg.deadline.is_set() && !cfg.max_iterations)
    throw std::invalid_argument("ip_lh needs a deadline or an iteration limit");
  SolveReport report;
  report.algorithm = "iplh";
  IpLhState state;
  BestProfile best;
  Rng label_rng(Rng::mix(cfg.seed, 0xfeed));

  for (unsigned k = 3;; ++k) {
    if (cfg.deadline.expired()) break;
    if (cfg.max_iterations && state.iterations.size() >= *cfg.max_iterations) break;
    state.k = k;
    IpLhIteration it;
    it.k = k;
    it.delta = make_rat(Int(1), pow2(k));
    const BimatrixGame gp = perturb(g, {it.delta, Rng::mix(cfg.seed, k)});
    const std::size_t label =
        cfg.random_label ? 1 + label_rng.below(g.m1() + g.m2()) : 1;
    LHOptions opt;
    opt.deadline = cfg.deadline;
    opt.on_step = [&](const LHSystem& sys, std::uint64_t) {
      if (auto p = sys.profile()) best.offer(g, *p);
    };
    LHPathRecord rec = lh_solve(gp, label, opt);
    it.steps = rec.steps;
    report.steps += rec.steps;
    if (rec.found_equilibrium()) {
      it.eps = epsilon(g, *rec.equilibrium);
      best.offer(*rec.equilibrium, *it.eps);
    }
    if (best.has_value()) it.best_eps = best.eps();
    state.iterations.push_back(it);
    if (!rec.found_equilibrium()) break;
    if (best.has_value() && sgn(best.eps()) == 0) break;
  }

  Outcome outcome = Outcome::kApprox;
  if (best.has_value() && sgn(best.eps()) == 0) {
    outcome = Outcome::kExact;
  } else if (cfg.deadline.expired()) {
    outcome = Outcome::kTimeout;
  }
  if (best.has_value()) {
    state.best = best.profile();
    state.best_eps = best.eps();
    finish_report(report, g, best.profile(), outcome);
  } else {
    finish_report(report, g,
                  StrategyProfile{MixedStrategy::uniform(g.m1()),
                                  MixedStrategy::uniform(g.m2())},
                  outcome);
    state.best_eps = report.metrics.eps;
  }
  report.restarts = state.iterations.empty() ? 0 : state.iterations.size() - 1;
  return {report, state};
}

}  // namespace bimatrix
