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


#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "bimatrix/errors.hpp"
#include "bimatrix/generators.hpp"
#include "bimatrix/lemke.hpp"
#include "bimatrix/metrics.hpp"
#include "bimatrix/oracle.hpp"
#include "support/corpus.hpp"

namespace bimatrix {
namespace {

const Rat kHalf = make_rat(1, 2);

BimatrixGame prisoners_dilemma() {
  return BimatrixGame(RatMatrix{{Rat(3), Rat(0)}, {Rat(5), Rat(1)}},
                      RatMatrix{{Rat(3), Rat(5)}, {Rat(0), Rat(1)}});
}

BimatrixGame random_game(std::size_t m1, std::size_t m2, std::uint64_t seed) {
  return generate({GameKind::kRandom, m1, m2, 0.0, false, seed});
}

TEST(Lemke, MatchingPenniesFromUniform) {
  const auto r = lemke_solve(matching_pennies(), MixedStrategy::uniform(2), MixedStrategy::uniform(2));
  ASSERT_TRUE(r.found_equilibrium());
  EXPECT_EQ(*r.equilibrium,
            (StrategyProfile{MixedStrategy({kHalf, kHalf}), MixedStrategy({kHalf, kHalf})}));
}

TEST(Lemke, DominantGameFromInteriorStarts) {
  Rng rng(1);
  const StrategyProfile defect{MixedStrategy::pure(2, 1), MixedStrategy::pure(2, 1)};
  for (int i = 0; i < 10; ++i) {
    const auto r = lemke_solve(prisoners_dilemma(), random_dyadic_strategy(rng, 2),
                               random_dyadic_strategy(rng, 2));
    ASSERT_TRUE(r.found_equilibrium());
    EXPECT_EQ(*r.equilibrium, defect);
  }
}

TEST(Lemke, RandomStartsReachOracleEquilibria) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BimatrixGame g = random_game(4, 4, 3000 + seed);
    const auto all = enumerate_equilibria(g);
    Rng rng(seed);
    for (int s = 0; s < 5; ++s) {
      const auto r = lemke_solve(g, random_dyadic_strategy(rng, 4), random_dyadic_strategy(rng, 4));
      if (!r.found_equilibrium()) continue;
      EXPECT_TRUE(verify_ne(g, *r.equilibrium));
      EXPECT_NE(std::find(all.begin(), all.end(), *r.equilibrium), all.end());
    }
  }
}

TEST(Lemke, InitialBasisStructure) {
  Rng rng(8);
  for (const auto& c : testing::seeded_corpus()) {
    const BimatrixGame& g = c.game;
    for (int s = 0; s < 2; ++s) {
      const MixedStrategy x1 = random_dyadic_strategy(rng, g.m1());
      const MixedStrategy x2 = random_dyadic_strategy(rng, g.m2());
      const LemkeSystem sys(g, x1, x2);
      const Tableau& t = sys.tableau();
      EXPECT_TRUE(t.is_feasible());
      EXPECT_EQ(sys.z0(), Rat(1));
      EXPECT_TRUE(t.is_basic(VariableId::z0()));
      const StrategyProfile start{x1, x2};
      EXPECT_EQ(sys.interpolated(), start);
      const auto br1 = best_responses(g, start, 1);
      const auto br2 = best_responses(g, start, 2);
      // Every non-best-response action keeps its slack basic.
      for (std::size_t j = 0; j < g.m1(); ++j)
        if (!std::count(br1.begin(), br1.end(), j)) EXPECT_TRUE(t.is_basic(VariableId::w(1, j)));
      for (std::size_t k = 0; k < g.m2(); ++k)
        if (!std::count(br2.begin(), br2.end(), k)) EXPECT_TRUE(t.is_basic(VariableId::w(2, k)));
      // The first entering variable is the one best response left out.
      const VariableId first = sys.first_entering();
      EXPECT_EQ(first.agent, 1);
      EXPECT_EQ(first.index, br1.front());
      EXPECT_FALSE(t.is_basic(first));
      EXPECT_FALSE(t.is_basic(VariableId::w(1, first.index)));
      EXPECT_TRUE(t.is_basic(VariableId::x(2, br2.front())));
    }
  }
}

TEST(Lemke, TraceProfilesValidAndMetricsConsistent) {
  Rng rng(21);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BimatrixGame g = random_game(2 + seed % 5, 2 + (seed / 5) % 5, 4000 + seed);
    const auto r = lemke_solve(g, random_dyadic_strategy(rng, g.m1()), random_dyadic_strategy(rng, g.m2()));
    ASSERT_EQ(r.trace.z0_values.size(), r.steps + 1);
    ASSERT_EQ(r.trace.profiles.size(), r.steps + 1);
    ASSERT_EQ(r.trace.step_metrics.size(), r.steps + 1);
    EXPECT_EQ(r.trace.z0_values.front(), Rat(1));
    for (std::size_t i = 0; i < r.trace.profiles.size(); ++i) {
      const auto& p = r.trace.profiles[i];
      Rat s1 = 0;
      Rat s2 = 0;
      for (const auto& e : p.x1.probs()) {
        EXPECT_GE(e, 0);
        s1 += e;
      }
      for (const auto& e : p.x2.probs()) {
        EXPECT_GE(e, 0);
        s2 += e;
      }
      EXPECT_EQ(s1, Rat(1));
      EXPECT_EQ(s2, Rat(1));
      const auto& m = r.trace.step_metrics[i];
      EXPECT_EQ(m.eps, epsilon(g, p));
      EXPECT_EQ(m.eps_ws, epsilon_ws(g, p));
      EXPECT_EQ(m.regret, regret(g, p));
    }
    if (r.found_equilibrium()) {
      EXPECT_EQ(r.trace.z0_values.back(), Rat(0));
      EXPECT_TRUE(verify_ne(g, *r.equilibrium));
    }
  }
}

TEST(Lemke, StepLimitAndDeadline) {
  const BimatrixGame g = random_game(5, 5, 12);
  LemkeOptions opt;
  opt.step_limit = 0;
  EXPECT_EQ(lemke_solve(g, MixedStrategy::uniform(5), MixedStrategy::uniform(5), opt).status,
            LemkeResult::Status::kStepLimitExceeded);
  LemkeOptions late;
  late.deadline = Deadline::after(std::chrono::milliseconds(0));
  EXPECT_EQ(lemke_solve(g, MixedStrategy::uniform(5), MixedStrategy::uniform(5), late).status,
            LemkeResult::Status::kInterrupted);
  EXPECT_THROW(LemkeSystem(g, MixedStrategy::uniform(4), MixedStrategy::uniform(5)),
               DimensionMismatch);
}

TEST(Decr, Examples) {
  EXPECT_EQ(decr({Rat(1), kHalf, Rat(0)}, 2), Rat(1));
  EXPECT_EQ(decr({Rat(1), Rat(2), Rat(0)}, 2), Rat(3));
  EXPECT_THROW(decr({Rat(1)}, 1), EmptyTrace);
  EXPECT_THROW(decr({Rat(1), Rat(0)}, 0), EmptyTrace);
  EXPECT_THROW(decr({Rat(0), Rat(0)}, 1), std::invalid_argument);
}

TEST(Decr, EqualsOneExactlyOnMonotonePaths) {
  Rng rng(4);
  int monotone = 0;
  int bumpy = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const BimatrixGame g = random_game(3 + seed % 4, 3 + (seed / 4) % 4, 5000 + seed);
    const auto r = lemke_solve(g, random_dyadic_strategy(rng, g.m1()), random_dyadic_strategy(rng, g.m2()));
    if (!r.found_equilibrium()) continue;
    const auto& z = r.trace.z0_values;
    bool nonincreasing = true;
    for (std::size_t i = 1; i < z.size(); ++i) nonincreasing = nonincreasing && z[i] <= z[i - 1];
    const Rat d = decr(z, z.size() - 1);
    EXPECT_EQ(d == 1, nonincreasing);
    (nonincreasing ? monotone : bumpy)++;
  }
  EXPECT_GT(monotone, 0);
}

TEST(DInf, Examples) {
  const StrategyProfile a{MixedStrategy::pure(2, 0), MixedStrategy::pure(2, 0)};
  const StrategyProfile b{MixedStrategy::pure(2, 1), MixedStrategy::pure(2, 1)};
  EXPECT_EQ(d_inf(a, a), Rat(0));
  EXPECT_EQ(d_inf(a, b), Rat(1));
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const StrategyProfile p{random_dyadic_strategy(rng, 3), random_dyadic_strategy(rng, 4)};
    const StrategyProfile q{random_dyadic_strategy(rng, 3), random_dyadic_strategy(rng, 4)};
    EXPECT_EQ(d_inf(p, q), d_inf(q, p));
  }
  const StrategyProfile small{MixedStrategy::pure(3, 0), MixedStrategy::pure(2, 0)};
  EXPECT_THROW(d_inf(a, small), DimensionMismatch);
}

TEST(RandomRestartLemke, AcceptAllUncappedEqualsSingleSolve) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BimatrixGame g = random_game(4, 5, 6000 + seed);
    RRLConfig cfg;
    cfg.seed = seed;
    cfg.max_guarded_restarts = 0;
    const auto rep = rr_l(g, cfg);
    Rng rng(Rng::mix(seed, 0));
    const MixedStrategy x1 = random_dyadic_strategy(rng, g.m1());
    const MixedStrategy x2 = random_dyadic_strategy(rng, g.m2());
    const auto single = lemke_solve(g, x1, x2);
    if (!single.found_equilibrium()) continue;
    EXPECT_EQ(rep.restarts, 0u);
    EXPECT_EQ(rep.steps, single.steps);
    EXPECT_EQ(rep.profile, *single.equilibrium);
  }
}

TEST(RandomRestartLemke, RejectingEveryStartStillCompletes) {
  for (auto metric : {QualityMetric::kEps, QualityMetric::kEpsWs, QualityMetric::kRegret}) {
    RRLConfig cfg;
    cfg.metric = metric;
    cfg.threshold = 100;
    cfg.max_guarded_restarts = 7;
    const auto rep = rr_l(random_game(4, 4, 99), cfg);
    EXPECT_EQ(rep.outcome, Outcome::kExact);
    EXPECT_EQ(rep.restarts, 7u);
    EXPECT_EQ(rep.metrics.eps, Rat(0));
  }
}

TEST(RandomRestartLemke, RandomGamesSolved) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BimatrixGame g = random_game(5, 5, 7000 + seed);
    RRLConfig cfg;
    cfg.seed = seed;
    const auto rep = rr_l(g, cfg);
    ASSERT_EQ(rep.outcome, Outcome::kExact);
    EXPECT_TRUE(verify_ne(g, rep.profile));
  }
}

TEST(RandomRestartLemke, CustomScheduleIsUsed) {
  RRLConfig cfg;
  cfg.cutoff_schedule = [](const LemkeStepTrace&) { return std::uint64_t{1}; };
  cfg.max_guarded_restarts = 3;
  const BimatrixGame g = random_game(6, 6, 5);
  const auto rep = rr_l(g, cfg);
  EXPECT_EQ(rep.outcome, Outcome::kExact);
  EXPECT_GE(rep.restarts, 1u);
}

}  // namespace
}  // namespace bimatrix
