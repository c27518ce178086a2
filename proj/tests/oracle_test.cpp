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

#include <vector>

#include "bimatrix/generators.hpp"
#include "bimatrix/metrics.hpp"
#include "bimatrix/oracle.hpp"
#include "support/corpus.hpp"

namespace bimatrix {
namespace {

const Rat kHalf = make_rat(1, 2);

TEST(Oracle, MatchingPenniesUnique) {
  const auto all = enumerate_equilibria(matching_pennies());
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], (StrategyProfile{MixedStrategy({kHalf, kHalf}), MixedStrategy({kHalf, kHalf})}));
  EXPECT_EQ(smallest_support_size(matching_pennies()), 2u);
  EXPECT_FALSE(smallest_support_size(matching_pennies(), 1).has_value());
}

TEST(Oracle, CoordinationHasThree) {
  const BimatrixGame g(RatMatrix{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
                       RatMatrix{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  const auto all = enumerate_equilibria(g);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].x1.support().size() + all[0].x2.support().size(), 2u);
  EXPECT_EQ(all[2], (StrategyProfile{MixedStrategy({kHalf, kHalf}), MixedStrategy({kHalf, kHalf})}));
  EXPECT_EQ(smallest_support_size(g), 1u);
}

TEST(Oracle, CorpusSoundAndNonEmpty) {
  for (const auto& c : testing::seeded_corpus()) {
    const auto detailed = enumerate_equilibria_detailed(c.game);
    ASSERT_FALSE(detailed.empty()) << c.name;
    std::size_t prev = 0;
    for (const auto& e : detailed) {
      EXPECT_TRUE(verify_ne(c.game, e.profile)) << c.name;
      const std::size_t total = e.profile.x1.support().size() + e.profile.x2.support().size();
      EXPECT_GE(total, prev);
      prev = total;
    }
    std::size_t smallest = 99;
    for (const auto& e : detailed)
      smallest = std::min(smallest, std::max(e.profile.x1.support().size(),
                                             e.profile.x2.support().size()));
    EXPECT_EQ(smallest_support_size(c.game), smallest);
  }
}

TEST(Oracle, SupportCapFilters) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BimatrixGame g = generate({GameKind::kRandom, 5, 5, 0.0, false, seed});
    const auto full = enumerate_equilibria(g);
    const auto capped = enumerate_equilibria(g, 2);
    std::vector<StrategyProfile> expected;
    for (const auto& p : full)
      if (p.x1.support().size() <= 2 && p.x2.support().size() <= 2) expected.push_back(p);
    EXPECT_EQ(capped, expected);
  }
}

TEST(Oracle, DegenerateGamesFlagContinua) {
  // Agent 2 is indifferent everywhere, so agent 1's pure best response
  // pairs with a continuum of agent 2 strategies.
  const BimatrixGame g(RatMatrix{{Rat(1), Rat(0)}, {Rat(0), Rat(0)}},
                       RatMatrix{{Rat(0), Rat(0)}, {Rat(0), Rat(0)}});
  const auto all = enumerate_equilibria_detailed(g);
  ASSERT_FALSE(all.empty());
  bool flagged = false;
  for (const auto& e : all) {
    EXPECT_TRUE(verify_ne(g, e.profile));
    flagged = flagged || e.possibly_non_isolated;
  }
  EXPECT_TRUE(flagged);
}

TEST(Oracle, PureEquilibriumGivesSupportOne) {
  const BimatrixGame g = generate({GameKind::kDominant, 3, 4, 0.0, false, 2});
  EXPECT_EQ(smallest_support_size(g), 1u);
}

}  // namespace
}  // namespace bimatrix
