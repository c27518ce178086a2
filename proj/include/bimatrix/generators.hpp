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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "bimatrix/errors.hpp"
#include "bimatrix/game.hpp"
#include "bimatrix/random.hpp"

namespace bimatrix {

enum class GameKind { kRandom, kCovariant, kDominant, kDegenerate, kCoordination };

inline const char* to_string(GameKind k) {
  switch (k) {
    case GameKind::kRandom:
      return "random";
    case GameKind::kCovariant:
      return "covariant";
    case GameKind::kDominant:
      return "dominant";
    case GameKind::kDegenerate:
      return "degenerate";
    case GameKind::kCoordination:
      return "coordination";
  }
  return "?";
}

inline GameKind parse_game_kind(std::string_view s) {
  if (s == "random") return GameKind::kRandom;
  if (s == "covariant") return GameKind::kCovariant;
  if (s == "dominant") return GameKind::kDominant;
  if (s == "degenerate") return GameKind::kDegenerate;
  if (s == "coordination") return GameKind::kCoordination;
  throw InvalidSpec("unknown game kind '" + std::string(s) + "'");
}

struct GenSpec {
  GameKind kind = GameKind::kRandom;
  std::size_t m1 = 2;
  std::size_t m2 = 2;
  double rho = 0.0;       // covariant only
  bool rand_rho = false;  // draw rho uniformly from [-1, 1] per instance
  std::uint64_t seed = 0;
};

inline constexpr unsigned kPayoffGridBits = 16;

namespace gen_detail {

inline Rat grid_value(std::int64_t k) {
  return make_rat(Int(static_cast<long>(k)), pow2(kPayoffGridBits));
}

inline RatMatrix uniform_matrix(Rng& rng, std::size_t m1, std::size_t m2) {
  RatMatrix m(m1, m2);
  for (auto& e : m.data()) e = dyadic_uniform(rng, kPayoffGridBits);
  return m;
}

}  // namespace gen_detail

// Deterministic in the spec. Payoffs lie on a 2^-16 grid before
// normalization.
inline BimatrixGame generate(const GenSpec& spec) {
  if (spec.m1 < 1 || spec.m2 < 1) throw InvalidSpec("sizes must be >= 1");
  if (!(spec.rho >= -1.0 && spec.rho <= 1.0)) throw InvalidSpec("rho must be in [-1, 1]");
  Rng rng(spec.seed);
  const std::size_t m1 = spec.m1;
  const std::size_t m2 = spec.m2;
  RatMatrix u1(m1, m2, Rat(0));
  RatMatrix u2(m1, m2, Rat(0));

  switch (spec.kind) {
    case GameKind::kRandom:
      u1 = gen_detail::uniform_matrix(rng, m1, m2);
      u2 = gen_detail::uniform_matrix(rng, m1, m2);
      break;
    case GameKind::kCovariant: {
      const double rho = spec.rand_rho ? 2.0 * rng.uniform01() - 1.0 : spec.rho;
      const double side = std::sqrt(std::max(0.0, 1.0 - rho * rho));
      const double scale = static_cast<double>(std::int64_t{1} << kPayoffGridBits);
      for (std::size_t j = 0; j < m1; ++j) {
        for (std::size_t k = 0; k < m2; ++k) {
          auto [z1, z2] = rng.normal_pair();
          u1(j, k) = gen_detail::grid_value(std::llround(z1 * scale));
          u2(j, k) = gen_detail::grid_value(std::llround((rho * z1 + side * z2) * scale));
        }
      }
      break;
    }
    case GameKind::kDominant: {
      // The dominant action's payoffs lie in the upper half of the grid and
      // every other payoff in the lower half.
      const std::uint64_t half = std::uint64_t{1} << (kPayoffGridBits - 1);
      const std::size_t d1 = rng.below(m1);
      const std::size_t d2 = rng.below(m2);
      for (std::size_t j = 0; j < m1; ++j) {
        for (std::size_t k = 0; k < m2; ++k) {
          const std::uint64_t a = rng.below(half);
          const std::uint64_t b = rng.below(half);
          u1(j, k) = gen_detail::grid_value(static_cast<std::int64_t>(j == d1 ? half + a : a));
          u2(j, k) = gen_detail::grid_value(static_cast<std::int64_t>(k == d2 ? half + b : b));
        }
      }
      break;
    }
    case GameKind::kDegenerate:
      u1 = gen_detail::uniform_matrix(rng, m1, m2);
      u2 = gen_detail::uniform_matrix(rng, m1, m2);
      // Agent 1 gets two identical actions, agent 2 two identical columns.
      if (m1 >= 2)
        for (std::size_t k = 0; k < m2; ++k) u1(1, k) = u1(0, k);
      if (m2 >= 2)
        for (std::size_t j = 0; j < m1; ++j) u2(j, 1) = u2(j, 0);
      break;
    case GameKind::kCoordination:
      for (std::size_t a = 0; a < std::min(m1, m2); ++a) {
        u1(a, a) = 1;
        u2(a, a) = 1;
      }
      break;
  }
  return normalize(BimatrixGame(std::move(u1), std::move(u2)));
}

}  // namespace bimatrix
