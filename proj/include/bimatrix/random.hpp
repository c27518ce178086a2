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

// Seeded randomness with bit-exact, platform-independent streams. Standard
// distributions are implementation-defined, so the few we need are spelled
// out on top of mt19937_64, whose output sequence is fixed by the standard.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "bimatrix/game.hpp"
#include "bimatrix/rational.hpp"

namespace bimatrix {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  // Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() {
    double u1;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // Derives an independent seed for a sub-task, e.g. one restart.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

// Uniform point of the dyadic grid k / 2^bits, k in [0, 2^bits].
inline Rat dyadic_uniform(Rng& rng, unsigned bits) {
  const std::uint64_t k = rng.below((std::uint64_t{1} << bits) + 1);
  return make_rat(Int(static_cast<unsigned long>(k)), pow2(bits));
}

// Uniform random strategy with exact dyadic probabilities: the unit interval
// is cut at n - 1 uniform grid points and the pieces become probabilities.
inline MixedStrategy random_dyadic_strategy(Rng& rng, std::size_t n,
                                            unsigned bits = 16) {
  const std::uint64_t grid = std::uint64_t{1} << bits;
  std::vector<std::uint64_t> cuts;
  cuts.reserve(n + 1);
  cuts.push_back(0);
  for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(rng.below(grid + 1));
  cuts.push_back(grid);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rat> probs;
  probs.reserve(n);
  const Int denom = pow2(bits);
  for (std::size_t i = 0; i < n; ++i)
    probs.push_back(
        make_rat(Int(static_cast<unsigned long>(cuts[i + 1] - cuts[i])), denom));
  return MixedStrategy(std::move(probs));
}

}  // namespace bimatrix
