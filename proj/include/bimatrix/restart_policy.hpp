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

// Blind restart policies on a path of unknown position: a restart lands
// uniformly on a path of length l and succeeds when the equilibrium lies
// within `cutoff` steps ahead.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "bimatrix/rational.hpp"

namespace bimatrix {

struct RestartPolicy {
  Rat cutoff;
  std::uint64_t res = 1;
};

// Probability that at least one of `res` restarts with budget `cutoff`
// reaches the end of a path of length l: 1 - (1 - cutoff / l)^res.
inline Rat restart_success_probability(std::uint64_t l, const Rat& cutoff,
                                       std::uint64_t res) {
  if (l < 1) throw std::invalid_argument("path length must be >= 1");
  const Rat miss = Rat(1) - cutoff / Rat(Int(static_cast<unsigned long>(l)));
  Rat all_miss = 1;
  for (std::uint64_t i = 0; i < res; ++i) all_miss *= miss;
  return Rat(1) - all_miss;
}

// Minimizer of res * cutoff subject to success probability >= p.
inline RestartPolicy restart_policy_optimum(std::uint64_t l, const Rat& p) {
  if (l < 1) throw std::invalid_argument("path length must be >= 1");
  if (sgn(p) <= 0 || p >= 1) throw std::invalid_argument("p must be in (0, 1)");
  return {Rat(Int(static_cast<unsigned long>(l))) * p, 1};
}

// Restarts needed at a given cutoff to reach success probability p:
// log(1 - p) / log(1 - cutoff / l).
inline double restarts_for(std::uint64_t l, double p, double cutoff) {
  if (cutoff <= 0.0 || cutoff > static_cast<double>(l))
    throw std::invalid_argument("cutoff must be in (0, l]");
  if (cutoff == static_cast<double>(l)) return 1.0;
  return std::log(1.0 - p) / std::log(1.0 - cutoff / static_cast<double>(l));
}

}  // namespace bimatrix
