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

// Exact approximation metrics of a strategy profile. No tolerances anywhere.

#include <cstddef>
#include <vector>

#include "bimatrix/errors.hpp"
#include "bimatrix/game.hpp"
#include "bimatrix/rational.hpp"

namespace bimatrix {

struct SolutionMetrics {
  Rat eps;
  Rat eps_ws;
  Rat regret;
  Rat v1;  // expected payoff of agent 1
  Rat v2;
};

namespace detail {

inline void check_dims(const BimatrixGame& g, const StrategyProfile& p) {
  if (p.x1.size() != g.m1() || p.x2.size() != g.m2())
    throw DimensionMismatch("profile dimensions do not match the game");
}

// Payoff of each pure action of `agent` against the opponent's mixed strategy.
inline std::vector<Rat> action_values(const BimatrixGame& g,
                                      const StrategyProfile& p, int agent) {
  const RatMatrix& u = g.payoff(agent);
  std::vector<Rat> out;
  if (agent == 1) {
    out.assign(g.m1(), Rat(0));
    for (std::size_t j = 0; j < g.m1(); ++j)
      for (std::size_t k = 0; k < g.m2(); ++k)
        if (sgn(p.x2[k]) != 0) out[j] += u(j, k) * p.x2[k];
  } else {
    out.assign(g.m2(), Rat(0));
    for (std::size_t k = 0; k < g.m2(); ++k)
      for (std::size_t j = 0; j < g.m1(); ++j)
        if (sgn(p.x1[j]) != 0) out[k] += u(j, k) * p.x1[j];
  }
  return out;
}

inline Rat max_of(const std::vector<Rat>& v) {
  Rat m = v.front();
  for (const auto& e : v)
    if (e > m) m = e;
  return m;
}

}  // namespace detail

// Loss of each agent against their best response; the larger one.
inline Rat epsilon(const BimatrixGame& g, const StrategyProfile& p) {
  detail::check_dims(g, p);
  Rat worst = 0;
  for (int agent : {1, 2}) {
    auto values = detail::action_values(g, p, agent);
    const auto& x = p.of(agent);
    Rat achieved = 0;
    for (std::size_t a = 0; a < values.size(); ++a) achieved += x[a] * values[a];
    Rat loss = detail::max_of(values) - achieved;
    if (loss > worst) worst = loss;
  }
  return worst;
}

// Largest loss of any single action played with positive probability.
inline Rat epsilon_ws(const BimatrixGame& g, const StrategyProfile& p) {
  detail::check_dims(g, p);
  Rat worst = 0;
  for (int agent : {1, 2}) {
    auto values = detail::action_values(g, p, agent);
    const Rat best = detail::max_of(values);
    for (std::size_t a : p.of(agent).support()) {
      Rat loss = best - values[a];
      if (loss > worst) worst = loss;
    }
  }
  return worst;
}

// Sum over both agents and every support action of its best-response
// shortfall. Not normalized by support size.
inline Rat regret(const BimatrixGame& g, const StrategyProfile& p) {
  detail::check_dims(g, p);
  Rat total = 0;
  for (int agent : {1, 2}) {
    auto values = detail::action_values(g, p, agent);
    const Rat best = detail::max_of(values);
    for (std::size_t a : p.of(agent).support()) total += best - values[a];
  }
  return total;
}

inline SolutionMetrics evaluate(const BimatrixGame& g, const StrategyProfile& p) {
  detail::check_dims(g, p);
  SolutionMetrics m;
  m.eps = 0;
  m.eps_ws = 0;
  m.regret = 0;
  for (int agent : {1, 2}) {
    auto values = detail::action_values(g, p, agent);
    const auto& x = p.of(agent);
    const Rat best = detail::max_of(values);
    Rat achieved = 0;
    for (std::size_t a = 0; a < values.size(); ++a) {
      if (sgn(x[a]) == 0) continue;
      achieved += x[a] * values[a];
      Rat loss = best - values[a];
      m.regret += loss;
      if (loss > m.eps_ws) m.eps_ws = loss;
    }
    if (best - achieved > m.eps) m.eps = best - achieved;
    (agent == 1 ? m.v1 : m.v2) = achieved;
  }
  return m;
}

// Exact Nash check: no agent gains by any unilateral deviation.
inline bool verify_ne(const BimatrixGame& g, const StrategyProfile& p) {
  if (p.x1.size() != g.m1() || p.x2.size() != g.m2()) return false;
  return sgn(epsilon(g, p)) == 0;
}

// Indices of the actions of `agent` that are best responses to the
// opponent's strategy in `p`.
inline std::vector<std::size_t> best_responses(const BimatrixGame& g,
                                               const StrategyProfile& p,
                                               int agent) {
  detail::check_dims(g, p);
  auto values = detail::action_values(g, p, agent);
  const Rat best = detail::max_of(values);
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < values.size(); ++a)
    if (values[a] == best) out.push_back(a);
  return out;
}

}  // namespace bimatrix
