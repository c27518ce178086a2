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

// Brute-force equilibrium enumeration for small games.
//
// Every extreme equilibrium is a pair of vertices of the best-response
// polytopes
//
//   P1 = { x1 >= 0 : U2^T x1 <= 1 },   P2 = { x2 >= 0 : U1 x2 <= 1 }
//
// (payoffs shifted positive) whose supports are covered by the opposite
// vertex's binding constraints. A vertex with support S is fixed by |S|
// linearly independent binding rows restricted to S, so enumerating the
// pairs (S, J) with |J| = |S| and solving each square system lists every
// vertex. The linear algebra is plain Gaussian elimination over rationals,
// independent of the pivoting tableau.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bimatrix/game.hpp"
#include "bimatrix/metrics.hpp"

namespace bimatrix {

struct OracleEquilibrium {
  StrategyProfile profile;
  // Some binding set exceeds its support; the equilibrium may lie on a
  // continuum of equilibria.
  bool possibly_non_isolated = false;
};

namespace oracle_detail {

// Solves the square system m x = rhs; nullopt when m is singular.
inline std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> m,
                                                    std::vector<Rat> rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      const Rat f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

inline void for_each_subset(std::size_t n, std::size_t size,
                            const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct Vertex {
  std::vector<Rat> x;                  // unnormalized
  std::vector<std::size_t> support;
  std::vector<std::size_t> binding;    // opponent actions with payoff 1
};

// Nonzero vertices of { x >= 0 : c(a, b) x_a summed over a <= 1 for each b },
// where coefficient c(a, b) is the payoff of the opponent's action b.
template <typename Coef>
std::vector<Vertex> polytope_vertices(std::size_t n, std::size_t rows, Coef coef,
                                      std::size_t max_support) {
  std::vector<Vertex> out;
  std::set<std::vector<Rat>> seen;
  const std::size_t top = std::min({n, rows, max_support});
  for (std::size_t s = 1; s <= top; ++s) {
    for_each_subset(n, s, [&](const std::vector<std::size_t>& support) {
      for_each_subset(rows, s, [&](const std::vector<std::size_t>& tight) {
        std::vector<std::vector<Rat>> m(s, std::vector<Rat>(s));
        for (std::size_t r = 0; r < s; ++r)
          for (std::size_t c = 0; c < s; ++c) m[r][c] = coef(support[c], tight[r]);
        auto sol = solve_square(std::move(m), std::vector<Rat>(s, Rat(1)));
        if (!sol) return;
        for (const auto& v : *sol)
          if (sgn(v) <= 0) return;
        std::vector<Rat> x(n, Rat(0));
        for (std::size_t c = 0; c < s; ++c) x[support[c]] = (*sol)[c];
        Vertex v;
        for (std::size_t b = 0; b < rows; ++b) {
          Rat load = 0;
          for (std::size_t a : support) load += coef(a, b) * x[a];
          if (load > 1) return;
          if (load == 1) v.binding.push_back(b);
        }
        if (!seen.insert(x).second) return;
        v.x = std::move(x);
        v.support = support;
        out.push_back(std::move(v));
      });
    });
  }
  return out;
}

}  // namespace oracle_detail

// All extreme equilibria whose supports have at most `max_support` actions
// per agent, ordered by total support size, then by profile.
inline std::vector<OracleEquilibrium> enumerate_equilibria_detailed(
    const BimatrixGame& g, std::optional<std::size_t> max_support = std::nullopt) {
  using oracle_detail::Vertex;
  const BimatrixGame pos = positive_shift(g);
  const std::size_t cap = max_support.value_or(std::max(g.m1(), g.m2()));
  const std::vector<Vertex> v1 = oracle_detail::polytope_vertices(
      g.m1(), g.m2(), [&](std::size_t j, std::size_t k) { return pos.u2()(j, k); }, cap);
  const std::vector<Vertex> v2 = oracle_detail::polytope_vertices(
      g.m2(), g.m1(), [&](std::size_t k, std::size_t j) { return pos.u1()(j, k); }, cap);

  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_support;
  for (std::size_t i = 0; i < v2.size(); ++i) by_support[v2[i].support].push_back(i);

  auto covers = [](const std::vector<std::size_t>& binding,
                   const std::vector<std::size_t>& support) {
    return std::includes(binding.begin(), binding.end(), support.begin(), support.end());
  };

  std::vector<OracleEquilibrium> found;
  for (const Vertex& a : v1) {
    auto consider = [&](const Vertex& b) {
      if (!covers(a.binding, b.support) || !covers(b.binding, a.support)) return;
      OracleEquilibrium e;
      e.profile = {MixedStrategy::from_weights(a.x), MixedStrategy::from_weights(b.x)};
      e.possibly_non_isolated =
          a.binding.size() > a.support.size() || b.binding.size() > b.support.size();
      found.push_back(std::move(e));
    };
    if (a.binding.size() <= 16) {
      const std::size_t top = std::min(a.binding.size(), cap);
      for (std::size_t s = 1; s <= top; ++s) {
        oracle_detail::for_each_subset(a.binding.size(), s,
                                       [&](const std::vector<std::size_t>& pick) {
          std::vector<std::size_t> support;
          for (std::size_t p : pick) support.push_back(a.binding[p]);
          auto it = by_support.find(support);
          if (it == by_support.end()) return;
          for (std::size_t i : it->second) consider(v2[i]);
        });
      }
    } else {
      for (const Vertex& b : v2) consider(b);
    }
  }

  auto total = [](const OracleEquilibrium& e) {
    return e.profile.x1.support().size() + e.profile.x2.support().size();
  };
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    const std::size_t ta = total(a);
    const std::size_t tb = total(b);
    if (ta != tb) return ta < tb;
    return a.profile < b.profile;
  });
  found.erase(std::unique(found.begin(), found.end(),
                          [](const auto& a, const auto& b) { return a.profile == b.profile; }),
              found.end());
  return found;
}

inline std::vector<StrategyProfile> enumerate_equilibria(
    const BimatrixGame& g, std::optional<std::size_t> max_support = std::nullopt) {
  std::vector<StrategyProfile> out;
  for (auto& e : enumerate_equilibria_detailed(g, max_support))
    out.push_back(std::move(e.profile));
  return out;
}

// Minimum over equilibria of max(|S1|, |S2|); nullopt when no equilibrium
// fits within `max_support`.
inline std::optional<std::size_t> smallest_support_size(
    const BimatrixGame& g, std::optional<std::size_t> max_support = std::nullopt) {
  std::optional<std::size_t> best;
  for (const auto& p : enumerate_equilibria(g, max_support)) {
    const std::size_t s = std::max(p.x1.support().size(), p.x2.support().size());
    if (!best || s < *best) best = s;
  }
  return best;
}

}  // namespace bimatrix
