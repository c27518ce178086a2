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

// Double-precision Lemke-Howson, for comparison with the exact solver only.
// Its output is never treated as verified.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bimatrix/game.hpp"

namespace bimatrix {

struct FloatLHResult {
  std::vector<double> x1;
  std::vector<double> x2;
  double eps = 0.0;
  std::uint64_t steps = 0;
  bool terminated = false;
};

namespace float_detail {

// Dense tableau [A | I | b] for A x + s = 1 with columns x then s.
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;  // x and s columns
  std::vector<double> t;  // rows x (cols + 1)
  std::vector<std::size_t> basis;

  double& at(std::size_t r, std::size_t c) { return t[r * (cols + 1) + c]; }

  std::optional<std::size_t> ratio_row(std::size_t c, double tol) {
    std::optional<std::size_t> best;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double a = at(r, c);
      if (a <= tol) continue;
      const double ratio = at(r, cols) / a;
      if (!best || ratio < best_ratio) {
        best = r;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) at(i, j) -= f * at(r, j);
    }
    basis[r] = c;
  }
};

}  // namespace float_detail

inline FloatLHResult float_lh(const BimatrixGame& g, std::size_t label,
                              std::uint64_t max_steps = 100000, double tol = 1e-12) {
  const BimatrixGame pos = positive_shift(g);
  const std::size_t m1 = g.m1();
  const std::size_t m2 = g.m2();
  if (label < 1 || label > m1 + m2) throw std::invalid_argument("label out of range");

  // d1 holds P1 (x1 columns, s2 slacks), d2 holds P2 (x2 columns, s1 slacks).
  auto build = [](std::size_t nx, std::size_t ns, auto coef) {
    float_detail::Dense d;
    d.rows = ns;
    d.cols = nx + ns;
    d.t.assign(d.rows * (d.cols + 1), 0.0);
    d.basis.resize(ns);
    for (std::size_t r = 0; r < ns; ++r) {
      for (std::size_t c = 0; c < nx; ++c) d.at(r, c) = coef(r, c);
      d.at(r, nx + r) = 1.0;
      d.at(r, d.cols) = 1.0;
      d.basis[r] = nx + r;
    }
    return d;
  };
  float_detail::Dense d1 = build(m1, m2, [&](std::size_t k, std::size_t j) {
    return pos.u2()(j, k).get_d();
  });
  float_detail::Dense d2 = build(m2, m1, [&](std::size_t j, std::size_t k) {
    return pos.u1()(j, k).get_d();
  });

  // Variable ids: agent-1 action a -> a, agent-2 action b -> m1 + b. An x
  // variable of agent 1 lives in d1, its slack in d2, and vice versa.
  struct Var {
    bool is_x;
    std::size_t id;
  };
  auto column = [&](const Var& v, float_detail::Dense*& d) -> std::size_t {
    const bool agent1 = v.id < m1;
    const std::size_t a = agent1 ? v.id : v.id - m1;
    if (v.is_x) {
      d = agent1 ? &d1 : &d2;
      return a;
    }
    d = agent1 ? &d2 : &d1;
    return (agent1 ? m2 : m1) + a;
  };
  auto var_of = [&](const float_detail::Dense& d, std::size_t c) -> Var {
    const bool in_d1 = &d == &d1;
    const std::size_t nx = in_d1 ? m1 : m2;
    if (c < nx) return {true, in_d1 ? c : m1 + c};
    const std::size_t a = c - nx;
    return {false, in_d1 ? m1 + a : a};
  };

  FloatLHResult out;
  const std::size_t start = label - 1;
  Var entering{true, start};
  while (out.steps < max_steps) {
    float_detail::Dense* d = nullptr;
    const std::size_t c = column(entering, d);
    auto r = d->ratio_row(c, tol);
    if (!r) break;
    const Var leaving = var_of(*d, d->basis[*r]);
    d->pivot(*r, c);
    ++out.steps;
    if (leaving.id == start) {
      out.terminated = true;
      break;
    }
    entering = {!leaving.is_x, leaving.id};
  }

  auto extract = [](float_detail::Dense& d, std::size_t nx) {
    std::vector<double> x(nx, 0.0);
    for (std::size_t r = 0; r < d.rows; ++r)
      if (d.basis[r] < nx) x[d.basis[r]] = std::max(0.0, d.at(r, d.cols));
    double total = 0.0;
    for (double v : x) total += v;
    if (total > 0.0)
      for (double& v : x) v /= total;
    return x;
  };
  out.x1 = extract(d1, m1);
  out.x2 = extract(d2, m2);

  // Epsilon in double arithmetic on the original payoffs.
  double worst = 0.0;
  for (int agent : {1, 2}) {
    const std::size_t n = agent == 1 ? m1 : m2;
    std::vector<double> values(n, 0.0);
    for (std::size_t j = 0; j < m1; ++j)
      for (std::size_t k = 0; k < m2; ++k) {
        if (agent == 1) values[j] += g.u1()(j, k).get_d() * out.x2[k];
        else values[k] += g.u2()(j, k).get_d() * out.x1[j];
      }
    const auto& x = agent == 1 ? out.x1 : out.x2;
    double best = values[0];
    double achieved = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      best = std::max(best, values[a]);
      achieved += x[a] * values[a];
    }
    worst = std::max(worst, best - achieved);
  }
  out.eps = worst;
  return out;
}

}  // namespace bimatrix
