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

// Slow reference implementations used only to check the library.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "bimatrix/rational.hpp"
#include "bimatrix/tableau.hpp"

namespace bimatrix::testing {

// Textbook tableau over rationals: the pivot row is divided by the pivot
// element and eliminated from every other row.
class RationalTableau {
 public:
  RationalTableau(const LinearSystem& sys, const std::vector<std::size_t>& basis_cols)
      : rows_(sys.coefficients.size()), cols_(sys.columns.size()), basis_(basis_cols) {
    t_.assign(rows_, std::vector<Rat>(cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t_[r][c] = Rat(sys.coefficients[r][c]);
      t_[r][cols_] = Rat(sys.rhs[r]);
    }
    // The initial basis columns must form an identity.
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t q = 0; q < rows_; ++q)
        if (t_[q][basis_[r]] != (q == r ? 1 : 0)) throw std::logic_error("not an identity basis");
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rat p = t_[row][col];
    for (auto& e : t_[row]) e /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const Rat f = t_[r][col];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) t_[r][c] -= f * t_[row][c];
    }
    basis_[row] = col;
  }

  std::optional<std::size_t> row_of(std::size_t col) const {
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] == col) return r;
    return std::nullopt;
  }

  Rat value(std::size_t col) const {
    auto r = row_of(col);
    return r ? t_[*r][cols_] : Rat(0);
  }

  const Rat& at(std::size_t r, std::size_t c) const { return t_[r][c]; }
  std::size_t rows() const { return rows_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Rat>> t_;
  std::vector<std::size_t> basis_;
};

// Solves B x_B = b for the given basis columns by Gaussian elimination.
inline std::map<std::size_t, Rat> solve_basis(const LinearSystem& sys,
                                              const std::vector<std::size_t>& basis_cols) {
  const std::size_t n = basis_cols.size();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = Rat(sys.coefficients[r][basis_cols[c]]);
    m[r][n] = Rat(sys.rhs[r]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) throw std::logic_error("singular basis");
    std::swap(m[p], m[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const Rat f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::map<std::size_t, Rat> out;
  for (std::size_t c = 0; c < n; ++c) out[basis_cols[c]] = m[c][n] / m[c][c];
  return out;
}

// Vertices of { x >= 0 : a x <= 1 } (a has `rows` rows and `n` columns)
// by brute force over all choices of n tight constraints, each vertex with
// its set of tight constraints. Constraint ids: 0..n-1 for x_j >= 0, n + r
// for row r.
struct PolytopeVertex {
  std::vector<Rat> x;
  std::set<std::size_t> tight;
};

inline std::vector<PolytopeVertex> brute_force_vertices(
    const std::vector<std::vector<Rat>>& a) {
  const std::size_t rows = a.size();
  const std::size_t n = a.front().size();
  const std::size_t total = n + rows;
  std::vector<PolytopeVertex> out;
  std::vector<bool> pick(total, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<std::vector<Rat>> m;
    for (std::size_t id = 0; id < total; ++id) {
      if (!pick[id]) continue;
      std::vector<Rat> row(n + 1, Rat(0));
      if (id < n) {
        row[id] = 1;
      } else {
        for (std::size_t j = 0; j < n; ++j) row[j] = a[id - n][j];
        row[n] = 1;
      }
      m.push_back(std::move(row));
    }
    bool singular = false;
    for (std::size_t c = 0; c < n && !singular; ++c) {
      std::size_t p = c;
      while (p < n && sgn(m[p][c]) == 0) ++p;
      if (p == n) {
        singular = true;
        break;
      }
      std::swap(m[p], m[c]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || sgn(m[r][c]) == 0) continue;
        const Rat f = m[r][c] / m[c][c];
        for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
      }
    }
    if (singular) continue;
    std::vector<Rat> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = m[j][n] / m[j][j];
    bool feasible = true;
    std::set<std::size_t> tight;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(x[j]) < 0) feasible = false;
      if (sgn(x[j]) == 0) tight.insert(j);
    }
    for (std::size_t r = 0; r < rows && feasible; ++r) {
      Rat load = 0;
      for (std::size_t j = 0; j < n; ++j) load += a[r][j] * x[j];
      if (load > 1) feasible = false;
      if (load == 1) tight.insert(n + r);
    }
    if (!feasible) continue;
    bool seen = false;
    for (const auto& v : out) seen = seen || v.x == x;
    if (!seen) out.push_back({x, tight});
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

// Two vertices of a simple polytope are adjacent when they share n - 1
// tight constraints.
inline bool adjacent(const PolytopeVertex& u, const PolytopeVertex& v, std::size_t n) {
  std::size_t common = 0;
  for (auto id : u.tight) common += v.tight.count(id);
  return u.x != v.x && common >= n - 1;
}

}  // namespace bimatrix::testing
