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

// Dense integer-pivoting tableau.
//
// The tableau stores the system  A x = b  in the form  T = scale * B^{-1} [A | b]
// where B is the current basis matrix. With integer pivoting every entry of T
// is an integer (a signed minor of [A | b]) and `scale` is |det B|; each pivot
// multiplies by the pivot element and divides exactly by the previous scale.
//
// Degenerate ratio-test ties are broken lexicographically over the columns of
// the initial basis ("lex order"). Those columns start as scale * I, so every
// feasible row of [b | lex columns] is lexicographically positive and stays so.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bimatrix/errors.hpp"
#include "bimatrix/rational.hpp"

namespace bimatrix {

enum class VarKind : std::uint8_t {
  kPrimalX,   // x_{i,a}: weight of action a of agent i
  kSlackS,    // s_{i,a}: slack of a best-response polytope row, pairs with x_{i,a}
  kSlackW,    // w_{i,a}: slack of a Lemke system row, pairs with x_{i,a}
  kAuxZ0,     // z0: Lemke's artificial variable
  kValueV,    // v_i: free expected-payoff variable
  kEpsilon,   // LP objective variable of the local-search evaluation
};

struct VariableId {
  VarKind kind = VarKind::kPrimalX;
  int agent = 0;  // 1 or 2; 0 when not agent-specific
  std::size_t index = 0;

  static VariableId x(int agent, std::size_t a) {
    return {VarKind::kPrimalX, agent, a};
  }
  static VariableId s(int agent, std::size_t a) {
    return {VarKind::kSlackS, agent, a};
  }
  static VariableId w(int agent, std::size_t a) {
    return {VarKind::kSlackW, agent, a};
  }
  static VariableId v(int agent) { return {VarKind::kValueV, agent, 0}; }
  static VariableId z0() { return {VarKind::kAuxZ0, 0, 0}; }
  static VariableId epsilon() { return {VarKind::kEpsilon, 0, 0}; }

  auto operator<=>(const VariableId&) const = default;
};

inline std::string to_string(const VariableId& v) {
  switch (v.kind) {
    case VarKind::kPrimalX:
      return "x" + std::to_string(v.agent) + "_" + std::to_string(v.index);
    case VarKind::kSlackS:
      return "s" + std::to_string(v.agent) + "_" + std::to_string(v.index);
    case VarKind::kSlackW:
      return "w" + std::to_string(v.agent) + "_" + std::to_string(v.index);
    case VarKind::kAuxZ0:
      return "z0";
    case VarKind::kValueV:
      return "v" + std::to_string(v.agent);
    case VarKind::kEpsilon:
      return "eps";
  }
  return "?";
}

enum class TieBreak {
  kLexicographic,
  // Smallest column index among tied rows. Permits cycling; only used to
  // demonstrate why the lexicographic rule exists.
  kLowestIndex,
};

// The raw system a tableau was built from, kept for refactorization.
struct LinearSystem {
  std::vector<VariableId> columns;
  std::vector<std::vector<Int>> coefficients;  // rows x columns
  std::vector<Int> rhs;
  std::vector<VariableId> free_variables;  // never leave via a ratio test
};

class Tableau {
 public:
  // Builds the tableau for `initial_basis` (one variable per row, any order)
  // by fraction-free elimination of `system`. The lexicographic order is the
  // initial-basis columns in column-index order. Throws SingularBasis if the
  // basis matrix is singular and InfeasibleBasis if the basic solution has a
  // negative component on a non-free row.
  Tableau(LinearSystem system, std::span<const VariableId> initial_basis)
      : system_(std::make_shared<const LinearSystem>(std::move(system))) {
    const auto& sys = *system_;
    if (sys.coefficients.size() != sys.rhs.size())
      throw std::invalid_argument("tableau: rhs length differs from row count");
    for (std::size_t c = 0; c < sys.columns.size(); ++c) {
      if (!column_index_.emplace(sys.columns[c], c).second)
        throw std::invalid_argument("tableau: duplicate variable " +
                                    to_string(sys.columns[c]));
    }
    for (const auto& v : initial_basis) {
      auto c = column_of(v);
      if (!c) throw std::invalid_argument("tableau: unknown basis variable");
      lex_order_.push_back(*c);
    }
    std::sort(lex_order_.begin(), lex_order_.end());
    load_and_factor(initial_basis);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!row_is_free(r) && !lex_positive_row(r))
        throw InfeasibleBasis("initial basis is not lexicographically feasible");
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Int& scale() const { return scale_; }
  const Int& entry(std::size_t r, std::size_t c) const { return at(r, c); }
  const Int& rhs(std::size_t r) const { return at(r, cols_); }
  const VariableId& variable(std::size_t c) const { return system_->columns[c]; }
  std::span<const VariableId> variables() const { return system_->columns; }
  std::span<const std::size_t> lex_order() const { return lex_order_; }
  const LinearSystem& system() const { return *system_; }

  std::optional<std::size_t> column_of(const VariableId& v) const {
    auto it = column_index_.find(v);
    if (it == column_index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const VariableId& v) const { return column_of(v).has_value(); }

  bool is_basic(const VariableId& v) const { return row_of(v).has_value(); }
  std::optional<std::size_t> row_of(const VariableId& v) const {
    auto c = column_of(v);
    if (!c || row_of_column_[*c] < 0) return std::nullopt;
    return static_cast<std::size_t>(row_of_column_[*c]);
  }
  const VariableId& basic_in_row(std::size_t r) const {
    return system_->columns[basis_[r]];
  }
  bool is_free(const VariableId& v) const {
    const auto& f = system_->free_variables;
    return std::find(f.begin(), f.end(), v) != f.end();
  }

  std::vector<VariableId> basis() const {
    std::vector<VariableId> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(basic_in_row(r));
    return out;
  }
  std::vector<VariableId> nonbasic() const {
    std::vector<VariableId> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (row_of_column_[c] < 0) out.push_back(system_->columns[c]);
    return out;
  }
  // Basis as a sorted set; equal keys mean equal bases.
  std::vector<VariableId> basis_key() const {
    auto b = basis();
    std::sort(b.begin(), b.end());
    return b;
  }

  Rat value(const VariableId& v) const {
    auto r = row_of(v);
    if (!r) return Rat(0);
    return make_rat(rhs(*r), scale_);
  }

  bool is_feasible() const {
    for (std::size_t r = 0; r < rows_; ++r)
      if (!row_is_free(r) && sgn(rhs(r)) < 0) return false;
    return true;
  }

  // Exchanges `entering` (nonbasic) with `leaving` (basic).
  void pivot(const VariableId& entering, const VariableId& leaving) {
    auto c = column_of(entering);
    if (!c) throw std::invalid_argument("pivot: unknown entering variable");
    if (row_of_column_[*c] >= 0)
      throw std::invalid_argument("pivot: entering variable " +
                                  to_string(entering) + " is basic");
    auto r = row_of(leaving);
    if (!r)
      throw std::invalid_argument("pivot: leaving variable " +
                                  to_string(leaving) + " is not basic");
    pivot_at(*r, *c);
  }

  // Minimum ratio test for `entering`. Rows whose basic variable is free are
  // never candidates. Returns nullopt when no row limits the entering
  // variable (an unbounded direction).
  std::optional<VariableId> find_leaving(
      const VariableId& entering,
      TieBreak tie = TieBreak::kLexicographic) const {
    auto col = column_of(entering);
    if (!col) throw std::invalid_argument("ratio test: unknown variable");
    const std::size_t c = *col;
    std::vector<std::size_t> tied;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (row_is_free(r) || sgn(at(r, c)) <= 0) continue;
      if (tied.empty()) {
        tied.push_back(r);
        continue;
      }
      // rhs_r / a_rc  vs  rhs_t / a_tc, denominators positive.
      const std::size_t t = tied.front();
      int cmp = cmp_ratio(rhs(r), at(r, c), rhs(t), at(t, c));
      if (cmp < 0) {
        tied.assign(1, r);
      } else if (cmp == 0) {
        tied.push_back(r);
      }
    }
    if (tied.empty()) return std::nullopt;
    if (tied.size() == 1) return basic_in_row(tied.front());
    if (tie == TieBreak::kLowestIndex) {
      auto best = *std::min_element(
          tied.begin(), tied.end(),
          [&](std::size_t a, std::size_t b) { return basis_[a] < basis_[b]; });
      return basic_in_row(best);
    }
    return lexico_leaving(tied, entering);
  }

  // Among rows that tie in the minimum ratio test, picks the unique row with
  // the lexicographically smallest vector (T[r][l] / T[r][c]) over the lex
  // order columns l.
  VariableId lexico_leaving(std::span<const std::size_t> tied_rows,
                            const VariableId& entering) const {
    if (tied_rows.empty())
      throw std::invalid_argument("lexico_leaving: no candidate rows");
    auto col = column_of(entering);
    if (!col) throw std::invalid_argument("lexico_leaving: unknown variable");
    const std::size_t c = *col;
    std::vector<std::size_t> cand(tied_rows.begin(), tied_rows.end());
    for (std::size_t r : cand) {
      if (sgn(at(r, c)) <= 0)
        throw std::invalid_argument("lexico_leaving: row not admissible");
    }
    for (std::size_t l : lex_order_) {
      if (cand.size() == 1) break;
      std::vector<std::size_t> next{cand.front()};
      for (std::size_t k = 1; k < cand.size(); ++k) {
        const std::size_t r = cand[k];
        const std::size_t t = next.front();
        int cmp = cmp_ratio(at(r, l), at(r, c), at(t, l), at(t, c));
        if (cmp < 0) {
          next.assign(1, r);
        } else if (cmp == 0) {
          next.push_back(r);
        }
      }
      cand = std::move(next);
    }
    // Rows of B^{-1} are linearly independent, so two rows can only agree on
    // every lex column if the lex basis was not a basis.
    if (cand.size() != 1)
      throw std::logic_error("lexicographic tie could not be resolved");
    return basic_in_row(cand.front());
  }

  // A fresh tableau over the same system with `basis` as its basis and the
  // same lexicographic order. Used to resume paths from a saved basis.
  Tableau with_basis(std::span<const VariableId> basis) const {
    Tableau t(*this);
    t.load_and_factor(basis);
    return t;
  }

 private:
  const Int& at(std::size_t r, std::size_t c) const {
    return entries_[r * (cols_ + 1) + c];
  }
  Int& at(std::size_t r, std::size_t c) {
    return entries_[r * (cols_ + 1) + c];
  }

  bool row_is_free(std::size_t r) const {
    return basis_[r] != kUnassigned && is_free(system_->columns[basis_[r]]);
  }

  bool lex_positive_row(std::size_t r) const {
    int s = sgn(rhs(r));
    if (s != 0) return s > 0;
    for (std::size_t l : lex_order_) {
      s = sgn(at(r, l));
      if (s != 0) return s > 0;
    }
    return false;
  }

  // Compares a/b with c/d for b, d > 0.
  static int cmp_ratio(const Int& a, const Int& b, const Int& c, const Int& d) {
    Int lhs = a * d;
    Int rhs = c * b;
    return cmp(lhs, rhs);
  }

  void load_and_factor(std::span<const VariableId> basis) {
    const auto& sys = *system_;
    rows_ = sys.coefficients.size();
    cols_ = sys.columns.size();
    if (basis.size() != rows_)
      throw SingularBasis("basis has " + std::to_string(basis.size()) +
                          " variables for " + std::to_string(rows_) + " rows");
    entries_.assign(rows_ * (cols_ + 1), Int(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (sys.coefficients[r].size() != cols_)
        throw std::invalid_argument("tableau: ragged coefficient matrix");
      for (std::size_t c = 0; c < cols_; ++c) at(r, c) = sys.coefficients[r][c];
      at(r, cols_) = sys.rhs[r];
    }
    scale_ = 1;
    basis_.assign(rows_, kUnassigned);
    row_of_column_.assign(cols_, -1);
    for (const auto& v : basis) {
      auto c = column_of(v);
      if (!c) throw std::invalid_argument("basis: unknown variable");
      if (row_of_column_[*c] >= 0)
        throw SingularBasis("basis lists " + to_string(v) + " twice");
      std::optional<std::size_t> row;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (basis_[r] == kUnassigned && sgn(at(r, *c)) != 0) {
          row = r;
          break;
        }
      }
      if (!row) throw SingularBasis("basis matrix is singular");
      pivot_at(*row, *c);
    }
    if (!is_feasible())
      throw InfeasibleBasis("basic solution has a negative component");
  }

  void pivot_at(std::size_t r, std::size_t c) {
    const Int p = at(r, c);
    if (p == 0)
      throw ZeroPivotElement("zero pivot element at row " + std::to_string(r) +
                             ", column " + to_string(system_->columns[c]));
    const std::size_t width = cols_ + 1;
    Int f;
    Int tmp;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      f = at(i, c);
      for (std::size_t j = 0; j < width; ++j) {
        Int& e = at(i, j);
        mpz_mul(tmp.get_mpz_t(), p.get_mpz_t(), e.get_mpz_t());
        if (sgn(f) != 0)
          mpz_submul(tmp.get_mpz_t(), f.get_mpz_t(), at(r, j).get_mpz_t());
        if (!mpz_divisible_p(tmp.get_mpz_t(), scale_.get_mpz_t()))
          throw InexactDivision("integer pivot division is not exact");
        mpz_divexact(e.get_mpz_t(), tmp.get_mpz_t(), scale_.get_mpz_t());
      }
    }
    scale_ = p;
    if (sgn(scale_) < 0) {
      for (auto& e : entries_) e = -e;
      scale_ = -scale_;
    }
    if (basis_[r] != kUnassigned) row_of_column_[basis_[r]] = -1;
    basis_[r] = c;
    row_of_column_[c] = static_cast<std::ptrdiff_t>(r);
  }

  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  std::shared_ptr<const LinearSystem> system_;
  std::map<VariableId, std::size_t> column_index_;
  std::vector<std::size_t> lex_order_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;  // rows x (cols + 1), rhs last
  Int scale_ = 1;
  std::vector<std::size_t> basis_;               // row -> column
  std::vector<std::ptrdiff_t> row_of_column_;    // column -> row or -1
};

// Value-returning pivot.
inline Tableau pivot(Tableau t, const VariableId& entering,
                     const VariableId& leaving) {
  t.pivot(entering, leaving);
  return t;
}

inline VariableId min_ratio_leaving(const Tableau& t, const VariableId& entering,
                                    TieBreak tie = TieBreak::kLexicographic) {
  auto leaving = t.find_leaving(entering, tie);
  if (!leaving)
    throw Unbounded("no row limits " + to_string(entering) +
                    "; the entering direction is a ray");
  return *leaving;
}

inline VariableId lexico_leaving(const Tableau& t,
                                 std::span<const std::size_t> tied_rows,
                                 const VariableId& entering) {
  return t.lexico_leaving(tied_rows, entering);
}

// Every variable of the tableau: basic ones at rhs/scale, nonbasic ones at 0.
inline std::map<VariableId, Rat> basic_solution(const Tableau& t) {
  std::map<VariableId, Rat> out;
  for (const auto& v : t.variables()) out.emplace(v, t.value(v));
  return out;
}

inline std::size_t hash_basis(std::span<const VariableId> sorted_basis) {
  std::size_t h = 14695981039346656037ull;
  for (const auto& v : sorted_basis) {
    for (std::size_t part : {static_cast<std::size_t>(v.kind),
                             static_cast<std::size_t>(v.agent), v.index}) {
      h ^= part + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
  }
  return h;
}

}  // namespace bimatrix
