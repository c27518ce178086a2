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

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bimatrix/errors.hpp"
#include "bimatrix/rational.hpp"

namespace bimatrix {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rat>;

// Two-player normal-form game. Both payoff matrices are m1 x m2 with rows
// indexed by agent 1's action: u2(j, k) is agent 2's payoff when agent 1
// plays j and agent 2 plays k.
class BimatrixGame {
 public:
  BimatrixGame(RatMatrix u1, RatMatrix u2, bool normalized = false)
      : u1_(std::move(u1)), u2_(std::move(u2)), normalized_(normalized) {
    if (u1_.rows() == 0 || u1_.cols() == 0)
      throw DimensionMismatch("game needs at least one action per agent");
    if (u1_.rows() != u2_.rows() || u1_.cols() != u2_.cols())
      throw DimensionMismatch("payoff matrices differ in shape");
  }

  std::size_t m1() const { return u1_.rows(); }
  std::size_t m2() const { return u1_.cols(); }
  std::size_t actions(int agent) const { return agent == 1 ? m1() : m2(); }
  const RatMatrix& u1() const { return u1_; }
  const RatMatrix& u2() const { return u2_; }
  const RatMatrix& payoff(int agent) const { return agent == 1 ? u1_ : u2_; }
  bool normalized() const { return normalized_; }

  bool operator==(const BimatrixGame& other) const {
    return u1_ == other.u1_ && u2_ == other.u2_;
  }

 private:
  RatMatrix u1_;
  RatMatrix u2_;
  bool normalized_;
};

// Probability vector: nonnegative entries summing to exactly one.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  explicit MixedStrategy(std::vector<Rat> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw InvalidProfile("strategy over zero actions");
    Rat total = 0;
    for (const auto& p : probs_) {
      if (sgn(p) < 0) throw InvalidProfile("negative probability");
      total += p;
    }
    if (total != 1) throw InvalidProfile("probabilities sum to " + to_string(total));
  }

  static MixedStrategy pure(std::size_t n, std::size_t action) {
    std::vector<Rat> p(n, Rat(0));
    p.at(action) = 1;
    return MixedStrategy(std::move(p));
  }
  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy(std::vector<Rat>(n, make_rat(1, static_cast<long>(n))));
  }
  // Rescales nonnegative weights with a positive sum onto the simplex.
  static MixedStrategy from_weights(const std::vector<Rat>& weights) {
    Rat total = 0;
    for (const auto& w : weights) total += w;
    if (sgn(total) <= 0) throw InvalidProfile("weights sum to zero");
    std::vector<Rat> p;
    p.reserve(weights.size());
    for (const auto& w : weights) p.push_back(w / total);
    return MixedStrategy(std::move(p));
  }

  std::size_t size() const { return probs_.size(); }
  const Rat& operator[](std::size_t a) const { return probs_[a]; }
  const std::vector<Rat>& probs() const { return probs_; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t a = 0; a < probs_.size(); ++a)
      if (sgn(probs_[a]) > 0) s.push_back(a);
    return s;
  }

  bool operator==(const MixedStrategy&) const = default;
  auto operator<=>(const MixedStrategy& other) const {
    if (probs_.size() != other.probs_.size())
      return probs_.size() <=> other.probs_.size();
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      int c = cmp(probs_[i], other.probs_[i]);
      if (c != 0) return c <=> 0;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::vector<Rat> probs_;
};

struct StrategyProfile {
  MixedStrategy x1;
  MixedStrategy x2;

  const MixedStrategy& of(int agent) const { return agent == 1 ? x1 : x2; }
  bool operator==(const StrategyProfile&) const = default;
  auto operator<=>(const StrategyProfile& other) const {
    if (auto c = x1 <=> other.x1; c != 0) return c;
    return x2 <=> other.x2;
  }
};

inline std::pair<Rat, Rat> min_max(const RatMatrix& m) {
  Rat lo = m.data().front();
  Rat hi = lo;
  for (const auto& e : m.data()) {
    if (e < lo) lo = e;
    if (e > hi) hi = e;
  }
  return {lo, hi};
}

namespace detail {

inline RatMatrix normalize_matrix(const RatMatrix& m) {
  auto [lo, hi] = min_max(m);
  RatMatrix out(m.rows(), m.cols(), Rat(0));
  if (lo == hi) return out;  // constant payoffs map to all zeros
  const Rat span = hi - lo;
  for (std::size_t i = 0; i < m.data().size(); ++i)
    out.data()[i] = (m.data()[i] - lo) / span;
  return out;
}

inline bool matrix_is_normalized(const RatMatrix& m) {
  auto [lo, hi] = min_max(m);
  return (lo == 0 && hi == 1) || (lo == 0 && hi == 0);
}

}  // namespace detail

// True when every payoff matrix spans exactly [0, 1] (or is all zeros).
inline bool is_normalized(const BimatrixGame& g) {
  return detail::matrix_is_normalized(g.u1()) &&
         detail::matrix_is_normalized(g.u2());
}

// Affinely rescales each payoff matrix onto [0, 1]. A constant matrix maps to
// all zeros. Equilibria are unchanged.
inline BimatrixGame normalize(const BimatrixGame& g) {
  return BimatrixGame(detail::normalize_matrix(g.u1()),
                      detail::normalize_matrix(g.u2()), true);
}

// Adds 1 - min to every payoff of an agent whose minimum payoff is <= 0, so
// all payoffs are >= 1. Agents with strictly positive payoffs are untouched.
inline BimatrixGame positive_shift(const BimatrixGame& g) {
  auto shift = [](const RatMatrix& m) {
    auto [lo, hi] = min_max(m);
    if (sgn(lo) > 0) return m;
    RatMatrix out = m;
    const Rat delta = Rat(1) - lo;
    for (auto& e : out.data()) e += delta;
    return out;
  };
  return BimatrixGame(shift(g.u1()), shift(g.u2()), false);
}

inline bool strictly_positive(const BimatrixGame& g) {
  return sgn(min_max(g.u1()).first) > 0 && sgn(min_max(g.u2()).first) > 0;
}

// Smallest positive integer D such that D * m is integral.
inline Int common_denominator(const RatMatrix& m) {
  Int d = 1;
  for (const auto& e : m.data()) d = lcm(d, e.get_den());
  return d;
}

// m scaled by its common denominator, as integers.
inline Matrix<Int> integer_scaled(const RatMatrix& m) {
  const Int d = common_denominator(m);
  Matrix<Int> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i) {
    Rat scaled = m.data()[i] * Rat(d);
    out.data()[i] = scaled.get_num();
  }
  return out;
}

// Matching pennies: agent 1 wants to match, agent 2 to mismatch.
inline BimatrixGame matching_pennies() {
  return BimatrixGame(RatMatrix{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
                      RatMatrix{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, true);
}

}  // namespace bimatrix
