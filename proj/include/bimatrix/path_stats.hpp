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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bimatrix/rational.hpp"

namespace bimatrix {

// Summary of the path-length distribution of a game, one length per label.
struct PathStats {
  std::vector<std::uint64_t> lengths;  // in label order
  Rat mean;
  Rat median;
  Rat q1;
  Rat q3;
  Rat min;
  Rat max;
  // mu4 / mu2^2 with population central moments; nullopt when mu2 = 0.
  std::optional<Rat> kurtosis;
};

namespace detail {

// Quantile by linear interpolation between order statistics at position
// (n - 1) * q (the "type 7" rule), exact.
inline Rat quantile(const std::vector<Rat>& sorted, const Rat& q) {
  const Rat pos = Rat(static_cast<long>(sorted.size() - 1)) * q;
  Int lo_index = pos.get_num() / pos.get_den();  // floor, pos >= 0
  const std::size_t lo = lo_index.get_ui();
  const Rat frac = pos - Rat(lo_index);
  if (lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

inline PathStats compute_path_stats(std::vector<std::uint64_t> lengths) {
  if (lengths.empty()) throw std::invalid_argument("no path lengths");
  PathStats s;
  s.lengths = lengths;
  std::vector<Rat> sorted;
  sorted.reserve(lengths.size());
  for (auto l : lengths) sorted.emplace_back(Int(static_cast<unsigned long>(l)));
  std::sort(sorted.begin(), sorted.end());

  const Rat n(static_cast<long>(sorted.size()));
  Rat sum = 0;
  for (const auto& x : sorted) sum += x;
  s.mean = sum / n;
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = detail::quantile(sorted, make_rat(1, 2));
  s.q1 = detail::quantile(sorted, make_rat(1, 4));
  s.q3 = detail::quantile(sorted, make_rat(3, 4));

  Rat mu2 = 0;
  Rat mu4 = 0;
  for (const auto& x : sorted) {
    const Rat d = x - s.mean;
    const Rat d2 = d * d;
    mu2 += d2;
    mu4 += d2 * d2;
  }
  mu2 /= n;
  mu4 /= n;
  if (sgn(mu2) != 0) s.kurtosis = mu4 / (mu2 * mu2);
  return s;
}

}  // namespace bimatrix
