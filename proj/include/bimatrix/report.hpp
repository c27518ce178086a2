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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "bimatrix/game.hpp"
#include "bimatrix/metrics.hpp"

namespace bimatrix {

enum class Outcome {
  kExact,    // exact Nash equilibrium
  kApprox,   // search ended without an equilibrium; best profile reported
  kTimeout,  // deadline reached; best profile reported
};

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kExact:
      return "exact";
    case Outcome::kApprox:
      return "approx";
    case Outcome::kTimeout:
      return "timeout";
  }
  return "?";
}

struct SolveReport {
  std::string algorithm;
  Outcome outcome = Outcome::kApprox;
  StrategyProfile profile;
  SolutionMetrics metrics;
  std::uint64_t steps = 0;     // pivots
  std::uint64_t restarts = 0;
  std::uint64_t lp_solves = 0;
  std::optional<std::uint64_t> final_cutoff;
};

// Optional wall-clock budget. A default-constructed deadline never expires.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after(std::chrono::milliseconds budget) {
    Deadline d;
    d.at_ = Clock::now() + budget;
    return d;
  }
  static Deadline after_ms(std::optional<std::int64_t> ms) {
    if (!ms) return Deadline();
    return after(std::chrono::milliseconds(*ms));
  }

  bool is_set() const { return at_.has_value(); }
  bool expired() const { return at_ && Clock::now() >= *at_; }

 private:
  std::optional<Clock::time_point> at_;
};

// Keeps the lowest-epsilon profile seen so far.
class BestProfile {
 public:
  // Returns true if `p` improved on the incumbent.
  bool offer(const BimatrixGame& g, const StrategyProfile& p) {
    Rat e = epsilon(g, p);
    if (profile_ && !(e < eps_)) return false;
    profile_ = p;
    eps_ = e;
    return true;
  }
  bool offer(const StrategyProfile& p, const Rat& eps) {
    if (profile_ && !(eps < eps_)) return false;
    profile_ = p;
    eps_ = eps;
    return true;
  }

  bool has_value() const { return profile_.has_value(); }
  const StrategyProfile& profile() const { return *profile_; }
  const Rat& eps() const { return eps_; }

 private:
  std::optional<StrategyProfile> profile_;
  Rat eps_;
};

// Fills outcome, profile and metrics of a report from a final profile.
inline void finish_report(SolveReport& report, const BimatrixGame& g,
                          const StrategyProfile& p, Outcome outcome) {
  report.profile = p;
  report.metrics = evaluate(g, p);
  report.outcome = outcome;
}

}  // namespace bimatrix
