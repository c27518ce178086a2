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

// Lemke-Howson path following over the two best-response polytopes
//
//   P1 = { x1 >= 0 : U2^T x1 <= 1 }   (slacks s2, one per action of agent 2)
//   P2 = { x2 >= 0 : U1 x2 <= 1 }     (slacks s1, one per action of agent 1)
//
// x_{i,a} and s_{i,a} are complementary. A label names the action whose
// x variable enters first from the artificial vertex (0, 0); labels are
// 1-based, 1..m1 for agent 1 and m1+1..m1+m2 for agent 2.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bimatrix/errors.hpp"
#include "bimatrix/game.hpp"
#include "bimatrix/metrics.hpp"
#include "bimatrix/path_stats.hpp"
#include "bimatrix/random.hpp"
#include "bimatrix/report.hpp"
#include "bimatrix/tableau.hpp"

namespace bimatrix {

class LHSystem {
 public:
  // Payoffs are shifted to be strictly positive and scaled to integers; both
  // transformations preserve the equilibria.
  explicit LHSystem(const BimatrixGame& g) : m1_(g.m1()), m2_(g.m2()) {
    const BimatrixGame pos = positive_shift(g);
    const Matrix<Int> a1 = integer_scaled(pos.u1());
    const Matrix<Int> a2 = integer_scaled(pos.u2());
    tableau1_ = build(2, m2_, 1, m1_, [&](std::size_t k, std::size_t j) {
      return a2(j, k);
    });
    tableau2_ = build(1, m1_, 2, m2_, [&](std::size_t j, std::size_t k) {
      return a1(j, k);
    });
  }

  std::size_t m1() const { return m1_; }
  std::size_t m2() const { return m2_; }
  std::size_t label_count() const { return m1_ + m2_; }

  const Tableau& tableau1() const { return *tableau1_; }
  const Tableau& tableau2() const { return *tableau2_; }

  // x1 and s2 live in the P1 tableau; x2 and s1 in the P2 tableau.
  Tableau& tableau_for(const VariableId& v) {
    return owner_agent(v) == 1 ? *tableau1_ : *tableau2_;
  }

  VariableId label_variable(std::size_t label) const {
    if (label < 1 || label > label_count())
      throw std::invalid_argument("label out of range");
    return label <= m1_ ? VariableId::x(1, label - 1)
                        : VariableId::x(2, label - 1 - m1_);
  }

  static VariableId complement(const VariableId& v) {
    if (v.kind == VarKind::kPrimalX) return VariableId::s(v.agent, v.index);
    if (v.kind == VarKind::kSlackS) return VariableId::x(v.agent, v.index);
    throw std::invalid_argument("variable has no complement in the LH system");
  }

  // Unnormalized vertex of P_agent.
  std::vector<Rat> vertex(int agent) const {
    const Tableau& t = agent == 1 ? *tableau1_ : *tableau2_;
    const std::size_t n = agent == 1 ? m1_ : m2_;
    std::vector<Rat> out;
    out.reserve(n);
    for (std::size_t a = 0; a < n; ++a) out.push_back(t.value(VariableId::x(agent, a)));
    return out;
  }

  // The vertex pair scaled onto the simplices; nullopt while either vertex
  // is the origin.
  std::optional<StrategyProfile> profile() const {
    auto w1 = vertex(1);
    auto w2 = vertex(2);
    auto nonzero = [](const std::vector<Rat>& w) {
      for (const auto& e : w)
        if (sgn(e) != 0) return true;
      return false;
    };
    if (!nonzero(w1) || !nonzero(w2)) return std::nullopt;
    return StrategyProfile{MixedStrategy::from_weights(w1),
                           MixedStrategy::from_weights(w2)};
  }

  // True when every complementary pair has exactly one basic member.
  bool completely_complementary() const {
    for (int agent : {1, 2}) {
      const std::size_t n = agent == 1 ? m1_ : m2_;
      for (std::size_t a = 0; a < n; ++a) {
        const auto x = VariableId::x(agent, a);
        const auto s = VariableId::s(agent, a);
        const bool xb = tableau_of(x).is_basic(x);
        const bool sb = tableau_of(s).is_basic(s);
        if (xb == sb) return false;
      }
    }
    return true;
  }

  void restore(std::span<const VariableId> basis1,
               std::span<const VariableId> basis2) {
    tableau1_ = tableau1_->with_basis(basis1);
    tableau2_ = tableau2_->with_basis(basis2);
  }

 private:
  int owner_agent(const VariableId& v) const {
    if (v.kind == VarKind::kPrimalX) return v.agent == 1 ? 1 : 2;
    if (v.kind == VarKind::kSlackS) return v.agent == 2 ? 1 : 2;
    throw std::invalid_argument("variable is not part of the LH system");
  }
  const Tableau& tableau_of(const VariableId& v) const {
    return owner_agent(v) == 1 ? *tableau1_ : *tableau2_;
  }

  // Rows indexed by the slack agent's actions, columns: slacks then x's.
  template <typename Coef>
  static Tableau build(int slack_agent, std::size_t slack_count, int x_agent,
                       std::size_t x_count, Coef coef) {
    LinearSystem sys;
    std::vector<VariableId> basis;
    for (std::size_t r = 0; r < slack_count; ++r) {
      sys.columns.push_back(VariableId::s(slack_agent, r));
      basis.push_back(VariableId::s(slack_agent, r));
    }
    for (std::size_t c = 0; c < x_count; ++c)
      sys.columns.push_back(VariableId::x(x_agent, c));
    for (std::size_t r = 0; r < slack_count; ++r) {
      std::vector<Int> row(slack_count + x_count, Int(0));
      row[r] = 1;
      for (std::size_t c = 0; c < x_count; ++c) row[slack_count + c] = coef(r, c);
      sys.coefficients.push_back(std::move(row));
      sys.rhs.emplace_back(1);
    }
    return Tableau(std::move(sys), basis);
  }

  std::size_t m1_;
  std::size_t m2_;
  std::optional<Tableau> tableau1_;
  std::optional<Tableau> tableau2_;
};

// Basis membership of an unfinished path, enough to resume it exactly.
struct LHSavedPath {
  std::size_t label = 0;
  std::uint64_t steps = 0;
  std::vector<VariableId> basis1;
  std::vector<VariableId> basis2;
  VariableId entering;
};

struct LHPathRecord {
  enum class Status { kEquilibrium, kCutoffReached, kInterrupted };

  std::size_t initial_label = 0;
  std::uint64_t steps = 0;  // pivots since the artificial vertex
  Status status = Status::kCutoffReached;
  std::optional<StrategyProfile> equilibrium;
  std::optional<LHSavedPath> saved;  // set unless an equilibrium was reached

  bool found_equilibrium() const { return status == Status::kEquilibrium; }
};

struct LHOptions {
  std::optional<std::uint64_t> step_limit;  // pivots allowed in this call
  TieBreak tie_break = TieBreak::kLexicographic;
  Deadline deadline;
  // Called after every pivot with the system and the path's step count.
  std::function<void(const LHSystem&, std::uint64_t)> on_step;
};

// Follows the LH path of `label` (or resumes a saved one) until a completely
// complementary basis or the step limit. Works on positive_shift(g).
inline LHPathRecord lh_solve(const BimatrixGame& g, std::size_t label,
                             const LHOptions& options = {},
                             const LHSavedPath* resume = nullptr) {
  LHSystem sys(g);
  const VariableId start = sys.label_variable(label);
  const VariableId start_complement = LHSystem::complement(start);
  VariableId entering = start;
  LHPathRecord record;
  record.initial_label = label;
  if (resume) {
    if (resume->label != label)
      throw std::invalid_argument("saved path belongs to another label");
    sys.restore(resume->basis1, resume->basis2);
    entering = resume->entering;
    record.steps = resume->steps;
  }

  auto save = [&](LHPathRecord::Status status) {
    record.status = status;
    record.saved = LHSavedPath{label, record.steps, sys.tableau1().basis(),
                               sys.tableau2().basis(), entering};
    return record;
  };

  std::uint64_t done_here = 0;
  for (;;) {
    if (options.step_limit && done_here >= *options.step_limit)
      return save(LHPathRecord::Status::kCutoffReached);
    if (options.deadline.expired())
      return save(LHPathRecord::Status::kInterrupted);

    Tableau& t = sys.tableau_for(entering);
    auto leaving = t.find_leaving(entering, options.tie_break);
    if (!leaving)
      throw RayTermination("LH path left the polytope; payoffs not positive?");
    t.pivot(entering, *leaving);
    ++record.steps;
    ++done_here;
    if (options.on_step) options.on_step(sys, record.steps);

    if (*leaving == start || *leaving == start_complement) {
      auto p = sys.profile();
      if (!p) throw std::logic_error("LH terminated at the artificial vertex");
      record.status = LHPathRecord::Status::kEquilibrium;
      record.equilibrium = std::move(*p);
      return record;
    }
    entering = LHSystem::complement(*leaving);
  }
}

struct RestartConfig {
  std::uint64_t cutoff0 = 20;
  std::uint64_t seed = 0;
  Deadline deadline;
  // Evaluate epsilon of every visited vertex pair and keep the best one.
  // Needed for a meaningful result on deadline; off by default otherwise.
  std::optional<bool> track_best;
};

struct RestartTrace {
  // (total pivots, best epsilon) each time the incumbent improved.
  std::vector<std::pair<std::uint64_t, Rat>> improvements;
  // Label followed by each attempt, in order.
  std::vector<std::size_t> labels;
};

// Lemke-Howson with random restarts and an iterative-deepening cutoff.
// A path abandoned at the cutoff is resumed from its saved basis when drawn
// again; once every label has been followed to the cutoff, the cutoff grows
// by cutoff0.
inline SolveReport rr_lh(const BimatrixGame& g, const RestartConfig& cfg,
                         RestartTrace* trace = nullptr) {
  if (cfg.cutoff0 < 1) throw std::invalid_argument("cutoff0 must be >= 1");
  const std::size_t labels = g.m1() + g.m2();
  const bool track = cfg.track_best.value_or(cfg.deadline.is_set());

  std::vector<std::uint64_t> depth(labels, 0);
  std::vector<std::optional<LHSavedPath>> saved(labels);
  std::uint64_t cutoff = cfg.cutoff0;
  Rng rng(cfg.seed);
  BestProfile best;

  SolveReport report;
  report.algorithm = "rrlh";

  auto pick = [&]() {
    std::vector<std::size_t> open;
    for (std::size_t l = 0; l < labels; ++l)
      if (depth[l] < cutoff) open.push_back(l);
    return open[rng.below(open.size())];
  };

  std::size_t current = pick();
  for (;;) {
    LHOptions opt;
    opt.step_limit = cutoff - depth[current];
    opt.deadline = cfg.deadline;
    if (track) {
      opt.on_step = [&](const LHSystem& sys, std::uint64_t) {
        ++report.steps;
        if (auto p = sys.profile(); p && best.offer(g, *p) && trace)
          trace->improvements.emplace_back(report.steps, best.eps());
      };
    }
    if (trace) trace->labels.push_back(current + 1);
    const std::uint64_t before = depth[current];
    LHPathRecord rec = lh_solve(g, current + 1, opt,
                                saved[current] ? &*saved[current] : nullptr);
    if (!track) report.steps += rec.steps - before;
    depth[current] = rec.steps;

    if (rec.found_equilibrium()) {
      report.final_cutoff = cutoff;
      finish_report(report, g, *rec.equilibrium, Outcome::kExact);
      return report;
    }
    saved[current] = rec.saved;
    if (rec.status == LHPathRecord::Status::kInterrupted) {
      report.final_cutoff = cutoff;
      StrategyProfile fallback =
          best.has_value() ? best.profile()
                           : StrategyProfile{MixedStrategy::uniform(g.m1()),
                                             MixedStrategy::uniform(g.m2())};
      finish_report(report, g, fallback, Outcome::kTimeout);
      return report;
    }
    ++report.restarts;
    bool all_reached = true;
    for (auto d : depth) all_reached = all_reached && d >= cutoff;
    if (all_reached) cutoff += cfg.cutoff0;
    current = pick();
  }
}

// Follows every label's path to the end and summarizes the lengths.
inline PathStats enumerate_paths(const BimatrixGame& g,
                                 std::vector<LHPathRecord>* records = nullptr) {
  std::vector<std::uint64_t> lengths;
  for (std::size_t label = 1; label <= g.m1() + g.m2(); ++label) {
    LHPathRecord rec = lh_solve(g, label);
    lengths.push_back(rec.steps);
    if (records) records->push_back(std::move(rec));
  }
  return compute_path_stats(std::move(lengths));
}

}  // namespace bimatrix
