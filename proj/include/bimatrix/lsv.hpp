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

// Local search over the vertices of one agent's best-response polytope.
// The objective of a vertex is the smallest epsilon any opponent strategy
// achieves against it, computed by an exact simplex.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "bimatrix/errors.hpp"
#include "bimatrix/game.hpp"
#include "bimatrix/lh.hpp"
#include "bimatrix/metrics.hpp"
#include "bimatrix/random.hpp"
#include "bimatrix/report.hpp"
#include "bimatrix/tableau.hpp"

namespace bimatrix {

struct FEval {
  Rat value;
  MixedStrategy witness;  // opponent strategy attaining `value`
  std::uint64_t pivots = 0;
};

// Minimizes epsilon over opponent strategies y given agent i's strategy
// xbar. With A agent i's payoffs oriented (own action, opponent action), B
// the opponent's payoffs in the same orientation and c = xbar^T B, the LP
// rows are
//
//   (A_k - xbar^T A) y - eps + t_k = 0     for each action k of agent i
//   -c y - eps + u_l = -c_l                for each action l of the opponent
//   sum y = 1
//
// with y, t, u >= 0. eps is free; the rows already force it to be >= 0.
inline FEval eval_f(const BimatrixGame& g, int agent, const MixedStrategy& xbar) {
  if (agent != 1 && agent != 2) throw std::invalid_argument("agent must be 1 or 2");
  if (xbar.size() != g.actions(agent))
    throw DimensionMismatch("strategy does not match the searched agent");
  const int opp = 3 - agent;
  const std::size_t mi = g.actions(agent);
  const std::size_t mo = g.actions(opp);
  auto a = [&](std::size_t k, std::size_t l) -> const Rat& {
    return agent == 1 ? g.u1()(k, l) : g.u2()(l, k);
  };
  auto b = [&](std::size_t k, std::size_t l) -> const Rat& {
    return agent == 1 ? g.u2()(k, l) : g.u1()(l, k);
  };
  std::vector<Rat> xa(mo, Rat(0));  // xbar^T A
  std::vector<Rat> c(mo, Rat(0));   // xbar^T B
  for (std::size_t k = 0; k < mi; ++k) {
    if (sgn(xbar[k]) == 0) continue;
    for (std::size_t l = 0; l < mo; ++l) {
      xa[l] += xbar[k] * a(k, l);
      c[l] += xbar[k] * b(k, l);
    }
  }

  LinearSystem sys;
  for (std::size_t l = 0; l < mo; ++l) sys.columns.push_back(VariableId::x(opp, l));
  sys.columns.push_back(VariableId::epsilon());
  for (std::size_t k = 0; k < mi; ++k) sys.columns.push_back(VariableId::s(agent, k));
  for (std::size_t l = 0; l < mo; ++l) sys.columns.push_back(VariableId::w(opp, l));
  sys.free_variables = {VariableId::epsilon()};
  const std::size_t n = sys.columns.size();
  const std::size_t eps_at = mo;
  const std::size_t t_at = mo + 1;
  const std::size_t u_at = mo + 1 + mi;

  auto add_row = [&](std::vector<Rat> row, const Rat& rhs) {
    Int den = rhs.get_den();
    for (const auto& e : row) den = lcm(den, e.get_den());
    std::vector<Int> ints;
    ints.reserve(n);
    for (const auto& e : row) ints.push_back(Rat(e * Rat(den)).get_num());
    sys.coefficients.push_back(std::move(ints));
    sys.rhs.push_back(Rat(rhs * Rat(den)).get_num());
  };
  for (std::size_t k = 0; k < mi; ++k) {
    std::vector<Rat> row(n, Rat(0));
    for (std::size_t l = 0; l < mo; ++l) row[l] = a(k, l) - xa[l];
    row[eps_at] = -1;
    row[t_at + k] = 1;
    add_row(std::move(row), Rat(0));
  }
  for (std::size_t l = 0; l < mo; ++l) {
    std::vector<Rat> row(n, Rat(0));
    for (std::size_t q = 0; q < mo; ++q) row[q] = -c[q];
    row[eps_at] = -1;
    row[u_at + l] = 1;
    add_row(std::move(row), -c[l]);
  }
  {
    std::vector<Rat> row(n, Rat(0));
    for (std::size_t l = 0; l < mo; ++l) row[l] = 1;
    add_row(std::move(row), Rat(1));
  }

  // Start from the pure opponent strategy with the smallest epsilon, with
  // the slack of its binding row nonbasic.
  Rat cmax = c[0];
  for (const auto& e : c)
    if (e > cmax) cmax = e;
  std::size_t best_l = 0;
  std::size_t tight_col = 0;
  Rat best_eps;
  for (std::size_t l = 0; l < mo; ++l) {
    Rat eps = cmax - c[l];
    std::size_t col = u_at;
    for (std::size_t q = 0; q < mo; ++q)
      if (c[q] == cmax) {
        col = u_at + q;
        break;
      }
    for (std::size_t k = 0; k < mi; ++k) {
      Rat loss = a(k, l) - xa[l];
      if (loss > eps) {
        eps = loss;
        col = t_at + k;
      }
    }
    if (l == 0 || eps < best_eps) {
      best_eps = eps;
      best_l = l;
      tight_col = col;
    }
  }
  std::vector<VariableId> basis{VariableId::x(opp, best_l), VariableId::epsilon()};
  for (std::size_t col = t_at; col < n; ++col)
    if (col != tight_col) basis.push_back(sys.columns[col]);

  Tableau t(std::move(sys), basis);
  FEval out;
  const std::size_t eps_row = *t.row_of(VariableId::epsilon());
  for (;;) {
    if (sgn(t.rhs(eps_row)) == 0) break;
    // Dantzig rule: eps decreases along nonbasic columns with a positive
    // entry in its row.
    std::optional<std::size_t> enter;
    for (std::size_t col = 0; col < t.cols(); ++col) {
      if (t.is_basic(t.variable(col))) continue;
      if (sgn(t.entry(eps_row, col)) <= 0) continue;
      if (!enter || t.entry(eps_row, col) > t.entry(eps_row, *enter)) enter = col;
    }
    if (!enter) break;
    const VariableId entering = t.variable(*enter);
    auto leaving = t.find_leaving(entering);
    if (!leaving) throw std::logic_error("epsilon LP is unbounded");
    t.pivot(entering, *leaving);
    ++out.pivots;
  }
  out.value = t.value(VariableId::epsilon());
  std::vector<Rat> y;
  y.reserve(mo);
  for (std::size_t l = 0; l < mo; ++l) y.push_back(t.value(VariableId::x(opp, l)));
  out.witness = MixedStrategy(std::move(y));
  return out;
}

// A basis of the tableau U_{-i} x_i + s = 1 over the positive-shifted game.
struct VertexSolution {
  int agent = 1;
  std::optional<Tableau> tableau;

  std::vector<Rat> vertex() const {
    std::vector<Rat> out;
    const std::size_t n = tableau->cols() - tableau->rows();
    for (std::size_t a = 0; a < n; ++a) out.push_back(tableau->value(VariableId::x(agent, a)));
    return out;
  }
  bool is_artificial() const {
    for (const auto& v : tableau->basis())
      if (v.kind == VarKind::kPrimalX) {
        if (sgn(tableau->value(v)) != 0) return false;
      }
    return true;
  }
  // nullopt at the origin.
  std::optional<MixedStrategy> strategy() const {
    if (is_artificial()) return std::nullopt;
    return MixedStrategy::from_weights(vertex());
  }
  std::vector<VariableId> basis_key() const { return tableau->basis_key(); }
};

inline VertexSolution artificial_vertex(const BimatrixGame& g, int agent) {
  LHSystem sys(g);
  return VertexSolution{agent, agent == 1 ? sys.tableau1() : sys.tableau2()};
}

// The adjacent basis reached by `entering` (nonbasic) and the ratio test.
inline VertexSolution neighbor(const VertexSolution& v, const VariableId& entering) {
  VertexSolution out = v;
  auto leaving = out.tableau->find_leaving(entering);
  if (!leaving) throw Unbounded("best-response polytope is unbounded");
  out.tableau->pivot(entering, *leaving);
  return out;
}

enum class Heuristic { kBI, kFI, kFIR };

inline const char* to_string(Heuristic h) {
  switch (h) {
    case Heuristic::kBI:
      return "BI";
    case Heuristic::kFI:
      return "FI";
    case Heuristic::kFIR:
      return "FIR";
  }
  return "?";
}

// All neighbors, one per nonbasic variable. Fixed column order for BI and FI;
// for FIR a random order truncated to max_n.
inline std::vector<VertexSolution> neighbors(
    const VertexSolution& v, Heuristic h = Heuristic::kFI, Rng* rng = nullptr,
    std::optional<std::size_t> max_n = std::nullopt) {
  std::vector<VariableId> entering = v.tableau->nonbasic();
  if (h == Heuristic::kFIR) {
    if (!rng) throw std::invalid_argument("FIR neighbors need a random stream");
    rng->shuffle(entering);
    if (max_n && entering.size() > *max_n) entering.resize(*max_n);
  }
  std::vector<VertexSolution> out;
  out.reserve(entering.size());
  for (const auto& e : entering) out.push_back(neighbor(v, e));
  return out;
}

// A random walk of `steps` random pivots from the origin; by default
// `steps` is uniform in [1, 2 m_{-i}]. Bases in `tabu` and the origin are
// redrawn, up to `max_tries` walks.
inline VertexSolution random_initial(const BimatrixGame& g, int agent, Rng& rng,
                                     std::optional<std::size_t> steps = std::nullopt,
                                     const std::set<std::vector<VariableId>>* tabu = nullptr,
                                     std::size_t max_tries = 64) {
  const VertexSolution origin = artificial_vertex(g, agent);
  if (steps && *steps == 0) return origin;
  const std::size_t opp_actions = g.actions(3 - agent);
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    VertexSolution v = origin;
    const std::size_t len = steps ? *steps : rng.between(1, 2 * opp_actions);
    for (std::size_t s = 0; s < len; ++s) {
      auto candidates = v.tableau->nonbasic();
      v = neighbor(v, candidates[rng.below(candidates.size())]);
    }
    if (v.is_artificial()) continue;
    if (tabu && tabu->contains(v.basis_key())) continue;
    return v;
  }
  throw TabuExhausted("no unvisited initial vertex found");
}

struct LSVConfig {
  Heuristic heuristic = Heuristic::kFIR;
  std::optional<std::uint64_t> cutoff;  // default 2 m^2, m = max(m1, m2)
  std::optional<std::uint64_t> max_n;   // default max(1, m^2 / 2)
  std::uint64_t seed = 0;
  Deadline deadline;
  std::optional<std::uint64_t> max_restarts;
  std::optional<std::size_t> walk_steps;  // fixed initial walk length
};

struct LSVTrace {
  // f along each descent, one vector per restart.
  std::vector<std::vector<Rat>> descents;
};

inline int lsv_searched_agent(const BimatrixGame& g) { return g.m2() < g.m1() ? 2 : 1; }

inline SolveReport ls_v(const BimatrixGame& g, const LSVConfig& cfg = {},
                        LSVTrace* trace = nullptr) {
  const int agent = lsv_searched_agent(g);
  const std::uint64_t m = std::max(g.m1(), g.m2());
  const std::uint64_t cutoff = cfg.cutoff.value_or(2 * m * m);
  const std::uint64_t max_n = cfg.max_n.value_or(std::max<std::uint64_t>(1, m * m / 2));
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  if (cfg.heuristic == Heuristic::kFIR && max_n < 1)
    throw std::invalid_argument("max_n must be >= 1");
  const bool use_tabu = cfg.heuristic != Heuristic::kFIR;

  SolveReport report;
  report.algorithm = "lsv";
  BestProfile best;
  std::set<std::vector<VariableId>> tabu;

  auto profile_of = [&](const MixedStrategy& mine, const MixedStrategy& theirs) {
    return agent == 1 ? StrategyProfile{mine, theirs} : StrategyProfile{theirs, mine};
  };
  auto evaluate_vertex = [&](const VertexSolution& v) -> std::optional<FEval> {
    auto x = v.strategy();
    if (!x) return std::nullopt;
    FEval f = eval_f(g, agent, *x);
    ++report.lp_solves;
    best.offer(profile_of(*x, f.witness), f.value);
    return f;
  };
  auto finish = [&](Outcome outcome) {
    if (best.has_value()) {
      finish_report(report, g, best.profile(), outcome);
    } else {
      finish_report(report, g,
                    StrategyProfile{MixedStrategy::uniform(g.m1()),
                                    MixedStrategy::uniform(g.m2())},
                    outcome);
    }
    return report;
  };

  for (std::uint64_t restart = 0;; ++restart) {
    if (cfg.deadline.expired()) return finish(Outcome::kTimeout);
    if (cfg.max_restarts && restart >= *cfg.max_restarts) return finish(Outcome::kApprox);
    if (restart > 0) ++report.restarts;
    Rng rng(Rng::mix(cfg.seed, restart));

    std::optional<VertexSolution> current;
    try {
      current = random_initial(g, agent, rng, cfg.walk_steps, use_tabu ? &tabu : nullptr);
    } catch (const TabuExhausted&) {
      // Every reachable start has been used; start over.
      tabu.clear();
      continue;
    }
    if (use_tabu) tabu.insert(current->basis_key());
    FEval f = *evaluate_vertex(*current);
    if (trace) trace->descents.push_back({f.value});
    if (sgn(f.value) == 0) return finish(Outcome::kExact);

    for (std::uint64_t path = 0; path < cutoff; ++path) {
      std::vector<VariableId> entering = current->tableau->nonbasic();
      if (cfg.heuristic == Heuristic::kFIR) {
        rng.shuffle(entering);
        if (entering.size() > max_n) entering.resize(max_n);
      }
      std::optional<VertexSolution> chosen;
      std::optional<FEval> chosen_f;
      for (const auto& e : entering) {
        if (cfg.deadline.expired()) return finish(Outcome::kTimeout);
        VertexSolution nb = neighbor(*current, e);
        ++report.steps;
        auto nf = evaluate_vertex(nb);
        if (!nf || !(nf->value < f.value)) continue;
        if (chosen_f && !(nf->value < chosen_f->value)) continue;
        chosen = std::move(nb);
        chosen_f = std::move(nf);
        if (cfg.heuristic != Heuristic::kBI) break;
      }
      if (!chosen) break;
      current = std::move(chosen);
      f = std::move(*chosen_f);
      if (trace) trace->descents.back().push_back(f.value);
      if (sgn(f.value) == 0) return finish(Outcome::kExact);
    }
  }
}

}  // namespace bimatrix
