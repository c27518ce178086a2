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


// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bimatrix/bimatrix.hpp"
#include "support/corpus.hpp"
#include "support/pivot_check.hpp"
#include "support/process.hpp"

namespace bimatrix {
namespace {

using testing::CorpusGame;

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Every profile a solver returned on one corpus game.
using Found = std::vector<std::vector<StrategyProfile>>;

Found g_found;

Verdict exactness(const std::vector<CorpusGame>& corpus) {
  Verdict out;
  g_found.assign(corpus.size(), {});
  std::size_t runs = 0;
  std::size_t lemke_rays = 0;
  std::size_t lsv_zero = 0;
  auto check = [&](std::size_t i, const StrategyProfile& p, const std::string& who) {
    ++runs;
    g_found[i].push_back(p);
    if (sgn(epsilon(corpus[i].game, p)) != 0) {
      out.pass = false;
      out.detail = who + " on " + corpus[i].name + " returned a nonzero epsilon";
    }
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const BimatrixGame& g = corpus[i].game;
    for (std::size_t label = 1; label <= g.m1() + g.m2(); ++label) {
      const auto rec = lh_solve(g, label);
      if (rec.found_equilibrium()) check(i, *rec.equilibrium, "lh_solve");
    }
    const auto rrlh = rr_lh(g, {20, i, {}, {}});
    if (rrlh.outcome == bimatrix::Outcome::kExact) check(i, rrlh.profile, "rr_lh");
    Rng rng(Rng::mix(77, i));
    for (int s = 0; s < 5; ++s) {
      const MixedStrategy x1 = random_dyadic_strategy(rng, g.m1());
      const MixedStrategy x2 = random_dyadic_strategy(rng, g.m2());
      LemkeOptions opt;
      opt.record_trace = false;
      const auto r = lemke_solve(g, x1, x2, opt);
      if (r.found_equilibrium()) {
        check(i, *r.equilibrium, "lemke_solve");
      } else {
        ++lemke_rays;
      }
    }
    RRLConfig rc;
    rc.seed = i;
    const auto rrl = rr_l(g, rc);
    if (rrl.outcome == bimatrix::Outcome::kExact) check(i, rrl.profile, "rr_l");
    LSVConfig lc;
    lc.seed = i;
    lc.max_restarts = 200;
    const auto lsv = ls_v(g, lc);
    if (lsv.outcome == bimatrix::Outcome::kExact) {
      ++lsv_zero;
      check(i, lsv.profile, "ls_v");
    }
  }
  if (out.pass)
    out.detail = std::to_string(runs) + " terminating runs, all epsilon 0/1; " +
                 std::to_string(lsv_zero) + "/" + std::to_string(corpus.size()) +
                 " ls_v runs reached f = 0; " + std::to_string(lemke_rays) + " lemke rays";
  return out;
}

Verdict oracle_equivalence(const std::vector<CorpusGame>& corpus) {
  Verdict out;
  std::size_t checked = 0;
  std::size_t oracle_total = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto all = enumerate_equilibria(corpus[i].game);
    oracle_total += all.size();
    for (const auto& p : all)
      if (!verify_ne(corpus[i].game, p)) {
        out.pass = false;
        out.detail = "oracle output fails verify_ne on " + corpus[i].name;
      }
    for (const auto& p : g_found[i]) {
      ++checked;
      if (std::find(all.begin(), all.end(), p) == all.end()) {
        out.pass = false;
        out.detail = "solver equilibrium missing from the oracle list on " + corpus[i].name;
      }
    }
  }
  if (out.pass)
    out.detail = std::to_string(checked) + " solver profiles found among " +
                 std::to_string(oracle_total) + " oracle equilibria";
  return out;
}

Verdict perturbation_bound(const std::vector<CorpusGame>& corpus) {
  Verdict out;
  const Rat deltas[] = {make_rat(1, 8), make_rat(1, 32), make_rat(1, 128)};
  std::size_t holds = 0;
  Rat worst_ratio = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const BimatrixGame& g = corpus[(i * 7) % corpus.size()].game;
    const Rat& delta = deltas[i % 3];
    const BimatrixGame gp = perturb(g, {delta, Rng::mix(31, i)});
    const auto rec = lh_solve(gp, 1 + i % (g.m1() + g.m2()));
    const auto r = theorem1_check(g, gp, *rec.equilibrium, delta);
    if (r.holds) ++holds;
    if (r.eps_on_original / delta > worst_ratio) worst_ratio = r.eps_on_original / delta;
  }
  out.pass = holds == 100;
  out.detail = std::to_string(holds) + "/100 pairs satisfy eps <= 2 delta; largest eps/delta " +
               to_decimal(worst_ratio, 4);
  return out;
}

Verdict iplh_schedule(const std::vector<CorpusGame>& corpus) {
  Verdict out;
  std::size_t iterations = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    IpLhConfig cfg;
    cfg.seed = i;
    cfg.max_iterations = 8;
    const auto [rep, state] = ip_lh(corpus[i].game, cfg);
    auto fail = [&](const std::string& why) {
      out.pass = false;
      out.detail = why + " on " + corpus[i].name;
    };
    if (state.iterations.empty() || state.iterations.front().delta != make_rat(1, 8))
      fail("first delta is not 1/8");
    for (std::size_t t = 0; t < state.iterations.size(); ++t) {
      const auto& it = state.iterations[t];
      ++iterations;
      if (t > 0 && it.delta * 2 != state.iterations[t - 1].delta) fail("delta did not halve");
      if (t > 0 && it.best_eps > state.iterations[t - 1].best_eps) fail("best eps increased");
      if (!it.eps) fail("iteration without an equilibrium");
    }
    if (!state.iterations.empty() && state.best_eps > 2 * state.iterations.back().delta)
      fail("final best eps above 2 delta");
  }
  if (out.pass)
    out.detail = std::to_string(corpus.size()) + " games, " + std::to_string(iterations) +
                 " iterations; schedule 1/8, 1/16, ... and non-increasing best eps";
  return out;
}

Verdict restart_policy() {
  Verdict out;
  std::ostringstream log;
  for (std::uint64_t l : {10u, 100u, 1000u}) {
    for (const Rat& p : {make_rat(1, 10), make_rat(1, 2), make_rat(9, 10)}) {
      // Exhaustive grid: for each cutoff, the fewest restarts reaching p.
      std::uint64_t best_cost = 0;
      std::uint64_t best_c = 0;
      std::uint64_t best_res = 0;
      for (std::uint64_t c = 1; c <= l; ++c) {
        const Rat miss = 1 - make_rat(static_cast<long>(c), static_cast<long>(l));
        Rat all_miss = 1;
        for (std::uint64_t res = 1; res <= 50; ++res) {
          all_miss *= miss;
          if (1 - all_miss >= p) {
            const std::uint64_t cost = c * res;
            if (best_cost == 0 || cost < best_cost || (cost == best_cost && res < best_res)) {
              best_cost = cost;
              best_c = c;
              best_res = res;
            }
            break;
          }
        }
      }
      const RestartPolicy analytic = restart_policy_optimum(l, p);
      const Rat gap = abs(Rat(static_cast<long>(best_c)) - analytic.cutoff);
      const bool ok = best_res == analytic.res && gap < 1 &&
                      restart_success_probability(l, analytic.cutoff, 1) == p;
      if (!ok) out.pass = false;
      log << " (" << l << "," << to_string(p) << ")->" << best_c << "x" << best_res;
    }
  }
  out.detail = "grid optimum vs cutoff = l*p, res = 1:" + log.str();
  return out;
}

Verdict path_statistics() {
  Verdict out;
  const PathStats constant = enumerate_paths(generate({GameKind::kCoordination, 4, 4}));
  const PathStats hand = compute_path_stats({1, 1, 1, 5});
  out.pass = !constant.kurtosis && hand.kurtosis && *hand.kurtosis == make_rat(7, 3);
  out.detail = "constant-length game kurtosis " +
               std::string(constant.kurtosis ? to_string(*constant.kurtosis) : "undefined") +
               "; {1,1,1,5} kurtosis " + (hand.kurtosis ? to_string(*hand.kurtosis) : "undefined");
  return out;
}

Verdict anti_cycling() {
  Verdict out;
  std::size_t paths = 0;
  std::uint64_t longest = 0;
  for (const auto& c : testing::degenerate_corpus()) {
    const BimatrixGame& g = c.game;
    const std::uint64_t limit = 10 * (g.m1() + g.m2()) * (g.m1() + g.m2());
    auto fail = [&](const std::string& why) {
      out.pass = false;
      out.detail = why + " on " + c.name;
    };
    for (std::size_t label = 1; label <= g.m1() + g.m2(); ++label) {
      std::set<std::size_t> hashes;
      std::set<std::pair<std::vector<VariableId>, std::vector<VariableId>>> seen;
      bool repeat = false;
      LHOptions opt;
      opt.step_limit = limit + 1;
      opt.on_step = [&](const LHSystem& s, std::uint64_t) {
        auto k1 = s.tableau1().basis_key();
        auto k2 = s.tableau2().basis_key();
        std::vector<VariableId> both = k1;
        both.insert(both.end(), k2.begin(), k2.end());
        if (!hashes.insert(hash_basis(both)).second && !seen.emplace(k1, k2).second) repeat = true;
        seen.emplace(k1, k2);
      };
      const auto rec = lh_solve(g, label, opt);
      ++paths;
      longest = std::max(longest, rec.steps);
      if (!rec.found_equilibrium() || rec.steps > limit) fail("LH exceeded the pivot bound");
      if (repeat) fail("LH repeated a basis");
      if (rec.found_equilibrium() && !verify_ne(g, *rec.equilibrium)) fail("LH output not an NE");
    }
    Rng rng(Rng::mix(5, paths));
    for (int s = 0; s < 5; ++s) {
      std::set<std::vector<VariableId>> seen;
      bool repeat = false;
      LemkeOptions opt;
      opt.record_trace = false;
      opt.step_limit = limit + 1;
      opt.on_step = [&](const LemkeSystem& sys, std::uint64_t) {
        if (!seen.insert(sys.tableau().basis_key()).second) repeat = true;
      };
      const auto r = lemke_solve(g, random_dyadic_strategy(rng, g.m1()),
                                 random_dyadic_strategy(rng, g.m2()), opt);
      ++paths;
      longest = std::max(longest, r.steps);
      if (r.status == LemkeResult::Status::kStepLimitExceeded) fail("Lemke exceeded the pivot bound");
      if (repeat) fail("Lemke repeated a basis");
      if (r.found_equilibrium() && !verify_ne(g, *r.equilibrium)) fail("Lemke output not an NE");
    }
  }
  if (out.pass)
    out.detail = std::to_string(paths) + " paths on 20 degenerate games, longest " +
                 std::to_string(longest) + " pivots, no basis repeated";
  return out;
}

Verdict kernel_oracle() {
  Verdict out;
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::string why;
    try {
      why = testing::check_pivot_sequence(Rng::mix(2026, seed));
    } catch (const InexactDivision&) {
      why = "integer closure violated";
    }
    if (why.empty()) {
      ++ok;
    } else if (out.pass) {
      out.pass = false;
      out.detail = "seed " + std::to_string(seed) + ": " + why;
    }
  }
  if (out.pass)
    out.detail = std::to_string(ok) + "/1000 sequences match rational pivoting exactly";
  return out;
}

Verdict scaling_trend() {
  Verdict out;
  const std::size_t sizes[] = {5, 10, 15, 20};
  const std::size_t per_size = 15;
  std::vector<double> xs;
  std::vector<double> ys;
  std::ostringstream log;
  for (std::size_t m : sizes) {
    std::vector<std::uint64_t> pivots;
    for (std::uint64_t seed = 0; pivots.size() < per_size; ++seed) {
      const BimatrixGame g = generate({GameKind::kRandom, m, m, 0.0, false, Rng::mix(m, seed)});
      const auto s = smallest_support_size(g, 2);
      if (!s || *s > 2) continue;
      const auto rep = rr_lh(g, {20, seed, {}, {}});
      if (rep.outcome != bimatrix::Outcome::kExact) {
        out.pass = false;
        out.detail = "rr_lh did not finish";
        return out;
      }
      pivots.push_back(rep.steps);
    }
    const PathStats st = compute_path_stats(pivots);
    const double median = std::max(1.0, to_double(st.median));
    xs.push_back(std::log(static_cast<double>(m)));
    ys.push_back(std::log(median));
    log << " m=" << m << ":" << to_decimal(st.median, 4);
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.pass = slope < 2.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", slope);
  out.detail = std::string("median rr_lh pivots") + log.str() + "; log-log exponent " + buf;
  return out;
}

Verdict determinism() {
  Verdict out;
  testing::ScratchDir dir("acceptance");
  const std::string cli = testing::cli();
  const std::string game = dir.file("g.json");
  const std::string gen = cli + " gen --kind random --m1 5 --m2 5 --seed 3 --out '" + game + "'";
  std::vector<std::string> commands;
  for (const char* alg : {"lh", "rrlh", "lemke", "rrl", "lsv", "iplh"})
    commands.push_back(cli + " solve '" + game + "' --alg " + alg + " --seed 7 --no-timing");
  commands.push_back(cli + " paths '" + game + "'");
  commands.push_back(cli + " paths --format json '" + game + "'");
  commands.push_back(cli + " equilibria '" + game + "'");
  commands.push_back(cli + " gen --kind covariant --rand-rho --m1 4 --m2 6 --seed 8");
  commands.push_back(cli + " gen --kind degenerate --m1 3 --m2 3 --seed 8 --format text");
  const std::string bench = cli + " bench --gen random:4x4 --gen covariant:3x5:rand --gen degenerate:3x3"
                                  " --trials 2 --algs lh,rrlh,lemke,rrl,lsv,iplh --seed 12 --no-timing";
  std::size_t compared = 0;
  auto fail = [&](const std::string& why) {
    if (out.pass) out.detail = why;
    out.pass = false;
  };
  if (testing::run(gen).exit_code != 0) fail("gen failed");
  const std::string game_bytes = read_file(game);
  if (testing::run(gen).exit_code != 0 || read_file(game) != game_bytes) fail("gen output changed");
  ++compared;
  for (const auto& c : commands) {
    const auto a = testing::run(c);
    const auto b = testing::run(c);
    ++compared;
    if (a.out != b.out || a.exit_code != b.exit_code || a.out.empty()) fail("output differs: " + c);
  }
  for (const auto& c : commands) {
    if (c.find(" solve ") == std::string::npos) continue;
    write_file(dir.file("report.json"), testing::run(c).out);
    const std::string verify = cli + " verify '" + game + "' '" + dir.file("report.json") + "'";
    const auto a = testing::run(verify);
    const auto b = testing::run(verify);
    ++compared;
    if (a.out != b.out) fail("verify output differs");
  }
  std::string reference;
  for (unsigned threads : {1u, 1u, 2u, 4u}) {
    const auto r = testing::run(bench + " --threads " + std::to_string(threads));
    ++compared;
    if (r.exit_code != 0) fail("bench failed");
    if (reference.empty()) {
      reference = r.out;
    } else if (r.out != reference) {
      fail("bench output differs at " + std::to_string(threads) + " threads");
    }
  }
  if (out.pass)
    out.detail = std::to_string(compared) +
                 " command reruns byte-identical, bench identical at 1, 2 and 4 threads";
  return out;
}

}  // namespace
}  // namespace bimatrix

int main() {
  using namespace bimatrix;
  const auto corpus = testing::seeded_corpus();
  struct Criterion {
    int number;
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exactness suite", [&] { return exactness(corpus); }},
      {2, "oracle equivalence", [&] { return oracle_equivalence(corpus); }},
      {3, "perturbation bound eps <= 2 delta", [&] { return perturbation_bound(corpus); }},
      {4, "ip-LH schedule and anytime monotonicity", [&] { return iplh_schedule(corpus); }},
      {5, "restart-policy optimum", restart_policy},
      {6, "path statistics", path_statistics},
      {7, "anti-cycling on degenerate games", anti_cycling},
      {8, "kernel against rational pivoting", kernel_oracle},
      {9, "rrLH scaling trend", scaling_trend},
      {10, "determinism", determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.number, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
