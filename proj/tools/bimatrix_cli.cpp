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

// Command-line front end.
//
//   bimatrix solve GAME --alg rrlh
//   bimatrix paths GAME --format csv
//   bimatrix bench --gen random:4x4 --algs lh,rrlh --trials 10
//   bimatrix gen --kind covariant --m1 5 --m2 5 --rho -0.5 --out g.json
//   bimatrix verify GAME PROFILE
//   bimatrix equilibria GAME
//
// Exit status: 0 exact equilibrium, 2 approximate or timed-out result,
// 1 error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bimatrix/bimatrix.hpp"

namespace {

using bimatrix::Json;

constexpr int kExitExact = 0;
constexpr int kExitError = 1;
constexpr int kExitApprox = 2;

struct SolveOptions {
  std::string alg = "rrlh";
  std::size_t label = 1;
  std::uint64_t cutoff0 = 20;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> deadline_ms;
  std::string precision = "exact";
  std::string heuristic = "FIR";
  std::optional<std::uint64_t> lsv_cutoff;
  std::optional<std::uint64_t> max_n;
  std::optional<std::uint64_t> max_restarts;
  std::optional<std::size_t> max_iterations;
  std::optional<std::uint64_t> max_guarded;
  std::string threshold = "0";
  std::string metric = "eps";
  bool no_timing = false;
};

struct Outcome {
  Json report;
  int exit_code = kExitError;
};

bimatrix::Heuristic parse_heuristic(const std::string& s) {
  if (s == "BI" || s == "bi") return bimatrix::Heuristic::kBI;
  if (s == "FI" || s == "fi") return bimatrix::Heuristic::kFI;
  if (s == "FIR" || s == "fir") return bimatrix::Heuristic::kFIR;
  throw std::invalid_argument("unknown heuristic '" + s + "'");
}

bimatrix::QualityMetric parse_metric(const std::string& s) {
  if (s == "eps") return bimatrix::QualityMetric::kEps;
  if (s == "eps_ws") return bimatrix::QualityMetric::kEpsWs;
  if (s == "regret" || s == "r") return bimatrix::QualityMetric::kRegret;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

int exit_for(bimatrix::Outcome o) {
  return o == bimatrix::Outcome::kExact ? kExitExact : kExitApprox;
}

// Runs one algorithm on one game. `bench` caps the incomplete solvers so a
// batch always finishes.
Outcome run_solver(const bimatrix::BimatrixGame& g, const SolveOptions& o, bool bench) {
  using namespace bimatrix;
  const auto t0 = std::chrono::steady_clock::now();
  const Deadline deadline = Deadline::after_ms(o.deadline_ms);
  Json config;
  config["alg"] = o.alg;
  if (o.deadline_ms) config["deadline_ms"] = *o.deadline_ms;
  SolveReport report;

  if (o.precision == "float") {
    if (o.alg != "lh") throw std::invalid_argument("float precision supports --alg lh only");
    config["label"] = o.label;
    config["precision"] = "float";
    FloatLHResult fr = float_lh(g, o.label);
    Json out;
    out["algorithm"] = "lh";
    out["seed"] = o.seed;
    out["config"] = config;
    out["outcome"] = "approx";
    out["verified"] = false;
    Json p;
    p["x1"] = Json::array();
    p["x2"] = Json::array();
    for (double v : fr.x1) p["x1"].push_back(to_decimal(Rat(v)));
    for (double v : fr.x2) p["x2"].push_back(to_decimal(Rat(v)));
    out["profile"] = p;
    Json m;
    m["eps_float"] = fr.eps;
    out["metrics"] = m;
    out["steps"] = fr.steps;
    out["terminated"] = fr.terminated;
    if (!o.no_timing)
      out["wall_ms"] = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return {out, kExitApprox};
  }
  if (o.precision != "exact") throw std::invalid_argument("precision must be exact or float");

  if (o.alg == "lh") {
    config["label"] = o.label;
    LHOptions opt;
    opt.deadline = deadline;
    LHPathRecord rec = lh_solve(g, o.label, opt);
    report.algorithm = "lh";
    report.steps = rec.steps;
    if (rec.found_equilibrium()) {
      finish_report(report, g, *rec.equilibrium, bimatrix::Outcome::kExact);
    } else {
      finish_report(report, g,
                    StrategyProfile{MixedStrategy::uniform(g.m1()),
                                    MixedStrategy::uniform(g.m2())},
                    bimatrix::Outcome::kTimeout);
    }
  } else if (o.alg == "rrlh") {
    config["cutoff0"] = o.cutoff0;
    RestartConfig rc;
    rc.cutoff0 = o.cutoff0;
    rc.seed = o.seed;
    rc.deadline = deadline;
    report = rr_lh(g, rc);
  } else if (o.alg == "lemke") {
    Rng rng(o.seed);
    MixedStrategy x1 = random_dyadic_strategy(rng, g.m1());
    MixedStrategy x2 = random_dyadic_strategy(rng, g.m2());
    config["start"] = profile_json(StrategyProfile{x1, x2});
    LemkeOptions opt;
    opt.deadline = deadline;
    opt.record_trace = false;
    LemkeResult res = lemke_solve(g, x1, x2, opt);
    report.algorithm = "lemke";
    report.steps = res.steps;
    if (res.found_equilibrium()) {
      finish_report(report, g, *res.equilibrium, bimatrix::Outcome::kExact);
    } else {
      config["termination"] = res.status == LemkeResult::Status::kRayTermination
                                  ? "ray"
                                  : "interrupted";
      finish_report(report, g, StrategyProfile{x1, x2},
                    res.status == LemkeResult::Status::kInterrupted
                        ? bimatrix::Outcome::kTimeout
                        : bimatrix::Outcome::kApprox);
    }
  } else if (o.alg == "rrl") {
    RRLConfig rc;
    rc.metric = parse_metric(o.metric);
    rc.threshold = parse_rat(o.threshold);
    rc.max_guarded_restarts = o.max_guarded;
    rc.seed = o.seed;
    rc.deadline = deadline;
    config["metric"] = o.metric;
    config["threshold"] = to_string(rc.threshold);
    if (o.max_guarded) config["max_guarded"] = *o.max_guarded;
    report = rr_l(g, rc);
  } else if (o.alg == "lsv") {
    LSVConfig lc;
    lc.heuristic = parse_heuristic(o.heuristic);
    lc.cutoff = o.lsv_cutoff;
    lc.max_n = o.max_n;
    lc.seed = o.seed;
    lc.deadline = deadline;
    lc.max_restarts = o.max_restarts;
    if (!lc.max_restarts && (bench || !deadline.is_set())) lc.max_restarts = 1000;
    config["heuristic"] = to_string(lc.heuristic);
    if (lc.cutoff) config["cutoff"] = *lc.cutoff;
    if (lc.max_n) config["max_n"] = *lc.max_n;
    if (lc.max_restarts) config["max_restarts"] = *lc.max_restarts;
    report = ls_v(g, lc);
  } else if (o.alg == "iplh") {
    IpLhConfig ic;
    ic.deadline = deadline;
    ic.seed = o.seed;
    ic.max_iterations = o.max_iterations;
    if (!ic.max_iterations && (bench || !deadline.is_set())) ic.max_iterations = 16;
    if (ic.max_iterations) config["max_iterations"] = *ic.max_iterations;
    auto [rep, state] = ip_lh(g, ic);
    report = rep;
    config["final_k"] = state.k;
  } else {
    throw std::invalid_argument("unknown algorithm '" + o.alg + "'");
  }

  std::optional<double> wall;
  if (!o.no_timing)
    wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
               .count();
  return {report_json(report, o.seed, config, wall), exit_for(report.outcome)};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

struct BenchInstance {
  std::string name;
  bimatrix::BimatrixGame game;
};

// KIND:M1xM2[:RHO]; RHO may be "rand".
std::vector<BenchInstance> instances_from_gen(const std::string& spec, std::uint64_t trials,
                                              std::uint64_t seed, std::size_t spec_index) {
  using namespace bimatrix;
  auto parts = split(spec, ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw std::invalid_argument("--gen expects KIND:M1xM2[:RHO], got '" + spec + "'");
  GenSpec gs;
  gs.kind = parse_game_kind(parts[0]);
  auto dims = split(parts[1], 'x');
  if (dims.size() != 2) throw std::invalid_argument("bad size '" + parts[1] + "'");
  gs.m1 = std::stoul(dims[0]);
  gs.m2 = std::stoul(dims[1]);
  if (parts.size() == 3) {
    if (parts[2] == "rand") {
      gs.rand_rho = true;
    } else {
      gs.rho = std::stod(parts[2]);
    }
  }
  std::vector<BenchInstance> out;
  for (std::uint64_t t = 0; t < trials; ++t) {
    gs.seed = Rng::mix(Rng::mix(seed, spec_index), t);
    out.push_back({parts[0] + "-" + parts[1] + "-" + std::to_string(t), generate(gs)});
  }
  return out;
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int cmd_bench(const std::vector<std::string>& gens, const std::string& dir,
              const std::string& algs_flag, std::uint64_t trials, const SolveOptions& base,
              const std::string& out_path, unsigned threads) {
  std::vector<BenchInstance> instances;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto more = instances_from_gen(gens[i], trials, base.seed, i);
    instances.insert(instances.end(), more.begin(), more.end());
  }
  if (!dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
      instances.push_back({f.filename().string(), bimatrix::load_game(f.string()).game});
  }
  if (instances.empty()) throw std::invalid_argument("bench needs --gen or --dir");
  const std::vector<std::string> algs = split(algs_flag, ',');
  if (algs.empty()) throw std::invalid_argument("--algs is empty");
  // Directory instances run `trials` times with different seeds; generated
  // instances already vary per trial.
  const std::uint64_t repeats = gens.empty() ? trials : 1;

  struct Job {
    std::size_t instance;
    std::string alg;
    std::uint64_t trial;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (const auto& alg : algs)
      for (std::uint64_t t = 0; t < repeats; ++t)
        jobs.push_back({i, alg, t, bimatrix::Rng::mix(base.seed, jobs.size())});

  std::vector<std::string> rows(jobs.size());
  std::vector<int> codes(jobs.size(), kExitError);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const Job& job = jobs[j];
      SolveOptions o = base;
      o.alg = job.alg;
      o.seed = job.seed;
      std::string row = csv_field(instances[job.instance].name) + "," + job.alg + "," +
                        std::to_string(job.trial) + "," + std::to_string(job.seed) + ",";
      try {
        Outcome r = run_solver(instances[job.instance].game, o, true);
        codes[j] = r.exit_code;
        const Json& rep = r.report;
        row += rep["outcome"].get<std::string>() + "," +
               rep["metrics"]["eps"].get<std::string>() + "," +
               rep["metrics"]["eps_ws"].get<std::string>() + "," +
               rep["metrics"]["regret"].get<std::string>() + "," +
               std::to_string(rep["steps"].get<std::uint64_t>()) + "," +
               std::to_string(rep["restarts"].get<std::uint64_t>()) + "," +
               std::to_string(rep["lp_solves"].get<std::uint64_t>()) + ",";
        if (rep.contains("wall_ms")) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.3f", rep["wall_ms"].get<double>());
          row += buf;
        }
        row += ",";
      } catch (const std::exception& e) {
        row += "error,,,,,,,," + csv_field(e.what());
      }
      rows[j] = row + "\n";
    }
  };
  const unsigned n = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string csv =
      "instance,algorithm,trial,seed,outcome,eps,eps_ws,regret,steps,restarts,lp_solves,"
      "wall_ms,error\n";
  for (const auto& r : rows) csv += r;

  std::string summary = "algorithm,runs,exact,termination_pct\n";
  for (const auto& alg : algs) {
    std::size_t runs = 0;
    std::size_t exact = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].alg != alg) continue;
      ++runs;
      if (codes[j] == kExitExact) ++exact;
    }
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.2f", runs ? 100.0 * exact / runs : 0.0);
    summary += alg + "," + std::to_string(runs) + "," + std::to_string(exact) + "," + pct + "\n";
  }
  if (out_path.empty()) {
    std::cout << csv << "\n" << summary;
  } else {
    bimatrix::write_file(out_path, csv);
    std::cout << summary;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Nash equilibrium solvers for bimatrix games"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SolveOptions so;
  std::string game_path;
  std::int64_t deadline_ms = -1;

  auto* solve = app.add_subcommand("solve", "Solve a game and print a JSON report");
  solve->add_option("game", game_path, "Game file (JSON or text)")->required();
  solve->add_option("--alg", so.alg, "lh, rrlh, lemke, rrl, lsv or iplh")
      ->check(CLI::IsMember({"lh", "rrlh", "lemke", "rrl", "lsv", "iplh"}));
  solve->add_option("--label", so.label, "Initial label for lh (1-based)");
  solve->add_option("--cutoff0", so.cutoff0, "Initial cutoff for rrlh");
  solve->add_option("--seed", so.seed, "Random seed");
  solve->add_option("--deadline-ms", deadline_ms, "Wall-clock budget in milliseconds");
  solve->add_option("--precision", so.precision, "exact or float (float: lh only)")
      ->check(CLI::IsMember({"exact", "float"}));
  solve->add_option("--heuristic", so.heuristic, "lsv neighbor rule: BI, FI or FIR");
  solve->add_option("--cutoff", so.lsv_cutoff, "lsv descent length limit");
  solve->add_option("--max-n", so.max_n, "lsv FIR neighbor sample size");
  solve->add_option("--max-restarts", so.max_restarts, "lsv restart limit");
  solve->add_option("--max-iterations", so.max_iterations, "iplh iteration limit");
  solve->add_option("--max-guarded", so.max_guarded, "rrl attempts under the cutoff");
  solve->add_option("--threshold", so.threshold, "rrl start acceptance threshold");
  solve->add_option("--metric", so.metric, "rrl start metric: eps, eps_ws or regret");
  solve->add_flag("--no-timing", so.no_timing, "Omit wall_ms for reproducible output");

  std::string paths_format = "csv";
  auto* paths = app.add_subcommand("paths", "Length of every LH path");
  paths->add_option("game", game_path, "Game file")->required();
  paths->add_option("--format", paths_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> bench_gens;
  std::string bench_dir;
  std::string bench_algs = "rrlh";
  std::uint64_t bench_trials = 1;
  std::string bench_out;
  unsigned bench_threads = 1;
  std::int64_t bench_deadline = 600000;
  SolveOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a corpus, CSV out");
  bench->add_option("--gen", bench_gens, "Generated instances KIND:M1xM2[:RHO]");
  bench->add_option("--dir", bench_dir, "Directory of game files");
  bench->add_option("--algs", bench_algs, "Comma-separated algorithms");
  bench->add_option("--trials", bench_trials, "Instances per --gen, or runs per file");
  bench->add_option("--seed", bench_opts.seed, "Master seed");
  bench->add_option("--deadline-ms", bench_deadline, "Per-run budget");
  bench->add_option("--out", bench_out, "CSV output path (default stdout)");
  bench->add_option("--threads", bench_threads, "Worker threads");
  bench->add_option("--cutoff0", bench_opts.cutoff0, "rrlh initial cutoff");
  bench->add_option("--heuristic", bench_opts.heuristic, "lsv neighbor rule");
  bench->add_flag("--no-timing", bench_opts.no_timing, "Leave wall_ms empty");

  bimatrix::GenSpec gs;
  std::string gen_kind = "random";
  std::string gen_out;
  std::string gen_format = "json";
  std::string gen_name;
  auto* gen = app.add_subcommand("gen", "Generate a game file");
  gen->add_option("--kind", gen_kind, "random, covariant, dominant, degenerate, coordination");
  gen->add_option("--m1", gs.m1, "Actions of agent 1");
  gen->add_option("--m2", gs.m2, "Actions of agent 2");
  gen->add_option("--rho", gs.rho, "Covariance for covariant games");
  gen->add_flag("--rand-rho", gs.rand_rho, "Draw rho uniformly from [-1, 1]");
  gen->add_option("--seed", gs.seed, "Random seed");
  gen->add_option("--name", gen_name, "Name stored in the file");
  gen->add_option("--format", gen_format, "json or text")->check(CLI::IsMember({"json", "text"}));
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  std::string profile_path;
  auto* verify = app.add_subcommand("verify", "Check a profile against a game");
  verify->add_option("game", game_path, "Game file")->required();
  verify->add_option("profile", profile_path, "Profile file")->required();

  std::optional<std::size_t> max_support;
  auto* eqs = app.add_subcommand("equilibria", "List equilibria by support enumeration");
  eqs->add_option("game", game_path, "Game file")->required();
  eqs->add_option("--max-support", max_support, "Largest support per agent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) {
      if (deadline_ms >= 0) so.deadline_ms = deadline_ms;
      const auto file = bimatrix::load_game(game_path);
      Outcome r = run_solver(file.game, so, false);
      std::cout << r.report.dump(2) << "\n";
      return r.exit_code;
    }
    if (*paths) {
      const auto file = bimatrix::load_game(game_path);
      const bimatrix::PathStats s = bimatrix::enumerate_paths(file.game);
      if (paths_format == "json") {
        std::cout << bimatrix::path_stats_json(s).dump(2) << "\n";
      } else {
        std::cout << bimatrix::path_stats_csv(s);
      }
      return 0;
    }
    if (*bench) {
      if (bench_deadline >= 0) bench_opts.deadline_ms = bench_deadline;
      return cmd_bench(bench_gens, bench_dir, bench_algs, bench_trials, bench_opts, bench_out,
                       bench_threads);
    }
    if (*gen) {
      gs.kind = bimatrix::parse_game_kind(gen_kind);
      const bimatrix::BimatrixGame g = bimatrix::generate(gs);
      std::optional<std::string> name;
      if (!gen_name.empty()) name = gen_name;
      const std::string text = gen_format == "json" ? bimatrix::game_to_json(g, name, gs.seed)
                                                    : bimatrix::game_to_text(g);
      if (gen_out.empty()) {
        std::cout << text;
        std::cerr << "checksum " << bimatrix::checksum(text) << "\n";
      } else {
        bimatrix::write_file(gen_out, text);
        std::cout << "checksum " << bimatrix::checksum(text) << "\n";
      }
      return 0;
    }
    if (*verify) {
      const auto file = bimatrix::load_game(game_path);
      const bimatrix::StrategyProfile p =
          bimatrix::parse_profile(bimatrix::read_file(profile_path));
      const bimatrix::SolutionMetrics m = bimatrix::evaluate(file.game, p);
      Json out;
      out["equilibrium"] = sgn(m.eps) == 0;
      out["metrics"] = bimatrix::metrics_json(m);
      std::cout << out.dump(2) << "\n";
      return sgn(m.eps) == 0 ? kExitExact : kExitApprox;
    }
    if (*eqs) {
      const auto file = bimatrix::load_game(game_path);
      Json out = Json::array();
      for (const auto& e : bimatrix::enumerate_equilibria_detailed(file.game, max_support)) {
        Json item = bimatrix::profile_json(e.profile);
        item["possibly_non_isolated"] = e.possibly_non_isolated;
        out.push_back(std::move(item));
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
