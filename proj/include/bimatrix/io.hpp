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

// Game files, profile files and result reports.
//
// JSON game:  {"name": "...", "seed": 7, "m1": 2, "m2": 2,
//              "u1": ["1", "0", "0", "1"], "u2": ["0", "1", "1", "0"]}
// Payoffs are row-major strings: "num/den", integers or decimals, all exact.
//
// Text game:  "m1 m2" on the first line, m1 lines of U1, a blank line, m1
// lines of U2. Lines starting with '#' are comments.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bimatrix/errors.hpp"
#include "bimatrix/game.hpp"
#include "bimatrix/metrics.hpp"
#include "bimatrix/path_stats.hpp"
#include "bimatrix/rational.hpp"
#include "bimatrix/report.hpp"

namespace bimatrix {

using Json = nlohmann::ordered_json;

struct GameFile {
  BimatrixGame game;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
};

namespace io_detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Rat json_rat(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return parse_rat(v.dump());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what(), 0, 0);
  }
  throw ParseError(where + ": expected a payoff string", 0, 0);
}

inline RatMatrix json_matrix(const Json& doc, const char* key, std::size_t m1,
                             std::size_t m2) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw ParseError(std::string("missing array '") + key + "'", 0, 0);
  const Json& arr = doc[key];
  if (arr.size() != m1 * m2)
    throw ParseError(std::string("'") + key + "' has " + std::to_string(arr.size()) +
                         " entries, expected " + std::to_string(m1 * m2),
                     0, 0);
  RatMatrix m(m1, m2);
  for (std::size_t i = 0; i < arr.size(); ++i)
    m.data()[i] = json_rat(arr[i], std::string(key) + "[" + std::to_string(i) + "]");
  return m;
}

inline std::size_t json_size(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 1)
    throw ParseError(std::string("'") + key + "' must be a positive integer", 0, 0);
  return doc[key].get<std::size_t>();
}

inline BimatrixGame finalize(RatMatrix u1, RatMatrix u2) {
  BimatrixGame g(std::move(u1), std::move(u2));
  return BimatrixGame(g.u1(), g.u2(), is_normalized(g));
}

}  // namespace io_detail

inline GameFile parse_game_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = io_detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(e.what(), line, col);
  }
  if (!doc.is_object()) throw ParseError("game file must be a JSON object", 1, 1);
  const std::size_t m1 = io_detail::json_size(doc, "m1");
  const std::size_t m2 = io_detail::json_size(doc, "m2");
  GameFile out{io_detail::finalize(io_detail::json_matrix(doc, "u1", m1, m2),
                                   io_detail::json_matrix(doc, "u2", m1, m2)),
               std::nullopt, std::nullopt};
  if (doc.contains("name") && doc["name"].is_string()) out.name = doc["name"].get<std::string>();
  if (doc.contains("seed") && doc["seed"].is_number_unsigned())
    out.seed = doc["seed"].get<std::uint64_t>();
  return out;
}

inline GameFile parse_game_text(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string content;
  };
  std::vector<Line> lines;
  {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string content(text.substr(start, end - start));
      if (!content.empty() && content.back() == '\r') content.pop_back();
      lines.push_back({number, std::move(content)});
      if (end == text.size()) break;
      start = end + 1;
    }
  }
  auto blank = [](const std::string& s) {
    return s.find_first_not_of(" \t") == std::string::npos;
  };
  // Tokens of a line with their 1-based columns.
  auto tokens = [](const std::string& s) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
      if (i >= s.size()) break;
      std::size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
      out.emplace_back(s.substr(i, j - i), i + 1);
      i = j;
    }
    return out;
  };

  std::size_t pos = 0;
  auto skip_comments = [&]() {
    while (pos < lines.size() && !lines[pos].content.empty() && lines[pos].content[0] == '#')
      ++pos;
  };
  auto skip_blank = [&]() {
    while (pos < lines.size() &&
           (blank(lines[pos].content) || lines[pos].content[0] == '#'))
      ++pos;
  };

  skip_blank();
  if (pos >= lines.size()) throw ParseError("empty game file", 1, 1);
  auto header = tokens(lines[pos].content);
  if (header.size() != 2)
    throw ParseError("first line must be 'm1 m2'", lines[pos].number, 1);
  auto parse_size = [&](const std::pair<std::string, std::size_t>& tok) {
    std::size_t value = 0;
    for (char ch : tok.first) {
      if (ch < '0' || ch > '9')
        throw ParseError("invalid action count '" + tok.first + "'", lines[pos].number,
                         tok.second);
      value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (value == 0)
      throw ParseError("action count must be >= 1", lines[pos].number, tok.second);
    return value;
  };
  const std::size_t m1 = parse_size(header[0]);
  const std::size_t m2 = parse_size(header[1]);
  ++pos;

  auto read_matrix = [&](const char* which) {
    RatMatrix m(m1, m2);
    for (std::size_t r = 0; r < m1; ++r) {
      skip_comments();
      if (pos >= lines.size() || blank(lines[pos].content)) {
        const std::size_t at = pos < lines.size() ? lines[pos].number : lines.back().number + 1;
        throw ParseError(std::string(which) + " needs " + std::to_string(m1) + " rows", at, 1);
      }
      auto toks = tokens(lines[pos].content);
      if (toks.size() != m2)
        throw ParseError(std::string(which) + " row has " + std::to_string(toks.size()) +
                             " entries, expected " + std::to_string(m2),
                         lines[pos].number, 1);
      for (std::size_t c = 0; c < m2; ++c) {
        try {
          m(r, c) = parse_rat(toks[c].first);
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), lines[pos].number, toks[c].second);
        }
      }
      ++pos;
    }
    return m;
  };

  skip_blank();
  RatMatrix u1 = read_matrix("U1");
  if (pos >= lines.size() || !blank(lines[pos].content)) {
    const std::size_t at = pos < lines.size() ? lines[pos].number : lines.back().number + 1;
    throw ParseError("expected a blank line between U1 and U2", at, 1);
  }
  skip_blank();
  RatMatrix u2 = read_matrix("U2");
  skip_blank();
  if (pos < lines.size())
    throw ParseError("unexpected content after U2", lines[pos].number, 1);
  return GameFile{io_detail::finalize(std::move(u1), std::move(u2)), std::nullopt,
                  std::nullopt};
}

// JSON when the first non-blank character is '{', text otherwise.
inline GameFile parse_game(std::string_view text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_game_json(text);
  return parse_game_text(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

inline GameFile load_game(const std::string& path) { return parse_game(read_file(path)); }

// Entry point for instances produced by external generators.
inline BimatrixGame load_external(const std::string& path) { return load_game(path).game; }

inline Json rat_array(const std::vector<Rat>& v) {
  Json arr = Json::array();
  for (const auto& e : v) arr.push_back(to_string(e));
  return arr;
}

inline std::string game_to_json(const BimatrixGame& g,
                                const std::optional<std::string>& name = std::nullopt,
                                const std::optional<std::uint64_t>& seed = std::nullopt) {
  Json doc;
  if (name) doc["name"] = *name;
  if (seed) doc["seed"] = *seed;
  doc["m1"] = g.m1();
  doc["m2"] = g.m2();
  doc["u1"] = rat_array(g.u1().data());
  doc["u2"] = rat_array(g.u2().data());
  return doc.dump(2) + "\n";
}

inline std::string game_to_text(const BimatrixGame& g) {
  std::string out = std::to_string(g.m1()) + " " + std::to_string(g.m2()) + "\n";
  for (int agent : {1, 2}) {
    if (agent == 2) out += "\n";
    const RatMatrix& m = g.payoff(agent);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (c > 0) out += " ";
        out += to_string(m(r, c));
      }
      out += "\n";
    }
  }
  return out;
}

// 64-bit FNV-1a as 16 hex digits.
inline std::string checksum(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Accepts {"x1": [...], "x2": [...]}, a result report with a "profile"
// object, or two text lines of rationals.
inline StrategyProfile parse_profile(std::string_view text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  auto make = [](std::vector<Rat> v, const char* which) {
    try {
      return MixedStrategy(std::move(v));
    } catch (const InvalidProfile& e) {
      throw ParseError(std::string(which) + ": " + e.what(), 0, 0);
    }
  };
  if (first != std::string_view::npos && text[first] == '{') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      auto [line, col] = io_detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
      throw ParseError(e.what(), line, col);
    }
    const Json& p = doc.contains("profile") ? doc["profile"] : doc;
    auto vec = [&](const char* key) {
      if (!p.contains(key) || !p[key].is_array())
        throw ParseError(std::string("missing array '") + key + "'", 0, 0);
      std::vector<Rat> out;
      for (std::size_t i = 0; i < p[key].size(); ++i)
        out.push_back(io_detail::json_rat(p[key][i], std::string(key) + "[" +
                                                         std::to_string(i) + "]"));
      return out;
    };
    return {make(vec("x1"), "x1"), make(vec("x2"), "x2")};
  }
  std::vector<std::vector<Rat>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<Rat> row;
    while (ls >> tok) {
      try {
        row.push_back(parse_rat(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), number, line.find(tok) + 1);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != 2) throw ParseError("profile needs exactly two lines", number, 1);
  return {make(std::move(rows[0]), "x1"), make(std::move(rows[1]), "x2")};
}

inline Json profile_json(const StrategyProfile& p) {
  Json out;
  out["x1"] = rat_array(p.x1.probs());
  out["x2"] = rat_array(p.x2.probs());
  return out;
}

inline Json metrics_json(const SolutionMetrics& m) {
  Json out;
  out["eps"] = to_string(m.eps);
  out["eps_ws"] = to_string(m.eps_ws);
  out["regret"] = to_string(m.regret);
  out["v1"] = to_string(m.v1);
  out["v2"] = to_string(m.v2);
  Json approx;
  approx["eps"] = to_decimal(m.eps);
  approx["eps_ws"] = to_decimal(m.eps_ws);
  approx["regret"] = to_decimal(m.regret);
  out["decimal_approx"] = std::move(approx);
  return out;
}

inline Json report_json(const SolveReport& r, std::uint64_t seed, const Json& config,
                        std::optional<double> wall_ms) {
  Json out;
  out["algorithm"] = r.algorithm;
  out["seed"] = seed;
  out["config"] = config;
  out["outcome"] = to_string(r.outcome);
  out["verified"] = true;
  out["profile"] = profile_json(r.profile);
  out["metrics"] = metrics_json(r.metrics);
  out["steps"] = r.steps;
  out["restarts"] = r.restarts;
  out["lp_solves"] = r.lp_solves;
  if (r.final_cutoff) out["final_cutoff"] = *r.final_cutoff;
  if (wall_ms) out["wall_ms"] = *wall_ms;
  return out;
}

inline Json path_stats_json(const PathStats& s) {
  Json out;
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.lengths.size(); ++i)
    rows.push_back(Json{{"label", i + 1}, {"steps", s.lengths[i]}});
  out["paths"] = std::move(rows);
  Json summary;
  summary["mean"] = to_string(s.mean);
  summary["median"] = to_string(s.median);
  summary["q1"] = to_string(s.q1);
  summary["q3"] = to_string(s.q3);
  summary["min"] = to_string(s.min);
  summary["max"] = to_string(s.max);
  summary["kurtosis"] = s.kurtosis ? to_string(*s.kurtosis) : std::string("undefined");
  out["summary"] = std::move(summary);
  return out;
}

inline std::string path_stats_csv(const PathStats& s) {
  std::string out = "label,steps\n";
  for (std::size_t i = 0; i < s.lengths.size(); ++i)
    out += std::to_string(i + 1) + "," + std::to_string(s.lengths[i]) + "\n";
  out += "\nmean,median,q1,q3,min,max,kurtosis\n";
  out += to_string(s.mean) + "," + to_string(s.median) + "," + to_string(s.q1) + "," +
         to_string(s.q3) + "," + to_string(s.min) + "," + to_string(s.max) + "," +
         (s.kurtosis ? to_string(*s.kurtosis) : std::string("undefined")) + "\n";
  return out;
}

}  // namespace bimatrix
