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

// Solves matching pennies with each algorithm and prints the results.

#include <iostream>

#include "bimatrix/bimatrix.hpp"

int main() {
  using namespace bimatrix;
  const BimatrixGame g = matching_pennies();

  auto show = [](const char* name, const StrategyProfile& p, const Rat& eps) {
    std::cout << name << ": x1 = (" << to_string(p.x1[0]) << ", " << to_string(p.x1[1])
              << "), x2 = (" << to_string(p.x2[0]) << ", " << to_string(p.x2[1])
              << "), eps = " << to_string(eps) << "\n";
  };

  for (std::size_t label = 1; label <= 4; ++label) {
    LHPathRecord rec = lh_solve(g, label);
    std::cout << "label " << label << ", " << rec.steps << " pivots. ";
    show("lh", *rec.equilibrium, epsilon(g, *rec.equilibrium));
  }

  SolveReport rr = rr_lh(g, RestartConfig{});
  show("rrlh", rr.profile, rr.metrics.eps);

  LemkeResult lemke = lemke_solve(g, MixedStrategy::uniform(2), MixedStrategy::uniform(2));
  show("lemke", *lemke.equilibrium, epsilon(g, *lemke.equilibrium));

  SolveReport lsv = ls_v(g);
  show("lsv", lsv.profile, lsv.metrics.eps);

  PathStats stats = enumerate_paths(g);
  std::cout << "mean path length " << to_string(stats.mean) << ", kurtosis "
            << (stats.kurtosis ? to_string(*stats.kurtosis) : std::string("undefined")) << "\n";
  return 0;
}
