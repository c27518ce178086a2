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

#include "bimatrix/errors.hpp"
#include "bimatrix/float_mode.hpp"
#include "bimatrix/game.hpp"
#include "bimatrix/generators.hpp"
#include "bimatrix/io.hpp"
#include "bimatrix/lemke.hpp"
#include "bimatrix/lh.hpp"
#include "bimatrix/lsv.hpp"
#include "bimatrix/metrics.hpp"
#include "bimatrix/oracle.hpp"
#include "bimatrix/path_stats.hpp"
#include "bimatrix/perturb.hpp"
#include "bimatrix/random.hpp"
#include "bimatrix/rational.hpp"
#include "bimatrix/report.hpp"
#include "bimatrix/restart_policy.hpp"
#include "bimatrix/tableau.hpp"
