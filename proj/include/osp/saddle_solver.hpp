// Copyright 2026 The osp-lab Authors. All rights reserved.
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

// Saddle-point solves for min_{x in X} max_{y in Y} f(x, y), duality-gap
// certification and the exact 2x2 matrix game.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osp/geometry.hpp"
#include "osp/payoffs.hpp"
#include "osp/types.hpp"

namespace osp {

enum class StepRule { kExtragradientFixed, kGdaDiminishing };

struct SolverConfig {
  double tol_gap = 1e-8;
  long max_iters = 100000;
  StepRule step_rule = StepRule::kExtragradientFixed;
  // Must be feasible; infeasible warm starts are rejected, never projected.
  std::optional<std::pair<Vec, Vec>> warm_start;
};

struct SaddleSolution {
  Vec x_star;
  Vec y_star;
  double value = 0.0;
  double gap = 0.0;
  long iterations = 0;
  bool converged = false;
  std::string method;  // "closed_form_2x2", "nested_1d", "extragradient", ...
};

// One-sided convex solve. `value` is the objective at `z`; the optimum lies
// within `fw_gap` of it (generalized Frank-Wolfe certificate).
struct OneSidedSolution {
  Vec z;
  double value = 0.0;
  double fw_gap = 0.0;
  long iterations = 0;
};

void validate(const SolverConfig& cfg);

SaddleSolution solve_saddle(const PayoffFunction& f, const FeasibleSet& X, const FeasibleSet& Y,
                            const SolverConfig& cfg = {});

// max_{y'} f(x, y') - min_{x'} f(x', y), certified from above; clamped at 0.
double gap_estimate(const PayoffFunction& f, const FeasibleSet& X, const FeasibleSet& Y,
                    const Vec& x, const Vec& y, const SolverConfig& inner_cfg = {});
double gap_estimate(const PayoffTerm& f, const FeasibleSet& X, const FeasibleSet& Y, const Vec& x,
                    const Vec& y, const SolverConfig& inner_cfg = {});

// min over X of h(x) where h has dim_y() == 0.
OneSidedSolution minimize_over(const PayoffTerm& h, const FeasibleSet& X,
                               const SolverConfig& cfg = {},
                               const std::optional<Vec>& start = std::nullopt);
// max over Y of h(y) where h has dim_x() == 0. fw_gap bounds the distance to
// the true maximum from below.
OneSidedSolution maximize_over(const PayoffTerm& h, const FeasibleSet& Y,
                               const SolverConfig& cfg = {},
                               const std::optional<Vec>& start = std::nullopt);

// Exact min_{x in simplex} max_{y in simplex} x'Ay for a 2x2 matrix.
SaddleSolution solve_matrix_game_2x2(const Mat& A);

// min_x max_y sum_t L_t(x, y).
double hindsight_value(const std::vector<PayoffFunction>& history, const FeasibleSet& X,
                       const FeasibleSet& Y, const SolverConfig& cfg = {});

}  // namespace osp
