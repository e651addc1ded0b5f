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

// Brute-force reference computations. Independent of the solvers: nothing
// here calls solve_saddle, project or the closed forms it checks.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "osp/types.hpp"

namespace osp::oracle {

struct GridSaddle {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

// min over x of max over y of f on [xlo,xhi] x [ylo,yhi]; grid search with
// two rounds of zooming around the incumbent.
GridSaddle saddle_1d(const std::function<double(double, double)>& f, double xlo, double xhi,
                     double ylo, double yhi, int n = 401);

// Value and strategies of a 2x2 zero-sum game (row minimizes x'Ay) by grid
// over the row mixture, with exact inner max over the two columns.
struct Grid2x2 {
  double p = 0.0;  // weight on row 0
  double q = 0.0;  // weight on column 0
  double value = 0.0;
};
Grid2x2 game_2x2(const Mat& A, int n = 200001);

// Nearest grid point of a set to z. kind: "box" (lower/upper), "simplex",
// "restricted_simplex" (theta), "interval_product" (upper).
Vec nearest_on_box_grid(const Vec& lower, const Vec& upper, const Vec& z, int n);
Vec nearest_on_simplex_grid(Index d, double theta, const Vec& z, int n);

// sum_ij x_i y_j * estimate(i, j) for the estimator under test.
using Estimator = std::function<Mat(double observed, Index i, Index j, const Vec& x, const Vec& y)>;
Mat estimator_expectation(const Mat& A, const Vec& x, const Vec& y, const Estimator& est);

// Monte-Carlo mean and standard error of g over b ~ U[0,20], a ~ U[0,3].
struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};
McEstimate sec8_monte_carlo(const std::function<double(double b, double a)>& g, long samples,
                            std::uint64_t seed);

// max of reward over a grid of [lo, hi] subject to every constraint <= 0,
// refined twice around the incumbent.
double constrained_max_1d(const std::function<double(double)>& reward,
                          const std::vector<std::function<double(double)>>& constraints,
                          double lo, double hi, int n = 200001);

// min over a grid of [lo, hi] of f.
double grid_min_1d(const std::function<double(double)>& f, double lo, double hi, int n = 20001);

// Library-vs-oracle comparisons run by `osp_lab oracle-check`.
struct OracleResult {
  std::string name;
  bool passed = false;
  double error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteOptions {
  // Estimator under test; empty means the library's one-point estimator.
  Estimator estimator;
  long mc_samples = 1000000;
  std::uint64_t seed = 20240601;
};

std::vector<OracleResult> run_suite(const SuiteOptions& opt = {});

}  // namespace osp::oracle
