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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "osp/geometry.hpp"
#include "osp/knapsack.hpp"
#include "osp/matrix_games.hpp"
#include "osp/metrics.hpp"
#include "osp/oracles.hpp"
#include "osp/payoffs.hpp"
#include "osp/rng.hpp"
#include "osp/saddle_solver.hpp"

namespace osp::oracle {

namespace {

OracleResult make(std::string name, double err, double tol, std::string detail = {}) {
  OracleResult r;
  r.name = std::move(name);
  r.error = err;
  r.tolerance = tol;
  r.passed = std::isfinite(err) && err <= tol;
  r.detail = std::move(detail);
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void saddles(std::vector<OracleResult>& out) {
  struct Case {
    double a, h, p, q, lo, hi;
  };
  const Case cases[] = {{1, 1, 2, -1, -10, 10},   {1, 1, -1, -2, -10, 10}, {1, 1, -1, 3, -10, 10},
                        {0.5, 2, 0.3, -0.7, -1, 1}, {1, 1, 20, -15, -10, 10}};
  for (const auto& c : cases) {
    const FeasibleSet I = FeasibleSet::interval(c.lo, c.hi);
    const PayoffFunction f = make_quadratic_bilinear(c.a, c.h, c.p, c.q, I, I);
    const SaddleSolution s = solve_saddle(f, I, I);
    const GridSaddle g = saddle_1d(
        [&](double x, double y) { return f.value(Vec::Constant(1, x), Vec::Constant(1, y)); },
        c.lo, c.hi, c.lo, c.hi);
    const double err = std::max({std::abs(s.x_star(0) - g.x), std::abs(s.y_star(0) - g.y),
                                 std::abs(s.value - g.value)});
    out.push_back(make("saddle_1d(a=" + fmt(c.a) + ",h=" + fmt(c.h) + ",p=" + fmt(c.p) +
                           ",q=" + fmt(c.q) + ")",
                       err, 1e-5,
                       "solver (" + fmt(s.x_star(0)) + ", " + fmt(s.y_star(0)) + ") value " +
                           fmt(s.value) + "; grid (" + fmt(g.x) + ", " + fmt(g.y) + ") value " +
                           fmt(g.value)));
  }
}

void games_2x2(std::vector<OracleResult>& out, std::uint64_t seed) {
  std::vector<Mat> ms = {(Mat(2, 2) << 1, -1, -1, 1).finished(),
                         (Mat(2, 2) << 1, -1, 1, -1).finished(),
                         (Mat(2, 2) << 0.2, 0.8, -0.6, 0.4).finished(), Mat::Zero(2, 2)};
  Rng rng(seed);
  for (int k = 0; k < 20; ++k) {
    Mat A(2, 2);
    for (Index i = 0; i < 4; ++i) A(i) = rng.uniform(-1.0, 1.0);
    ms.push_back(A);
  }
  double worst = 0.0;
  std::string where;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const Mat& A = ms[k];
    const SaddleSolution s = solve_matrix_game_2x2(A);
    const Grid2x2 g = game_2x2(A);
    // Strategies may be non-unique: check optimality against the grid value.
    const double best_col = (s.x_star.transpose() * A).maxCoeff();
    const double best_row = (A * s.y_star).minCoeff();
    const double err = std::max({std::abs(s.value - g.value), std::abs(best_col - g.value),
                                 std::abs(best_row - g.value)});
    if (err > worst) {
      worst = err;
      where = "matrix #" + std::to_string(k);
    }
  }
  out.push_back(make("matrix_game_2x2 (24 matrices)", worst, 1e-5, where));
}

void projections(std::vector<OracleResult>& out, std::uint64_t seed) {
  Rng rng(seed + 1);
  double worst = 0.0;
  auto check = [&](const FeasibleSet& set, const Vec& z, const Vec& grid) {
    worst = std::max(worst, (project(set, z) - grid).norm());
  };
  for (double z : {-3.0, 0.5, 5.0, 1.999}) {
    const Vec zv = Vec::Constant(1, z);
    check(FeasibleSet::interval(-1, 2), zv,
          nearest_on_box_grid(Vec::Constant(1, -1), Vec::Constant(1, 2), zv, 201));
  }
  const Vec lo2 = (Vec(2) << -1, 0).finished(), hi2 = (Vec(2) << 2, 0.5).finished();
  const Vec up = (Vec(2) << 0.5, 25).finished();
  for (int k = 0; k < 6; ++k) {
    const Vec z = (Vec(2) << rng.uniform(-4, 4), rng.uniform(-4, 30)).finished();
    check(FeasibleSet::box(lo2, hi2), z, nearest_on_box_grid(lo2, hi2, z, 201));
    check(FeasibleSet::interval_product(up), z, nearest_on_box_grid(Vec::Zero(2), up, z, 201));
  }
  for (int k = 0; k < 6; ++k) {
    Vec z(3);
    for (Index i = 0; i < 3; ++i) z(i) = rng.uniform(-1, 2);
    check(FeasibleSet::simplex(3), z, nearest_on_simplex_grid(3, 0.0, z, 200));
    check(FeasibleSet::restricted_simplex(3, 0.1), z, nearest_on_simplex_grid(3, 0.1, z, 200));
    const Vec z2 = z.head(2);
    check(FeasibleSet::simplex(2), z2, nearest_on_simplex_grid(2, 0.0, z2, 200));
  }
  out.push_back(make("projection vs grid (box, product, simplex, restricted)", worst, 2e-4));
}

void estimator(std::vector<OracleResult>& out, const SuiteOptions& opt) {
  Estimator est = opt.estimator;
  if (!est) {
    est = [](double observed, Index i, Index j, const Vec& x, const Vec& y) {
      return one_point_estimate(observed, i, j, x, y).A_hat();
    };
  }
  Rng rng(opt.seed + 2);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Index d1 = 2 + static_cast<Index>(rng.next_u64() % 4);
    const Index d2 = 2 + static_cast<Index>(rng.next_u64() % 4);
    Mat A(d1, d2);
    for (Index i = 0; i < A.size(); ++i) A(i) = rng.uniform(-1, 1);
    Vec x(d1), y(d2);
    for (Index i = 0; i < d1; ++i) x(i) = 0.05 + rng.uniform();
    for (Index j = 0; j < d2; ++j) y(j) = 0.05 + rng.uniform();
    x /= x.sum();
    y /= y.sum();
    Mat E;
    try {
      E = estimator_expectation(A, x, y, est);
    } catch (const std::exception&) {
      worst = std::numeric_limits<double>::infinity();
      break;
    }
    if (E.rows() != A.rows() || E.cols() != A.cols()) {
      worst = std::numeric_limits<double>::infinity();
      break;
    }
    worst = std::max(worst, (E - A).cwiseAbs().maxCoeff());
  }
  out.push_back(make("one-point estimator enumeration (100 cases)", worst, 1e-12));
}

void sec8_expectations(std::vector<OracleResult>& out, const SuiteOptions& opt) {
  const KnapsackInstance inst = make_sec8_knapsack(1);
  const ExpectationOracle E = inst.expectation_oracle();
  for (double x : {1.0, 10.0 / 3.0, 5.0}) {
    const auto [er, ec] = E(Vec::Constant(1, x));
    const McEstimate mc1 = sec8_monte_carlo(
        [x](double, double a) { return (a * x) * (a * x) + 50.0 * x; }, opt.mc_samples,
        opt.seed + 3);
    const McEstimate mcr = sec8_monte_carlo([x](double b, double) { return -x * x + b * x; },
                                            opt.mc_samples, opt.seed + 4);
    const double z1 = std::abs(ec(0) - mc1.mean) / mc1.stderr_;
    const double zr = std::abs(er - mcr.mean) / mcr.stderr_;
    out.push_back(make("E[c1](" + fmt(x) + ") vs Monte-Carlo (sigmas)", z1, 3.0,
                       "analytic " + fmt(ec(0)) + ", MC " + fmt(mc1.mean) + " +- " +
                           fmt(mc1.stderr_)));
    out.push_back(make("E[r](" + fmt(x) + ") vs Monte-Carlo (sigmas)", zr, 3.0,
                       "analytic " + fmt(er) + ", MC " + fmt(mcr.mean) + " +- " +
                           fmt(mcr.stderr_)));
  }
}

void benchmark_check(std::vector<OracleResult>& out) {
  const KnapsackInstance inst = make_sec8_knapsack(1);
  const double r = benchmark_r_star(inst);
  const double g = constrained_max_1d([](double x) { return -x * x + 10.0 * x; },
                                      {[](double x) { return 3 * x * x + 50 * x - 200.0; },
                                       [](double x) { return x - 4.0; }},
                                      0.0, 20.0);
  out.push_back(make("benchmark r* vs constrained grid (relative)", std::abs(r - g) / g, 1e-6,
                     "solver " + fmt(r) + ", grid " + fmt(g)));
}

void gap_and_regrets(std::vector<OracleResult>& out) {
  const FeasibleSet I = FeasibleSet::interval(-1, 1);
  const PayoffFunction f = make_quadratic_bilinear(1.0, 0.0, 0.0, 0.0, I, I);  // xy
  const Vec one = Vec::Constant(1, 1.0);
  const double gap = gap_estimate(f, I, I, one, one);
  const double gx = grid_min_1d([](double x) { return x * 1.0; }, -1, 1);
  const double gy = -grid_min_1d([](double y) { return -1.0 * y; }, -1, 1);
  out.push_back(make("gap_estimate(xy at (1,1)) vs grid", std::abs(gap - (gy - gx)), 1e-9,
                     "solver " + fmt(gap) + ", grid " + fmt(gy - gx)));
  RoundTrace tr;
  tr.rounds.push_back(RoundRecord{one, one, 1.0, std::nullopt, std::nullopt});
  const auto [ix, iy] = compute_individual_regrets(tr, {f}, I, I);
  const double err = std::max(std::abs(ix - (1.0 - gx)), std::abs(iy - (gy - 1.0)));
  out.push_back(make("individual regrets single round xy vs grid", err, 1e-9,
                     "(" + fmt(ix) + ", " + fmt(iy) + ")"));
}

}  // namespace

std::vector<OracleResult> run_suite(const SuiteOptions& opt) {
  std::vector<OracleResult> out;
  saddles(out);
  games_2x2(out, opt.seed);
  projections(out, opt.seed);
  estimator(out, opt);
  sec8_expectations(out, opt);
  benchmark_check(out);
  gap_and_regrets(out);
  return out;
}

}  // namespace osp::oracle
