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

#include <cmath>

#include "doctest.h"
#include "osp/matrix_games.hpp"
#include "osp/oracles.hpp"
#include "osp/saddle_solver.hpp"
#include "test_util.hpp"

using namespace osp;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

double ent(double s) {
  auto t = [](double p) { return p > 0 ? p * std::log(p) : 0.0; };
  return t(s) + t(1 - s) + std::log(2.0);
}

}  // namespace

TEST_CASE("entropy regularizer: nonnegative, zero at uniform, gradient bounded") {
  const EntropyRegularizer R{3};
  CHECK(R.value(Vec::Constant(3, 1.0 / 3)) == doctest::Approx(0.0).epsilon(1e-14));
  Rng rng(3);
  const double theta = 0.05;
  const FeasibleSet S = FeasibleSet::restricted_simplex(3, theta);
  for (int k = 0; k < 200; ++k) {
    const Vec z = testing::random_point(rng, S);
    CHECK(R.value(z) >= -1e-14);
    CHECK(R.grad(z).cwiseAbs().maxCoeff() <= EntropyRegularizer::lipschitz_bound(theta) + 1e-12);
  }
}

TEST_CASE("OMG-RFTL: matching pennies keeps both players uniform") {
  const Mat A = (Mat(2, 2) << 1, -1, -1, 1).finished();
  OMGConfig cfg;
  cfg.eta = 3.0;
  cfg.theta = 0.1;
  OMGState st = omg_init(2, 2, cfg);
  for (int t = 0; t < 20; ++t) {
    const auto [x, y] = omg_rftl_step(st, A);
    CHECK((x - v2(0.5, 0.5)).norm() < 1e-6);
    CHECK((y - v2(0.5, 0.5)).norm() < 1e-6);
  }
}

TEST_CASE("OMG-RFTL: one round against a grid oracle of the regularized game") {
  Rng rng(17);
  for (int k = 0; k < 6; ++k) {
    Mat A(2, 2);
    for (Index i = 0; i < 4; ++i) A(i) = rng.uniform(-1, 1);
    OMGConfig cfg;
    cfg.eta = 1.0;
    cfg.theta = 0.1;
    OMGState st = omg_init(2, 2, cfg);
    const auto [x, y] = omg_rftl_step(st, A);
    const oracle::GridSaddle g = oracle::saddle_1d(
        [&](double s, double u) {
          return v2(s, 1 - s).dot(A * v2(u, 1 - u)) + ent(s) - ent(u);
        },
        0.1, 0.9, 0.1, 0.9);
    INFO("A = " << A);
    CHECK(std::abs(x(0) - g.x) < 5e-3);
    CHECK(std::abs(y(0) - g.y) < 5e-3);
  }
}

TEST_CASE("OMG-RFTL: parameter checks and default schedule") {
  OMGConfig bad;
  bad.theta = 0.6;
  CHECK_THROWS_AS(omg_init(2, 2, bad), PreconditionError);
  OMGConfig ok;
  ok.theta = 0.1;
  OMGState st = omg_init(2, 2, ok);
  CHECK_THROWS_AS(omg_rftl_step(st, Mat::Constant(2, 2, 2.0)), PreconditionError);
  const OMGConfig d = omg_theorem_defaults(2, 3, 100);
  CHECK(d.eta == doctest::Approx(10.0));
  CHECK(d.theta == doctest::Approx(std::exp(-10.0)));
  CHECK_FALSE(d.theta_clamped);
  const OMGConfig c = omg_theorem_defaults(2, 3, 1);
  CHECK(c.theta_clamped);
  CHECK(c.theta == doctest::Approx(1.0 / 6));
}

TEST_CASE("one-point estimate: examples") {
  const Vec u = v2(0.5, 0.5);
  const OnePointEstimate e = one_point_estimate(1.0, 0, 1, u, u);
  CHECK(e.value == doctest::Approx(4.0));
  const Mat M = e.A_hat();
  CHECK(M(0, 1) == doctest::Approx(4.0));
  CHECK(M.cwiseAbs().sum() == doctest::Approx(4.0));

  const double delta = 0.1;
  const Vec corner = v2(delta, 1 - delta);
  const OnePointEstimate f = one_point_estimate(0.7, 0, 0, corner, corner);
  CHECK(f.value == doctest::Approx(0.7 / (delta * delta)));
  CHECK_THROWS_AS(one_point_estimate(1.0, 2, 0, u, u), DimensionError);
  CHECK_THROWS_AS(one_point_estimate(1.0, 0, 0, v2(0, 1), u), PreconditionError);
}

TEST_CASE("property: one-point estimator is unbiased by enumeration") {
  Rng rng(23);
  for (int k = 0; k < 50; ++k) {
    const Index d1 = 2 + static_cast<Index>(rng.next_u64() % 3);
    const Index d2 = 2 + static_cast<Index>(rng.next_u64() % 3);
    Mat A(d1, d2);
    for (Index i = 0; i < A.size(); ++i) A(i) = rng.uniform(-1, 1);
    const Vec x = testing::random_point(rng, FeasibleSet::restricted_simplex(d1, 0.01));
    const Vec y = testing::random_point(rng, FeasibleSet::restricted_simplex(d2, 0.01));
    Mat E = Mat::Zero(d1, d2);
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d2; ++j) E += x(i) * y(j) * one_point_estimate(A(i, j), i, j, x, y).A_hat();
    CHECK((E - A).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("sampling: inverse CDF and frequencies") {
  CHECK(sample_with_uniform(v2(1, 0), 0.0) == 0);
  CHECK(sample_with_uniform(v2(1, 0), 0.999) == 0);
  CHECK(sample_with_uniform(v2(0.25, 0.75), 0.5) == 1);
  CHECK(sample_with_uniform(v2(0.25, 0.75), 0.2) == 0);

  const Vec p = (Vec(4) << 0.1, 0.2, 0.3, 0.4).finished();
  Rng rng(99);
  const int n = 40000;
  Vec count = Vec::Zero(4);
  for (int k = 0; k < n; ++k) count(sample_from_distribution(p, rng)) += 1;
  for (Index i = 0; i < 4; ++i) {
    const double sd = std::sqrt(n * p(i) * (1 - p(i)));
    CHECK(std::abs(count(i) - n * p(i)) < 3.5 * sd);
  }
}

TEST_CASE("bandit OMG-RFTL: zero environment keeps uniform play, floor respected") {
  BanditConfig cfg;
  cfg.eta = 2.0;
  cfg.delta = 0.1;
  cfg.rng_seed = 7;
  BanditState zero = bandit_init(3, 3, cfg);
  for (int t = 0; t < 30; ++t) {
    const BanditStep s = bandit_omg_step(zero, [](Index, Index) { return 0.0; });
    CHECK((s.x_played - Vec::Constant(3, 1.0 / 3)).norm() < 1e-7);
    CHECK((s.y_played - Vec::Constant(3, 1.0 / 3)).norm() < 1e-7);
  }

  Rng env_rng(8);
  Mat A(3, 3);
  for (Index i = 0; i < 9; ++i) A(i) = env_rng.uniform(-1, 1);
  BanditState st = bandit_init(3, 3, cfg);
  for (int t = 0; t < 60; ++t) {
    const BanditStep s = bandit_omg_step(st, [&](Index i, Index j) { return A(i, j); });
    CHECK(s.x_played.minCoeff() >= cfg.delta - 1e-9);
    CHECK(s.y_played.minCoeff() >= cfg.delta - 1e-9);
    CHECK(s.x_played.sum() == doctest::Approx(1.0));
  }
  BanditConfig bad = cfg;
  bad.delta = 0.5;
  CHECK_THROWS_AS(bandit_init(2, 2, bad), PreconditionError);
  CHECK_THROWS_AS(bandit_omg_step(st, [](Index, Index) { return NAN; }), NumericalError);
}

TEST_CASE("bandit OMG-RFTL is reproducible from its seed") {
  BanditConfig cfg = bandit_theorem_defaults(2, 2, 4096, 5);
  CHECK_FALSE(cfg.delta_clamped);
  CHECK(cfg.delta == doctest::Approx(0.25));
  CHECK(cfg.eta == doctest::Approx(4.0));
  const Mat A = (Mat(2, 2) << 0.3, -0.8, -0.1, 0.6).finished();
  BanditState a = bandit_init(2, 2, cfg), b = bandit_init(2, 2, cfg);
  for (int t = 0; t < 20; ++t) {
    const auto env = [&](Index i, Index j) { return A(i, j); };
    const BanditStep sa = bandit_omg_step(a, env), sb = bandit_omg_step(b, env);
    CHECK(sa.i == sb.i);
    CHECK(sa.j == sb.j);
    CHECK(sa.x_played == sb.x_played);
  }
}

TEST_CASE("property: restricting the simplex moves the game value by at most 2 d theta max|A|") {
  Rng rng(31);
  for (int k = 0; k < 30; ++k) {
    Mat A(2, 2);
    for (Index i = 0; i < 4; ++i) A(i) = rng.uniform(-1, 1);
    const double theta = 0.05;
    const FeasibleSet R = FeasibleSet::restricted_simplex(2, theta);
    const double v = solve_matrix_game_2x2(A).value;
    const double vt = solve_saddle(make_bilinear(A), R, R).value;
    CHECK(std::abs(vt - v) <= 2 * 2 * theta * A.cwiseAbs().maxCoeff() + 1e-6);
  }
}
