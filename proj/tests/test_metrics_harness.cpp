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
#include "osp/harness.hpp"
#include "osp/metrics.hpp"
#include "test_util.hpp"

using namespace osp;

namespace {

Vec s1(double x) { return Vec::Constant(1, x); }
const FeasibleSet kI = FeasibleSet::interval(-10, 10);

RoundTrace constant_play(const std::vector<PayoffFunction>& hist, const Vec& x, const Vec& y) {
  RoundTrace tr;
  for (const auto& f : hist) tr.rounds.push_back(RoundRecord{x, y, f.value(x, y), {}, {}});
  return tr;
}

ScenarioSpec spec_of(const std::string& id, long T) {
  ScenarioSpec s;
  s.generator_id = id;
  s.T = T;
  return s;
}

AlgorithmConfig alg(const std::string& id) {
  AlgorithmConfig a;
  a.id = id;
  return a;
}

}  // namespace

TEST_CASE("SP-Regret: examples") {
  const PayoffFunction f = make_quadratic_bilinear(1, 1, 2, -1);
  const std::vector<PayoffFunction> hist(50, f);
  const double tol = 50 * SolverConfig{}.tol_gap;
  CHECK(compute_sp_regret(constant_play(hist, s1(1.5), s1(0.5)), hist, kI, kI) < tol);
  // f(0, 0) = 2 - 0.5 = 1.5 against a saddle value of -0.25 per round.
  CHECK(compute_sp_regret(constant_play(hist, s1(0), s1(0)), hist, kI, kI) ==
        doctest::Approx(50 * 1.75).epsilon(1e-8));

  const Scenario sc = make_scenario(spec_of("theorem6_scenario1", 40));
  const auto h6 = generate_history(sc, 0);
  const Vec u = Vec::Constant(2, 0.5);
  CHECK(compute_sp_regret(constant_play(h6, u, u), h6, sc.X, sc.Y) < 1e-7);
}

TEST_CASE("individual regrets: examples") {
  const FeasibleSet B = FeasibleSet::interval(-1, 1);
  const PayoffFunction xy = make_quadratic_bilinear(1, 0, 0, 0, B, B);
  RoundTrace tr = constant_play({xy}, s1(1), s1(1));
  const auto [ix, iy] = compute_individual_regrets(tr, {xy}, B, B);
  CHECK(ix == doctest::Approx(2.0));
  CHECK(iy == doctest::Approx(0.0));

  const PayoffFunction f = make_quadratic_bilinear(1, 1, 2, -1);
  const std::vector<PayoffFunction> hist(30, f);
  const auto [sx, sy] = compute_individual_regrets(constant_play(hist, s1(1.5), s1(0.5)), hist, kI, kI);
  CHECK(sx <= 30 * SolverConfig{}.tol_gap);
  CHECK(sy <= 30 * SolverConfig{}.tol_gap);
}

TEST_CASE("scenario generators: examples and replay") {
  const long T = 30;
  const Scenario s1c = make_scenario(spec_of("theorem6_scenario1", T));
  auto st = s1c.open(3);
  for (long t = 1; t <= T; ++t) {
    const ScenarioRound r = st->next();
    REQUIRE(r.matrix);
    if (t > T / 2) CHECK(r.matrix->isZero());
  }
  CHECK_THROWS_AS(make_scenario(spec_of("theorem6_scenario1", 31)), PreconditionError);

  const Scenario q = make_scenario(spec_of("sec8_instance1", T));
  const auto hist = generate_history(q, 0);
  const PayoffFunction ref = make_quadratic_bilinear(1, 1, 2, -1);
  Rng rng(2);
  for (int k = 0; k < 10; ++k) {
    const Vec x = testing::random_point(rng, q.X), y = testing::random_point(rng, q.Y);
    CHECK(hist[0].value(x, y) == doctest::Approx(ref.value(x, y)));
    CHECK(hist[T / 3 - 1].value(x, y) == doctest::Approx(ref.value(x, y)));
    CHECK(hist[T / 3].value(x, y) != doctest::Approx(ref.value(x, y)));
  }

  const Scenario k = make_scenario(spec_of("ocowk_sec8", 20));
  REQUIRE(k.knapsack);
  Rng ra(9), rb(9);
  for (int t = 0; t < 20; ++t) {
    const KnapsackRound a = k.knapsack->sampler(ra), b = k.knapsack->sampler(rb);
    CHECK(a.reward_lin == b.reward_lin);
    CHECK(a.cons_quad[0] == b.cons_quad[0]);
  }
  CHECK_THROWS_AS(make_scenario(spec_of("no_such_scenario", 10)), PreconditionError);
}

TEST_CASE("property: reported metrics agree with the raw trace") {
  RunOptions opt;
  opt.keep_trace = true;
  opt.series_points = 10;
  for (const auto& id : {"sp_ftl", "ogda", "sp_rftl"}) {
    const Scenario sc = make_scenario(spec_of("iid_quadratic", 200));
    const RunResult r = run_single(sc, alg(id), 4, opt);
    const auto hist = generate_history(sc, 4);
    double sum = 0.0;
    for (std::size_t t = 0; t < hist.size(); ++t) {
      const auto& rec = r.trace.rounds[t];
      CHECK(rec.payoff == doctest::Approx(hist[t].value(rec.x, rec.y)).epsilon(1e-12));
      sum += rec.payoff;
    }
    INFO(id);
    CHECK(r.report.sp_regret == doctest::Approx(std::abs(sum - r.report.hindsight_value)).epsilon(1e-9));
    CHECK(compute_sp_regret(r.trace, hist, sc.X, sc.Y) ==
          doctest::Approx(r.report.sp_regret).epsilon(1e-6).scale(1e-6));
    REQUIRE_FALSE(r.report.series.empty());
    CHECK(r.report.series.back().t == 200);
    CHECK(r.report.series.back().cum_sp_regret == doctest::Approx(r.report.sp_regret).epsilon(1e-6));
  }
}

TEST_CASE("property: hindsight saddle inequalities on random points") {
  const Scenario sc = make_scenario(spec_of("random_convex_concave", 100));
  const auto hist = generate_history(sc, 12);
  PayoffAccumulator acc(sc.X.dimension(), sc.Y.dimension());
  for (const auto& f : hist) acc.add(f);
  const PayoffFunction S = acc.snapshot();
  const SaddleSolution s = solve_saddle(S, sc.X, sc.Y);
  const double slack = 100 * SolverConfig{}.tol_gap * (1 + diameter(sc.X)) + s.gap;
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const Vec x = testing::random_point(rng, sc.X), y = testing::random_point(rng, sc.Y);
    CHECK(S.value(s.x_star, y) <= s.value + slack);
    CHECK(s.value <= S.value(x, s.y_star) + slack);
  }
}

TEST_CASE("run_experiment: results do not depend on the worker count") {
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  RunOptions one, many;
  one.threads = 1;
  many.threads = 4;
  one.series_points = many.series_points = 5;
  const ExperimentResult a = run_experiment(spec_of("iid_quadratic", 150), alg("ogda"), seeds, one);
  const ExperimentResult b = run_experiment(spec_of("iid_quadratic", 150), alg("ogda"), seeds, many);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t k = 0; k < a.runs.size(); ++k) {
    CHECK(a.runs[k].seed == seeds[k]);
    CHECK(a.runs[k].report.sp_regret == b.runs[k].report.sp_regret);
    CHECK(a.runs[k].report.ind_regret_x == b.runs[k].report.ind_regret_x);
  }
  CHECK(a.sp_regret.mean == b.sp_regret.mean);
  CHECK(a.sp_regret.stderr_ == b.sp_regret.stderr_);
  CHECK(worker_count(8, 2) == 2);
}

TEST_CASE("run_experiment: incompatible pairings are rejected") {
  CHECK_THROWS_AS(run_experiment(spec_of("theorem6_scenario1", 20), alg("pd_rftl"), {1}),
                  IncompatiblePairing);
  CHECK_THROWS_AS(run_experiment(spec_of("ocowk_sec8", 20), alg("ogda"), {1}), IncompatiblePairing);
  CHECK_THROWS_AS(run_experiment(spec_of("iid_quadratic", 20), alg("bandit_omg_rftl"), {1}),
                  IncompatiblePairing);
}

TEST_CASE("mean_stderr uses the sample standard deviation") {
  const MeanStderr m = mean_stderr({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(mean_stderr({7.0}).stderr_ == 0.0);
}

TEST_CASE("SP-FTL vs OGDA on the switching instance") {
  // Qualitative shape only, at a short horizon.
  RunOptions opt;
  opt.series_points = 30;
  const long T = 900;
  const RunResult ftl = run_single(make_scenario(spec_of("sec8_instance1", T)), alg("sp_ftl"), 1, opt);
  const RunResult gd = run_single(make_scenario(spec_of("sec8_instance1", T)), alg("ogda"), 1, opt);
  auto at = [](const RunResult& r, long t) {
    for (const auto& p : r.report.series)
      if (p.t >= t) return p.cum_sp_regret;
    return r.report.series.back().cum_sp_regret;
  };
  CHECK(at(gd, T) > at(gd, T / 3) + 10.0);
  CHECK(ftl.report.sp_regret < 0.1 * gd.report.sp_regret);
  CHECK(std::max(ftl.report.ind_regret_x, ftl.report.ind_regret_y) > 0.05 * T);
}
