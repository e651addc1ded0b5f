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
#include "osp/osp_algorithms.hpp"
#include "test_util.hpp"

using namespace osp;

namespace {

Vec s1(double x) { return Vec::Constant(1, x); }
const FeasibleSet kI = FeasibleSet::interval(-10, 10);

struct Played {
  std::vector<Vec> xs, ys;  // xs[t] is the action of round t+1; one extra at the end
  std::vector<PayoffFunction> history;
};

Played run_spftl(const Scenario& sc, std::uint64_t seed, const SolverConfig& cfg = {}) {
  Played p;
  p.history = generate_history(sc, seed);
  SPFTLState st = spftl_init(sc.X, sc.Y, {cfg, false});
  p.xs.push_back(st.x);
  p.ys.push_back(st.y);
  for (const auto& f : p.history) {
    spftl_step(st, f);
    p.xs.push_back(st.x);
    p.ys.push_back(st.y);
  }
  return p;
}

Scenario quadratic_scenario(const std::string& id, long T, int pattern = 0) {
  ScenarioSpec spec;
  spec.generator_id = id;
  spec.T = T;
  spec.H = 1.0;
  spec.G = 5.0;
  spec.pattern = pattern;
  return make_scenario(spec);
}

}  // namespace

TEST_CASE("SP-FTL: first move is the saddle of the first payoff") {
  SPFTLState st = spftl_init(kI, kI);
  const PayoffFunction f = make_quadratic_bilinear(1, 1, 2, -1);
  const auto [x, y] = spftl_step(st, f);
  const SaddleSolution s = solve_saddle(f, kI, kI);
  CHECK((x - s.x_star).norm() < 1e-7);
  CHECK((y - s.y_star).norm() < 1e-7);
  CHECK(st.round == 1);
}

TEST_CASE("SP-FTL: stationary sequence stays at its saddle with zero regret") {
  const PayoffFunction f = make_quadratic_bilinear(1, 1, 0, 0);
  SPFTLState st = spftl_init(kI, kI);
  double played = 0.0;
  const int T = 100;
  for (int t = 0; t < T; ++t) {
    CHECK(st.x.norm() < 1e-9);
    CHECK(st.y.norm() < 1e-9);
    played += f.value(st.x, st.y);
    spftl_step(st, f);
  }
  std::vector<PayoffFunction> hist(T, f);
  CHECK(std::abs(played - hindsight_value(hist, kI, kI)) < 1e-8);
}

TEST_CASE("SP-FTL: rejects payoffs without strong convexity-concavity") {
  SPFTLState st = spftl_init(kI, kI);
  CHECK_THROWS_AS(spftl_step(st, make_quadratic_bilinear(1, 0, 0, 0)), PreconditionError);
  SPFTLState ok = spftl_init(kI, kI, {SolverConfig{}, true});
  CHECK_NOTHROW(spftl_step(ok, make_quadratic_bilinear(1, 0, 0, 0)));
}

TEST_CASE("SP-FTL: iterates on the constant prefix settle and their steps decay like 1/t") {
  const Scenario sc = quadratic_scenario("sec8_instance1", 300);
  const Played p = run_spftl(sc, 1);
  const double G = sc.G, H = sc.H, tol = SolverConfig{}.tol_gap;
  for (std::size_t t = 1; t < p.xs.size() - 1; ++t) {
    const double step = (p.xs[t] - p.xs[t + 1]).norm() + (p.ys[t] - p.ys[t + 1]).norm();
    const double slack = 4.0 * std::sqrt(2.0 * tol / (H * static_cast<double>(t)));
    CHECK(step <= 4.0 * G / (H * static_cast<double>(t)) + slack);
  }
  // Before the switch every round is the same payoff.
  const SaddleSolution s = solve_saddle(p.history.front(), sc.X, sc.Y);
  CHECK((p.xs[99] - s.x_star).norm() < 1e-6);
  CHECK((p.ys[99] - s.y_star).norm() < 1e-6);
}

TEST_CASE("property: be-the-leader sandwich and the logarithmic bound on quadratic suites") {
  for (const auto& [id, pattern] : std::vector<std::pair<std::string, int>>{
           {"iid_quadratic", 0}, {"adversarial_quadratic", 0}, {"adversarial_quadratic", 3}}) {
    const long T = 400;
    const Scenario sc = quadratic_scenario(id, T, pattern);
    const Played p = run_spftl(sc, 11);
    const double hind = hindsight_value(p.history, sc.X, sc.Y);
    double btl = 0.0, played = 0.0, dx = 0.0, dy = 0.0;
    for (long t = 0; t < T; ++t) {
      const auto& f = p.history[static_cast<std::size_t>(t)];
      played += f.value(p.xs[t], p.ys[t]);
      btl += f.value(p.xs[t + 1], p.ys[t + 1]);
      dx += (p.xs[t] - p.xs[t + 1]).norm();
      dy += (p.ys[t] - p.ys[t + 1]).norm();
    }
    const double s = 10.0 * T * SolverConfig{}.tol_gap * (1.0 + diameter(sc.X));
    INFO(id << " pattern " << pattern);
    CHECK(btl - hind >= -sc.G * dx - s);
    CHECK(btl - hind <= sc.G * dy + s);
    const double bound = 8.0 * sc.G * sc.G / sc.H * (1.0 + std::log(static_cast<double>(T)));
    CHECK(std::abs(played - hind) <= bound + s);
  }
}

TEST_CASE("SP-FTL is bitwise deterministic") {
  const Scenario sc = quadratic_scenario("iid_quadratic", 100);
  const Played a = run_spftl(sc, 5), b = run_spftl(sc, 5);
  for (std::size_t t = 0; t < a.xs.size(); ++t) {
    CHECK(a.xs[t] == b.xs[t]);
    CHECK(a.ys[t] == b.ys[t]);
  }
}

TEST_CASE("SP-RFTL: vanishing regularization reproduces SP-FTL") {
  const Scenario sc = quadratic_scenario("iid_quadratic", 30);
  const auto hist = generate_history(sc, 2);
  SPFTLState plain = spftl_init(sc.X, sc.Y);
  SPRFTLConfig rc;
  rc.eta = 1e8;
  SPRFTLState reg = sprftl_init(sc.X, sc.Y, rc);
  for (const auto& f : hist) {
    spftl_step(plain, f);
    sprftl_step(reg, f);
    CHECK((plain.x - reg.inner.x).norm() < 1e-5);
    CHECK((plain.y - reg.inner.y).norm() < 1e-5);
  }
}

TEST_CASE("SP-RFTL: single round is the saddle of the regularized payoff") {
  const FeasibleSet B = FeasibleSet::interval(-1, 1);
  const PayoffFunction f = make_quadratic_bilinear(1, 0, 0, 0);
  SPRFTLConfig rc;
  rc.eta = 0.5;
  SPRFTLState st = sprftl_init(B, B, rc);
  const auto [x, y] = sprftl_step(st, f);
  // x y + 2 x^2 - 2 y^2 plus a linear tilt would move it; here the saddle is 0.
  const PayoffFunction g = regularize(f, Regularizer::squared_norm(B),
                                      Regularizer::squared_norm(B), 2.0);
  const SaddleSolution s = solve_saddle(g, B, B);
  CHECK((x - s.x_star).norm() < 1e-7);
  CHECK((y - s.y_star).norm() < 1e-7);

  // Tilted payoff: x y + x - y with weight 2: stationarity 4x + y + 1 = 0, x - 4y - 1 = 0.
  Mat P = Mat::Zero(1, 1), C = Mat::Constant(1, 1, 1.0), Q = Mat::Zero(1, 1);
  const PayoffFunction tilt = make_quadratic_form(P, C, Q, s1(1.0), s1(-1.0), 0.0, B, B);
  SPRFTLState st2 = sprftl_init(B, B, rc);
  const auto [x2, y2] = sprftl_step(st2, tilt);
  CHECK(x2(0) == doctest::Approx(-3.0 / 17.0).epsilon(1e-7));
  CHECK(y2(0) == doctest::Approx(-5.0 / 17.0).epsilon(1e-7));
  CHECK_THROWS_AS(sprftl_init(B, B, SPRFTLConfig{}), PreconditionError);
}

TEST_CASE("OGDA: single steps by hand") {
  const PayoffFunction zero = make_quadratic_bilinear(0, 0, 0, 0);
  OGDAState a = ogda_init(kI, kI, OGDAConfig::constant(1.0), std::make_pair(s1(3), s1(-2)));
  ogda_step(a, zero);
  CHECK(a.x(0) == 3.0);
  CHECK(a.y(0) == -2.0);

  OGDAState b = ogda_init(kI, kI, OGDAConfig::diminishing(1.0), std::make_pair(s1(1), s1(1)));
  ogda_step(b, make_quadratic_bilinear(0, 1, 0, 0));
  CHECK(b.x(0) == doctest::Approx(0.0));
  CHECK(b.y(0) == doctest::Approx(0.0));

  const FeasibleSet B = FeasibleSet::interval(-1, 1);
  OGDAState c = ogda_init(B, B, OGDAConfig::constant(0.5), std::make_pair(s1(1), s1(1)));
  ogda_step(c, make_quadratic_bilinear(1, 0, 0, 0));
  CHECK(c.x(0) == doctest::Approx(0.5));
  CHECK(c.y(0) == doctest::Approx(1.0));
  CHECK(OGDAConfig::diminishing(2.0).step(4) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ogda_init(B, B, OGDAConfig::constant(0.0)), PreconditionError);
}
