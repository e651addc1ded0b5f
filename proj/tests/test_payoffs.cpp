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
#include <functional>

#include "doctest.h"
#include "osp/knapsack.hpp"
#include "osp/payoffs.hpp"
#include "test_util.hpp"

using namespace osp;
using osp::testing::random_point;

namespace {

Vec s1(double x) { return Vec::Constant(1, x); }

struct Case {
  std::string name;
  PayoffFunction f;
  FeasibleSet X;
  FeasibleSet Y;
};

std::vector<Case> constructors() {
  std::vector<Case> out;
  const FeasibleSet I = FeasibleSet::interval(-10, 10);
  out.push_back({"quadratic_bilinear", make_quadratic_bilinear(1, 1, 2, -1), I, I});
  out.push_back({"quadratic_bilinear_flat", make_quadratic_bilinear(0.7, 0, 0, 0), I, I});

  Mat A(3, 2);
  A << 0.5, -1, 0.25, 0.75, -0.3, 1;
  const FeasibleSet S3 = FeasibleSet::simplex(3), S2 = FeasibleSet::simplex(2);
  out.push_back({"bilinear_l1", make_bilinear(A, NormTag::L1), S3, S2});
  out.push_back({"bilinear_l2", make_bilinear(A, NormTag::L2), S3, S2});

  const FeasibleSet B2 = FeasibleSet::box((Vec(2) << -1, -2).finished(), (Vec(2) << 1, 2).finished());
  Mat P(2, 2), C(2, 2), Q(2, 2);
  P << 2, 0.5, 0.5, 1;
  C << 1, -1, 0.3, 0.2;
  Q << 1.5, 0, 0, 0.5;
  out.push_back({"quadratic_form",
                 make_quadratic_form(P, C, Q, (Vec(2) << 1, 0).finished(),
                                     (Vec(2) << 0, -1).finished(), 3.0, B2, B2),
                 B2, B2});

  const KnapsackInstance inst = make_sec8_knapsack(100);
  Rng rng(3);
  out.push_back({"knapsack_round", round_lagrangian(inst, inst.sampler(rng)), inst.X,
                 dual_set(inst)});

  const Regularizer rx = Regularizer::squared_norm(I), ry = Regularizer::squared_norm(I);
  out.push_back({"regularized_quadratic", regularize(make_quadratic_bilinear(1, 0, 0, 0), rx, ry, 0.3),
                 I, I});
  const FeasibleSet R3 = FeasibleSet::restricted_simplex(3, 0.05),
                    R2 = FeasibleSet::restricted_simplex(2, 0.05);
  out.push_back({"regularized_entropy",
                 regularize(make_bilinear(A), Regularizer::entropy(R3), Regularizer::entropy(R2), 0.5),
                 R3, R2});
  return out;
}

double dual_norm(const Vec& g, NormTag norm) {
  return norm == NormTag::L1 ? g.lpNorm<Eigen::Infinity>() : g.norm();
}

}  // namespace

TEST_CASE("quadratic-bilinear values and gradients") {
  const PayoffFunction f = make_quadratic_bilinear(1, 1, 2, -1);
  CHECK(f.value(s1(2), s1(-1)) == doctest::Approx(-2.0));
  CHECK(f.grad_x(s1(0), s1(0))(0) == doctest::Approx(-2.0));
  CHECK(f.grad_y(s1(0), s1(0))(0) == doctest::Approx(-1.0));
  CHECK(f.strong_H() == 1.0);
  CHECK_THROWS_AS(make_quadratic_bilinear(1, -0.1, 0, 0), PreconditionError);

  const PayoffFunction g = make_quadratic_bilinear(0, 1, 0, 0);
  CHECK(g.value(s1(0), s1(0)) == 0.0);
  CHECK(g.grad_x(s1(0), s1(0)).norm() == 0.0);
  CHECK(g.grad_y(s1(0), s1(0)).norm() == 0.0);
}

TEST_CASE("bilinear: matching pennies, Lipschitz constants, range check") {
  Mat mp(2, 2);
  mp << 1, -1, -1, 1;
  const Vec u = Vec::Constant(2, 0.5);
  CHECK(make_bilinear(mp).value(u, u) == doctest::Approx(0.0));
  CHECK(make_bilinear(mp, NormTag::L1).lipschitz_G() == doctest::Approx(1.0));
  CHECK(make_bilinear(mp, NormTag::L2).lipschitz_G() ==
        doctest::Approx(2.0 * std::sqrt(2.0)));
  const PayoffFunction z = make_bilinear(Mat::Zero(2, 3));
  CHECK(z.lipschitz_G() == 0.0);
  CHECK(z.value(u, Vec::Constant(3, 1.0 / 3)) == 0.0);
  Mat bad = mp;
  bad(0, 1) = 1.5;
  CHECK_THROWS_AS(make_bilinear(bad), PreconditionError);
}

TEST_CASE("knapsack Lagrangian: dual term, substitution, null action") {
  const long T = 50;
  const KnapsackInstance inst = make_sec8_knapsack(T);
  KnapsackRound r;
  r.reward_quad = Mat::Constant(1, 1, 1.0);
  r.reward_lin = s1(10.0);
  r.cons_quad = {Mat::Constant(1, 1, 1.0), Mat::Zero(1, 1)};
  r.cons_lin = {s1(50.0), s1(1.0)};
  const PayoffFunction L = round_lagrangian(inst, r);
  CHECK(L.value(s1(1.0), Vec::Zero(2)) == doctest::Approx(-9.0));
  const Vec y = (Vec(2) << 0.3, 7).finished();
  CHECK(L.value(inst.x0, y) == doctest::Approx(-y.dot(inst.b / static_cast<double>(T))));
  for (double x : {0.0, 2.5, 13.0}) {
    CHECK(L.value(s1(x), Vec::Zero(2)) == doctest::Approx(-r.reward(s1(x))));
  }

  // Closure-based constructor, same algebra.
  RewardModel rm{1, [](const Vec& x) { return -x(0) * x(0) + 4 * x(0); },
                 [](const Vec& x) { return s1(-2 * x(0) + 4); }, 24.0};
  ConsumptionModel cm{[](const Vec& x) { return s1(x(0) * x(0)); },
                      [](const Vec& x) { return Mat::Constant(1, 1, 2 * x(0)); }, 20.0, 100.0};
  const PayoffFunction K = make_knapsack_lagrangian(rm, cm, s1(30.0), 10.0, s1(2.0));
  CHECK(K.value(s1(3), s1(0)) == doctest::Approx(-3.0));
  CHECK(K.value(s1(3), s1(2)) == doctest::Approx(-3.0 - 2.0 * (3.0 - 9.0)));
  CHECK(K.grad_y(s1(3), s1(1))(0) == doctest::Approx(9.0 - 3.0));
  CHECK_THROWS_AS(K.value(s1(3), Vec::Zero(2)), DimensionError);
}

TEST_CASE("regularize: zero regularizer, squared norms, entropy at uniform") {
  const FeasibleSet I = FeasibleSet::interval(-10, 10);
  const PayoffFunction base = make_quadratic_bilinear(1, 1, 2, -1);
  const PayoffFunction same = regularize(base, Regularizer::zero(I), Regularizer::zero(I), 3.0);
  CHECK(same.value(s1(0.3), s1(-4)) == doctest::Approx(base.value(s1(0.3), s1(-4))));

  const double H = std::pow(64.0, -1.0 / 6.0);
  const PayoffFunction reg = regularize(make_quadratic_bilinear(0, 0, 0, 0),
                                        Regularizer::squared_norm(I),
                                        Regularizer::squared_norm(I), H);
  CHECK(reg.value(s1(3), s1(2)) == doctest::Approx(H * 9 - H * 4));
  CHECK(reg.strong_H() >= 2 * H - 1e-15);

  Mat mp(2, 2);
  mp << 1, -1, -1, 1;
  const FeasibleSet S = FeasibleSet::restricted_simplex(2, 0.1);
  const PayoffFunction ent = regularize(make_bilinear(mp), Regularizer::entropy(S),
                                        Regularizer::entropy(S), 2.0);
  const Vec u = Vec::Constant(2, 0.5);
  CHECK(ent.value(u, u) == doctest::Approx(0.0));
  CHECK_THROWS_AS(regularize(base, Regularizer::zero(I), Regularizer::zero(I), 0.0),
                  PreconditionError);
}

TEST_CASE("property: finite differences, convexity-concavity, Lipschitz certificate") {
  Rng rng(2024);
  for (const auto& c : constructors()) {
    INFO(c.name);
    const double G = c.f.lipschitz_G();
    for (int k = 0; k < 200; ++k) {
      // Interior points: pull samples toward the center.
      const Vec x = 0.9 * random_point(rng, c.X) + 0.1 * center(c.X);
      const Vec y = 0.9 * random_point(rng, c.Y) + 0.1 * center(c.Y);
      const Vec gx = c.f.grad_x(x, y), gy = c.f.grad_y(x, y);
      const double h = 1e-6;
      for (Index i = 0; i < x.size(); ++i) {
        Vec a = x, b = x;
        a(i) += h;
        b(i) -= h;
        const double fd = (c.f.value(a, y) - c.f.value(b, y)) / (2 * h);
        CHECK(std::abs(fd - gx(i)) <= 1e-4 * std::max(1.0, std::abs(gx(i))));
      }
      for (Index j = 0; j < y.size(); ++j) {
        Vec a = y, b = y;
        a(j) += h;
        b(j) -= h;
        const double fd = (c.f.value(x, a) - c.f.value(x, b)) / (2 * h);
        CHECK(std::abs(fd - gy(j)) <= 1e-4 * std::max(1.0, std::abs(gy(j))));
      }

      const Vec x2 = random_point(rng, c.X), y2 = random_point(rng, c.Y);
      CHECK(c.f.value(0.5 * (x + x2), y) <= 0.5 * (c.f.value(x, y) + c.f.value(x2, y)) + 1e-9);
      CHECK(c.f.value(x, 0.5 * (y + y2)) >= 0.5 * (c.f.value(x, y) + c.f.value(x, y2)) - 1e-9);

      Vec g(gx.size() + gy.size());
      g << gx, gy;
      CHECK(dual_norm(g, c.f.norm_tag()) <= G + 1e-9);
    }
  }
}
