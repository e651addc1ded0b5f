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
#include "osp/geometry.hpp"
#include "osp/oracles.hpp"
#include "test_util.hpp"

using namespace osp;
using osp::testing::random_point;
using osp::testing::random_vec;

namespace {
Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) out(i++) = x;
  return out;
}
}  // namespace

TEST_CASE("contains on the three documented points") {
  CHECK(contains(FeasibleSet::simplex(2), v({0.5, 0.5}), 0.0));
  CHECK_FALSE(contains(FeasibleSet::restricted_simplex(3, 0.1), v({0.05, 0.45, 0.5})));
  CHECK(contains(FeasibleSet::interval(-10, 10), v({10})));
  CHECK_FALSE(contains(FeasibleSet::interval(-10, 10), v({10.1})));
  CHECK_THROWS_AS(contains(FeasibleSet::simplex(3), v({0.5, 0.5})), DimensionError);
}

TEST_CASE("invalid sets are rejected") {
  CHECK_THROWS_AS(FeasibleSet::box(v({1, 0}), v({0, 1})), PreconditionError);
  CHECK_THROWS_AS(FeasibleSet::restricted_simplex(3, 0.4), PreconditionError);
  CHECK_THROWS_AS(FeasibleSet::interval_product(v({-1})), PreconditionError);
}

TEST_CASE("project: fixed points, clamps and the restricted-simplex vertex") {
  CHECK((project(FeasibleSet::simplex(2), v({0.5, 0.5})) - v({0.5, 0.5})).norm() < 1e-15);
  const FeasibleSet unit = FeasibleSet::box(v({0, 0}), v({1, 1}));
  CHECK((project(unit, v({2, -1})) - v({1, 0})).norm() == 0.0);

  for (Index d : {2, 3, 5}) {
    const double theta = 0.5 / static_cast<double>(d) * 0.4;
    const Vec e1 = Vec::Unit(d, 0);
    const Vec p = project(FeasibleSet::restricted_simplex(d, theta), e1);
    Vec want = Vec::Constant(d, theta);
    want(0) = 1.0 - theta * static_cast<double>(d - 1);
    CHECK((p - want).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs((p - e1).lpNorm<1>() - 2.0 * theta * static_cast<double>(d - 1)) < 1e-14);
  }
  CHECK_THROWS_AS(project(unit, v({1})), DimensionError);
}

TEST_CASE("simplex projection agrees with a brute-force grid") {
  const Vec z = v({0.9, 0.6, 0.1});
  const Vec p = project(FeasibleSet::simplex(3), z);
  const Vec g = oracle::nearest_on_simplex_grid(3, 0.0, z, 200);
  CHECK((p - g).cwiseAbs().maxCoeff() < 2e-4);
  CHECK((p - v({0.65, 0.35, 0.0})).norm() < 1e-12);
}

TEST_CASE("degenerate restricted simplex is a single point") {
  const FeasibleSet s = FeasibleSet::restricted_simplex(4, 0.25);
  CHECK((project(s, v({3, -1, 0, 9})) - Vec::Constant(4, 0.25)).norm() < 1e-15);
  CHECK(diameter(s) == doctest::Approx(0.0));
}

TEST_CASE("diameter closed forms") {
  CHECK(diameter(FeasibleSet::simplex(2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(diameter(FeasibleSet::interval(-10, 10)) == doctest::Approx(20.0));
  CHECK(diameter(FeasibleSet::restricted_simplex(2, 0.5)) == doctest::Approx(0.0));
  CHECK(diameter(FeasibleSet::restricted_simplex(3, 0.1)) ==
        doctest::Approx(std::sqrt(2.0) * 0.7));
  CHECK(diameter(FeasibleSet::interval_product(v({3, 4}))) == doctest::Approx(5.0));
  CHECK(diameter(FeasibleSet::box(v({0, 0}), v({1, 2}))) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("property: projections are feasible, idempotent, nonexpansive and optimal") {
  Rng rng(17);
  const std::vector<FeasibleSet> sets = {
      FeasibleSet::interval(-10, 10), FeasibleSet::box(v({-1, 0, 2}), v({1, 0.5, 3})),
      FeasibleSet::simplex(4), FeasibleSet::restricted_simplex(5, 0.05),
      FeasibleSet::interval_product(v({0.5, 25}))};
  for (const auto& s : sets) {
    const Index d = s.dimension();
    for (int k = 0; k < 50; ++k) {
      const Vec z1 = random_vec(rng, d, -5, 5), z2 = random_vec(rng, d, -5, 5);
      const Vec p1 = project(s, z1), p2 = project(s, z2);
      CHECK(contains(s, p1, kProjectionTol));
      CHECK((project(s, p1) - p1).norm() < 1e-12);
      CHECK((p1 - p2).norm() <= (z1 - z2).norm() + 1e-10);
    }
    const Vec z = random_vec(rng, d, -5, 5);
    const Vec pz = project(s, z);
    for (int k = 0; k < 1000; ++k) {
      CHECK((pz - z).norm() <= (random_point(rng, s) - z).norm() + 1e-10);
    }
  }
}

TEST_CASE("property: the restricted-simplex embedding inverts exactly") {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const Index d = 2 + static_cast<Index>(rng.next_u64() % 6);
    const double theta = rng.uniform(0.0, 1.0 / static_cast<double>(d));
    Vec w = random_vec(rng, d, 0, 1);
    w /= w.sum();
    const Vec z = embed_restricted(w, theta);
    if (theta < 1.0 / static_cast<double>(d) - 1e-3) {
      CHECK((unembed_restricted(z, theta) - w).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(contains(FeasibleSet::restricted_simplex(d, theta), z, 1e-12));
  }
}
