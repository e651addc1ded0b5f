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

// Internal building blocks shared by the saddle solver and the one-sided
// solves: a flattened quadratic-entropic view of payoff terms and convex
// minimization over a single feasible set.

#include <functional>
#include <memory>
#include <optional>

#include "osp/geometry.hpp"
#include "osp/payoffs.hpp"
#include "osp/saddle_solver.hpp"

namespace osp::detail {

// 1/2 x'Px + x'Cy - 1/2 y'Qy + u'x + v'y + k + wx R(x) - wy R(y),
// with P and Q symmetric.
struct Flat2 {
  Mat P, C, Q;
  Vec u, v;
  double k = 0.0;
  double wx = 0.0;
  double wy = 0.0;

  double value(const Vec& x, const Vec& y) const;
  Vec smooth_grad_x(const Vec& x, const Vec& y) const { return P * x + C * y + u; }
  Vec smooth_grad_y(const Vec& x, const Vec& y) const { return C.transpose() * x - Q * y + v; }
};

// Succeeds for quadratic, linear, bilinear and entropy terms and sums of them.
std::optional<Flat2> flatten(const PayoffTerm& term);

// minimize  h(z) + w R(z)  over a set, where h is smooth. Either a flat
// quadratic (1/2 z'Mz + g'z + k) or closures.
struct Convex1 {
  bool flat = false;
  Mat M;
  Vec g;
  double k = 0.0;
  double w = 0.0;
  std::function<double(const Vec&)> smooth_value;  // excludes w R(z)
  std::function<Vec(const Vec&)> smooth_grad;
  std::shared_ptr<const PayoffTerm> keep_alive;

  double h(const Vec& z) const;
  Vec dh(const Vec& z) const;
  double value(const Vec& z) const;
};

// min_x f(x, y) and min_y -f(x, y).
Convex1 restrict_to_x(const PayoffTerm& f, const Flat2* flat, const Vec& y);
Convex1 restrict_to_y(const PayoffTerm& f, const Flat2* flat, const Vec& x);
// Builds a Convex1 from a one-sided term (sign = +1 to minimize, -1 to maximize).
Convex1 one_sided(const PayoffTerm& h, bool x_side, double sign);

OneSidedSolution solve_convex1(const Convex1& prob, const FeasibleSet& set,
                               const std::optional<Vec>& start, double tol, long max_iters);

// argmin over the restricted simplex of -v'z + R(z): max(theta, c exp(v)).
Vec entropic_argmin(const Vec& v, double theta);
// sum a_i ln(a_i / b_i).
double kl_divergence(const Vec& a, const Vec& b);
// Pulls exact zeros off the boundary so logarithms stay finite.
Vec interiorize(const Vec& z);
// Entropic steps apply to simplexes of dimension >= 2.
bool uses_entropic_geometry(const FeasibleSet& set);

}  // namespace osp::detail
