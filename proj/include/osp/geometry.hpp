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

// Convex compact feasible sets: boxes, the probability simplex, the
// restricted simplex {z in simplex : z_i >= theta}, and interval products
// [0, u_1] x ... x [0, u_m].

#include <algorithm>
#include <cmath>
#include <numeric>
#include <variant>
#include <vector>

#include "osp/types.hpp"

namespace osp {

inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kProjectionTol = 1e-12;

struct Box {
  Vec lower;
  Vec upper;
};

struct Simplex {
  Index d = 0;
};

struct RestrictedSimplex {
  Index d = 0;
  double theta = 0.0;
};

// Box(0, upper); kept distinct so dual-price sets read as what they are.
struct IntervalProduct {
  Vec upper;
};

class FeasibleSet {
 public:
  using Kind = std::variant<Box, Simplex, RestrictedSimplex, IntervalProduct>;

  static FeasibleSet box(Vec lower, Vec upper);
  static FeasibleSet interval(double lower, double upper);
  static FeasibleSet simplex(Index d);
  static FeasibleSet restricted_simplex(Index d, double theta);
  static FeasibleSet interval_product(Vec upper);
  // The zero-dimensional set; used when one player has no decision.
  static FeasibleSet trivial();

  const Kind& kind() const { return kind_; }
  Index dimension() const;

  bool is_simplex_like() const {
    return std::holds_alternative<Simplex>(kind_) ||
           std::holds_alternative<RestrictedSimplex>(kind_);
  }
  // Lower bound on every coordinate of a simplex-like set (0 for Simplex).
  double simplex_floor() const;
  // Componentwise bounds of a box-like set.
  Vec lower_bounds() const;
  Vec upper_bounds() const;

 private:
  explicit FeasibleSet(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

bool contains(const FeasibleSet& set, const Vec& z, double tol = kMembershipTol);
Vec project(const FeasibleSet& set, const Vec& z);

// Exact l2 diameter max ||z1 - z2||_2.
double diameter(const FeasibleSet& set);
// max_{z in set} ||z||_2.
double max_norm(const FeasibleSet& set);
// A canonical interior-ish point: box midpoint, uniform distribution.
Vec center(const FeasibleSet& set);
// argmin_{z in set} <g, z>; ties resolved toward the lowest index.
Vec linear_minimizer(const FeasibleSet& set, const Vec& g);

// Vertices of a box or (restricted) simplex, or an empty list when there are
// more than `limit` of them.
std::vector<Vec> enumerate_vertices(const FeasibleSet& set, std::size_t limit = 1u << 16);

// Sorted-threshold Euclidean projection onto {w >= 0, sum w = 1}.
template <typename Derived>
VecT<typename Derived::Scalar> project_onto_simplex(
    const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Index n = v.size();
  VecT<Scalar> out(n);
  if (n == 0) return out;
  std::vector<Scalar> sorted(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) sorted[static_cast<size_t>(i)] = v(i);
  std::sort(sorted.begin(), sorted.end(), std::greater<Scalar>());
  Scalar running = Scalar(0);
  Scalar tau = Scalar(0);
  for (Index k = 0; k < n; ++k) {
    running += sorted[static_cast<size_t>(k)];
    const Scalar candidate = (running - Scalar(1)) / Scalar(k + 1);
    if (sorted[static_cast<size_t>(k)] - candidate > Scalar(0)) tau = candidate;
  }
  for (Index i = 0; i < n; ++i) out(i) = std::max(v(i) - tau, Scalar(0));
  return out;
}

// w -> theta*1 + (1 - d*theta)*w maps the simplex onto the restricted simplex.
template <typename Derived>
VecT<typename Derived::Scalar> embed_restricted(
    const Eigen::MatrixBase<Derived>& w, typename Derived::Scalar theta) {
  using Scalar = typename Derived::Scalar;
  const Scalar scale = Scalar(1) - Scalar(w.size()) * theta;
  return (VecT<Scalar>::Constant(w.size(), theta) + scale * w).eval();
}

// Inverse of embed_restricted; requires theta < 1/d.
template <typename Derived>
VecT<typename Derived::Scalar> unembed_restricted(
    const Eigen::MatrixBase<Derived>& z, typename Derived::Scalar theta) {
  using Scalar = typename Derived::Scalar;
  const Scalar scale = Scalar(1) - Scalar(z.size()) * theta;
  return ((z.array() - theta) / scale).matrix().eval();
}

}  // namespace osp
