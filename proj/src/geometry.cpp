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

#include "osp/geometry.hpp"

#include <limits>
#include <string>

namespace osp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  require_dim(upper.size(), lower.size(), "FeasibleSet::box upper");
  for (Index i = 0; i < lower.size(); ++i) {
    if (!(lower(i) <= upper(i))) {
      throw PreconditionError("FeasibleSet::box: lower > upper at index " +
                              std::to_string(i));
    }
  }
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

FeasibleSet FeasibleSet::interval(double lower, double upper) {
  return box(Vec::Constant(1, lower), Vec::Constant(1, upper));
}

FeasibleSet FeasibleSet::simplex(Index d) {
  if (d < 1) throw PreconditionError("FeasibleSet::simplex: d must be >= 1");
  return FeasibleSet(Simplex{d});
}

FeasibleSet FeasibleSet::restricted_simplex(Index d, double theta) {
  if (d < 1) {
    throw PreconditionError("FeasibleSet::restricted_simplex: d must be >= 1");
  }
  const double cap = 1.0 / static_cast<double>(d);
  if (!(theta >= 0.0) || theta > cap * (1.0 + 1e-12)) {
    throw PreconditionError(
        "FeasibleSet::restricted_simplex: theta must lie in [0, 1/d]");
  }
  return FeasibleSet(RestrictedSimplex{d, std::min(theta, cap)});
}

FeasibleSet FeasibleSet::interval_product(Vec upper) {
  for (Index i = 0; i < upper.size(); ++i) {
    if (!(upper(i) >= 0.0)) {
      throw PreconditionError(
          "FeasibleSet::interval_product: upper bounds must be nonnegative");
    }
  }
  return FeasibleSet(IntervalProduct{std::move(upper)});
}

FeasibleSet FeasibleSet::trivial() { return FeasibleSet(Box{Vec(0), Vec(0)}); }

Index FeasibleSet::dimension() const {
  return std::visit(Overloaded{[](const Box& b) { return b.lower.size(); },
                               [](const Simplex& s) { return s.d; },
                               [](const RestrictedSimplex& s) { return s.d; },
                               [](const IntervalProduct& p) {
                                 return p.upper.size();
                               }},
                    kind_);
}

double FeasibleSet::simplex_floor() const {
  if (const auto* r = std::get_if<RestrictedSimplex>(&kind_)) return r->theta;
  if (std::holds_alternative<Simplex>(kind_)) return 0.0;
  throw PreconditionError("simplex_floor: set is not simplex-like");
}

Vec FeasibleSet::lower_bounds() const {
  if (const auto* b = std::get_if<Box>(&kind_)) return b->lower;
  if (const auto* p = std::get_if<IntervalProduct>(&kind_)) {
    return Vec::Zero(p->upper.size());
  }
  throw PreconditionError("lower_bounds: set is not box-like");
}

Vec FeasibleSet::upper_bounds() const {
  if (const auto* b = std::get_if<Box>(&kind_)) return b->upper;
  if (const auto* p = std::get_if<IntervalProduct>(&kind_)) return p->upper;
  throw PreconditionError("upper_bounds: set is not box-like");
}

bool contains(const FeasibleSet& set, const Vec& z, double tol) {
  require_dim(z.size(), set.dimension(), "contains");
  if (!z.allFinite()) return false;
  if (set.is_simplex_like()) {
    const double floor = set.simplex_floor();
    return (z.array() >= floor - tol).all() && std::abs(z.sum() - 1.0) <= tol;
  }
  const Vec lo = set.lower_bounds();
  const Vec hi = set.upper_bounds();
  return (z.array() >= lo.array() - tol).all() &&
         (z.array() <= hi.array() + tol).all();
}

Vec project(const FeasibleSet& set, const Vec& z) {
  require_dim(z.size(), set.dimension(), "project");
  return std::visit(
      Overloaded{
          [&](const Box& b) -> Vec { return z.cwiseMax(b.lower).cwiseMin(b.upper); },
          [&](const IntervalProduct& p) -> Vec {
            return z.cwiseMax(0.0).cwiseMin(p.upper);
          },
          [&](const Simplex&) -> Vec { return project_onto_simplex(z); },
          [&](const RestrictedSimplex& r) -> Vec {
            const double d = static_cast<double>(r.d);
            if (1.0 - d * r.theta <= 0.0) return Vec::Constant(r.d, 1.0 / d);
            // Projection commutes with the similarity z = theta*1 + s*w.
            const Vec w = project_onto_simplex(unembed_restricted(z, r.theta));
            Vec out = embed_restricted(w, r.theta);
            return out.cwiseMax(r.theta);
          }},
      set.kind());
}

double diameter(const FeasibleSet& set) {
  return std::visit(
      Overloaded{[](const Box& b) { return (b.upper - b.lower).norm(); },
                 [](const IntervalProduct& p) { return p.upper.norm(); },
                 [](const Simplex& s) { return s.d > 1 ? std::sqrt(2.0) : 0.0; },
                 [](const RestrictedSimplex& r) {
                   if (r.d < 2) return 0.0;
                   const double scale =
                       1.0 - static_cast<double>(r.d) * r.theta;
                   return std::sqrt(2.0) * std::max(scale, 0.0);
                 }},
      set.kind());
}

double max_norm(const FeasibleSet& set) {
  if (set.is_simplex_like()) {
    // Attained at a vertex of the (restricted) simplex.
    const double theta = set.simplex_floor();
    const double d = static_cast<double>(set.dimension());
    const double top = 1.0 - (d - 1.0) * theta;
    return std::sqrt(top * top + (d - 1.0) * theta * theta);
  }
  const Vec lo = set.lower_bounds();
  const Vec hi = set.upper_bounds();
  return lo.cwiseAbs().cwiseMax(hi.cwiseAbs()).norm();
}

Vec center(const FeasibleSet& set) {
  if (set.is_simplex_like()) {
    const Index d = set.dimension();
    return Vec::Constant(d, 1.0 / static_cast<double>(d));
  }
  return 0.5 * (set.lower_bounds() + set.upper_bounds());
}

Vec linear_minimizer(const FeasibleSet& set, const Vec& g) {
  require_dim(g.size(), set.dimension(), "linear_minimizer");
  const Index n = g.size();
  if (set.is_simplex_like()) {
    const double theta = set.simplex_floor();
    Vec out = Vec::Constant(n, theta);
    if (n == 0) return out;
    Index best = 0;
    g.minCoeff(&best);
    out(best) += 1.0 - static_cast<double>(n) * theta;
    return out;
  }
  const Vec lo = set.lower_bounds();
  const Vec hi = set.upper_bounds();
  Vec out(n);
  for (Index i = 0; i < n; ++i) out(i) = g(i) > 0.0 ? lo(i) : hi(i);
  return out;
}

}  // namespace osp

namespace osp {

std::vector<Vec> enumerate_vertices(const FeasibleSet& set, std::size_t limit) {
  const Index n = set.dimension();
  std::vector<Vec> out;
  if (set.is_simplex_like()) {
    if (static_cast<std::size_t>(n) > limit) return out;
    for (Index i = 0; i < n; ++i) {
      Vec g = Vec::Zero(n);
      g(i) = -1.0;
      out.push_back(linear_minimizer(set, g));
    }
    return out;
  }
  if (n >= 63 || (std::size_t{1} << n) > limit) return out;
  const Vec lo = set.lower_bounds();
  const Vec hi = set.upper_bounds();
  const std::size_t count = std::size_t{1} << n;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v(i) = ((mask >> i) & 1u) ? hi(i) : lo(i);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace osp
