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

// Helpers shared by the unit suites.

#include <cmath>

#include "osp/geometry.hpp"
#include "osp/rng.hpp"

namespace osp::testing {

inline Vec random_vec(Rng& rng, Index n, double lo, double hi) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

// Random feasible point. Simplex-like sets get a Dirichlet(1) draw mapped
// into the restricted simplex.
inline Vec random_point(Rng& rng, const FeasibleSet& set) {
  if (set.is_simplex_like()) {
    Vec w(set.dimension());
    for (Index i = 0; i < w.size(); ++i) w(i) = -std::log(1.0 - rng.uniform());
    w /= w.sum();
    return embed_restricted(w, set.simplex_floor());
  }
  const Vec lo = set.lower_bounds(), hi = set.upper_bounds();
  Vec z(set.dimension());
  for (Index i = 0; i < z.size(); ++i) z(i) = rng.uniform(lo(i), hi(i));
  return project(set, z);
}

}  // namespace osp::testing
