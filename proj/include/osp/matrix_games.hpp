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

// Online matrix games over (restricted) simplexes: entropy-regularized
// follow-the-leader, the one-point payoff estimate and its bandit variant.

#include <functional>
#include <memory>
#include <vector>

#include "osp/osp_algorithms.hpp"
#include "osp/rng.hpp"

namespace osp {

// R(z) = sum z_i ln z_i + ln d; zero at the uniform point.
struct EntropyRegularizer {
  Index d;

  double value(const Vec& z) const;
  Vec grad(const Vec& z) const;
  // Bound on ||grad R||_inf over the restricted simplex with floor theta.
  static double lipschitz_bound(double theta);
};

struct OMGConfig {
  double eta = 1.0;
  double theta = 0.0;
  SolverConfig solver;
  bool theta_clamped = false;  // set by the defaults when the clamp fired
};

// eta = sqrt(T)/G, theta = exp(-eta G), clamped to min(1/d1, 1/d2)/2.
OMGConfig omg_theorem_defaults(Index d1, Index d2, long T, double G = 1.0);

struct OMGState {
  SPRFTLState inner;
  OMGConfig cfg;
};

OMGState omg_init(Index d1, Index d2, const OMGConfig& cfg);
// Entries of A must lie in [-1, 1].
std::pair<Vec, Vec> omg_rftl_step(OMGState& state, const Mat& A);

struct OnePointEstimate {
  Index i = 0;  // 0-based sampled row
  Index j = 0;  // 0-based sampled column
  Index d1 = 0;
  Index d2 = 0;
  double observed_entry = 0.0;
  double value = 0.0;  // observed_entry / (x_i y_j)

  Mat A_hat() const;
};

OnePointEstimate one_point_estimate(double observed_entry, Index i, Index j, const Vec& x,
                                    const Vec& y);

// Inverse CDF on cumulative sums with a given uniform draw u in [0, 1).
Index sample_with_uniform(const Vec& p, double u);
// Draws one uniform from the stream.
Index sample_from_distribution(const Vec& p, Rng& stream);

struct BanditConfig {
  double eta = 1.0;
  double delta = 0.1;
  std::uint64_t rng_seed = 0;
  SolverConfig solver;
  bool delta_clamped = false;
};

// delta = T^{-1/6} (clamped below min(1/d1, 1/d2)), eta = T^{1/6}.
BanditConfig bandit_theorem_defaults(Index d1, Index d2, long T, std::uint64_t seed);

struct BanditState {
  OMGState omg;
  BanditConfig cfg;
  Rng stream_x;
  Rng stream_y;
};

struct BanditStep {
  Index i = 0;
  Index j = 0;
  double observed = 0.0;
  Vec x_played;  // distributions the samples were drawn from
  Vec y_played;
};

using EntryOracle = std::function<double(Index, Index)>;

BanditState bandit_init(Index d1, Index d2, const BanditConfig& cfg);
BanditStep bandit_omg_step(BanditState& state, const EntryOracle& env);

std::unique_ptr<OnlineLearner> make_omg_rftl(Index d1, Index d2, const OMGConfig& cfg);

}  // namespace osp
