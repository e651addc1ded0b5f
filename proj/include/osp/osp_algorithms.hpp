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

// Online play over general convex compact sets: follow-the-leader on the
// saddle point of the running sum (SP-FTL), its regularized variant (SP-RFTL)
// and projected online gradient descent-ascent (OGDA).

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osp/geometry.hpp"
#include "osp/payoffs.hpp"
#include "osp/saddle_solver.hpp"

namespace osp {

// Named parameter recorded into run metadata ("eta", 0.5, "sqrt(T)/G").
struct ParamRecord {
  std::string name;
  double value;
  std::string formula;
};

// Full-information learner pair: both players act, then the payoff is revealed.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;
  virtual std::string algorithm_id() const = 0;
  virtual const Vec& x() const = 0;
  virtual const Vec& y() const = 0;
  virtual long round() const = 0;
  virtual void observe(const PayoffFunction& observed) = 0;
  virtual std::vector<ParamRecord> parameters() const { return {}; }
  // Gap of the last inner saddle solve (0 for solver-free updates).
  virtual double last_solver_gap() const { return 0.0; }
};

// ---------------------------------------------------------------------------
// SP-FTL.

struct SPFTLConfig {
  SolverConfig solver;
  // Accept merely convex-concave payoffs (the running-sum saddle may then be
  // non-unique; the solver's deterministic selection is used).
  bool allow_convex_concave = false;
};

struct SPFTLState {
  FeasibleSet X;
  FeasibleSet Y;
  SPFTLConfig cfg;
  PayoffAccumulator sum;
  Vec x;
  Vec y;
  long round = 0;
  SaddleSolution last;
};

SPFTLState spftl_init(const FeasibleSet& X, const FeasibleSet& Y, const SPFTLConfig& cfg = {});
// Adds `observed` to the running sum and moves to its saddle point.
std::pair<Vec, Vec> spftl_step(SPFTLState& state, const PayoffFunction& observed);

// ---------------------------------------------------------------------------
// SP-RFTL.

struct SPRFTLConfig {
  double eta = 0.0;
  std::optional<Regularizer> reg_x;  // default: squared l2 norm on X
  std::optional<Regularizer> reg_y;  // default: squared l2 norm on Y
  SolverConfig solver;
};

// D sqrt(T) / (G sqrt(ln T)) with D = max(max ||x||_2, max ||y||_2).
double corollary1_eta(const FeasibleSet& X, const FeasibleSet& Y, double G, long T);

struct SPRFTLState {
  SPFTLState inner;
  Regularizer reg_x;
  Regularizer reg_y;
  double eta;
};

SPRFTLState sprftl_init(const FeasibleSet& X, const FeasibleSet& Y, const SPRFTLConfig& cfg);
std::pair<Vec, Vec> sprftl_step(SPRFTLState& state, const PayoffFunction& observed);

// ---------------------------------------------------------------------------
// OGDA.

struct OGDAConfig {
  enum class Schedule { kDiminishing, kConstant };
  Schedule schedule = Schedule::kDiminishing;
  double c = 1.0;  // eta_t = c / t, or eta_t = c when constant

  static OGDAConfig diminishing(double c) { return {Schedule::kDiminishing, c}; }
  static OGDAConfig constant(double eta) { return {Schedule::kConstant, eta}; }
  double step(long t) const {
    return schedule == Schedule::kDiminishing ? c / static_cast<double>(t) : c;
  }
};

struct OGDAState {
  FeasibleSet X;
  FeasibleSet Y;
  OGDAConfig cfg;
  Vec x;
  Vec y;
  long round = 0;
};

OGDAState ogda_init(const FeasibleSet& X, const FeasibleSet& Y, const OGDAConfig& cfg,
                    std::optional<std::pair<Vec, Vec>> start = std::nullopt);
// One projected step on the payoff of the round just played at (x, y).
std::pair<Vec, Vec> ogda_step(OGDAState& state, const PayoffFunction& observed);

// ---------------------------------------------------------------------------
// Learner adapters.

std::unique_ptr<OnlineLearner> make_spftl(const FeasibleSet& X, const FeasibleSet& Y,
                                          const SPFTLConfig& cfg = {});
std::unique_ptr<OnlineLearner> make_sprftl(const FeasibleSet& X, const FeasibleSet& Y,
                                           const SPRFTLConfig& cfg);
std::unique_ptr<OnlineLearner> make_ogda(const FeasibleSet& X, const FeasibleSet& Y,
                                         const OGDAConfig& cfg);

}  // namespace osp
