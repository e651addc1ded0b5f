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

// Scenario generators and the seeded experiment runner.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "osp/knapsack.hpp"
#include "osp/metrics.hpp"
#include "osp/osp_algorithms.hpp"

namespace osp {

class IncompatiblePairing : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

struct ScenarioSpec {
  std::string generator_id;
  long T = 1000;
  std::uint64_t seed = 0;
  // iid_quadratic / adversarial_quadratic
  double H = 1.0;
  double G = 5.0;
  int pattern = 0;
  // random_bilinear
  Index d1 = 2;
  Index d2 = 2;
  // constant_matrix
  Mat matrix;
  // ocowk_sec8
  std::optional<Vec> budgets;
  std::optional<Vec> y_max;
};

enum class ScenarioFamily { kConvexConcave, kMatrixGame, kKnapsack };

struct ScenarioRound {
  PayoffFunction payoff;
  std::optional<Mat> matrix;  // set for matrix games
};

// Lazily generated payoff sequence; next() yields round 1, 2, ...
class ScenarioStream {
 public:
  virtual ~ScenarioStream() = default;
  virtual ScenarioRound next() = 0;
};

struct Scenario {
  ScenarioSpec spec;
  ScenarioFamily family = ScenarioFamily::kConvexConcave;
  FeasibleSet X = FeasibleSet::trivial();
  FeasibleSet Y = FeasibleSet::trivial();
  double G = 0.0;  // Lipschitz bound valid for every round
  double H = 0.0;  // strong convexity-concavity valid for every round
  std::function<std::unique_ptr<ScenarioStream>(std::uint64_t seed)> open;
  std::optional<KnapsackInstance> knapsack;
};

// Quadratic-bilinear box half-width giving Lipschitz constant G at coupling 1.
double quadratic_box_halfwidth(double H, double G);

Scenario make_scenario(const ScenarioSpec& spec);
std::vector<std::string> scenario_ids();
std::vector<std::string> algorithm_ids();
// Overridable parameter names of an algorithm; throws on an unknown id.
std::vector<std::string> algorithm_param_names(const std::string& id);

// Materializes the first T rounds (tests and small runs only).
std::vector<PayoffFunction> generate_history(const Scenario& s, std::uint64_t seed);

struct AlgorithmConfig {
  std::string id;
  std::map<std::string, double> params;  // overrides of the default schedules
  SolverConfig solver;
};

struct RunOptions {
  bool keep_trace = false;
  long series_points = 0;  // checkpoints of the regret series; 0 for none
  int threads = 0;         // 0: OSP_LAB_THREADS or hardware concurrency
};

struct KnapsackSummary {
  double r_star = 0.0;
  double total_reward = 0.0;
  double regret = 0.0;
  double reward_ratio = 0.0;
  bool violated = false;
  Vec total_consumption;
};

struct RunResult {
  std::uint64_t seed = 0;
  RoundTrace trace;
  RegretReport report;
  std::vector<ParamRecord> params;
  std::optional<KnapsackSummary> knapsack;
  double max_round_gap = 0.0;  // worst per-round inner solver gap
};

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};
MeanStderr mean_stderr(const std::vector<double>& v);

struct ExperimentResult {
  ScenarioSpec spec;
  AlgorithmConfig algorithm;
  std::vector<RunResult> runs;  // ordered as the seed list
  MeanStderr sp_regret;
  MeanStderr ind_x;
  MeanStderr ind_y;
  double hindsight_mean = 0.0;
  std::optional<MeanStderr> knapsack_regret;
  std::optional<MeanStderr> reward_ratio;
  double wall_ms = 0.0;
};

RunResult run_single(const Scenario& scenario, const AlgorithmConfig& alg, std::uint64_t seed,
                     const RunOptions& opt = {});
ExperimentResult run_experiment(const ScenarioSpec& spec, const AlgorithmConfig& alg,
                                const std::vector<std::uint64_t>& seeds,
                                const RunOptions& opt = {});

// Worker count for `jobs` independent runs.
int worker_count(int requested, std::size_t jobs);

}  // namespace osp
