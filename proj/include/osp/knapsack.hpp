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

// Online convex optimization with knapsack budgets: environment, hindsight
// benchmark, the primal-dual learner and the regularized saddle-point agent.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osp/geometry.hpp"
#include "osp/osp_algorithms.hpp"
#include "osp/payoffs.hpp"
#include "osp/rng.hpp"
#include "osp/saddle_solver.hpp"

namespace osp {

// One draw of (r_t, c_t) from the quadratic family
//   r(x)   = -x'Rx + u'x
//   c_i(x) =  x'C_i x + v_i'x
struct KnapsackRound {
  Mat reward_quad;
  Vec reward_lin;
  std::vector<Mat> cons_quad;
  std::vector<Vec> cons_lin;

  double reward(const Vec& x) const;
  Vec consumption(const Vec& x) const;
};

using KnapsackSampler = std::function<KnapsackRound(Rng&)>;
// x -> (E[r](x), E[c](x))
using ExpectationOracle = std::function<std::pair<double, Vec>(const Vec&)>;

struct KnapsackInstance {
  std::string name;
  FeasibleSet X = FeasibleSet::trivial();
  Index m = 0;
  Vec b;   // total budgets; +inf entries never bind
  long T = 0;
  KnapsackSampler sampler;
  Vec x0;  // null action
  Vec y_max;
  double G = kInfinity;  // Lipschitz bound of r_t and every c_{t,i} over X
  double D_X = 0.0;
  double max_round_reward = 0.0;
  // Expected round; set for instances whose expectation is itself a round.
  std::optional<KnapsackRound> expected_round;

  ExpectationOracle expectation_oracle() const;
};

// Checks dimensions, budgets, y_max and the null action on `samples` draws:
// r(x0) = 0, c(x0) = 0, and c >= 0 on the vertices and center of X.
void validate(const KnapsackInstance& inst, int samples = 64, std::uint64_t seed = 0);

// X = [0, 20], r = -x^2 + b_t x, c = ((a_t x)^2 + 50x, x),
// b_t ~ U[0, 20], a_t ~ U[0, 3]. Default budgets (200T, 4T).
KnapsackInstance make_sec8_knapsack(long T, std::optional<Vec> budgets = std::nullopt,
                                    std::optional<Vec> y_max = std::nullopt);

// Lagrangian L_t(x, y) = -r_t(x) - y'(b/T - c_t(x)) on X x prod [0, y_max].
FeasibleSet dual_set(const KnapsackInstance& inst);
PayoffFunction round_lagrangian(const KnapsackInstance& inst, const KnapsackRound& round);

struct KnapsackState {
  Vec cumulative_consumption;
  double cumulative_reward = 0.0;
  bool violated = false;
  long round = 0;
};

KnapsackState knapsack_init(const KnapsackInstance& inst);

struct EnvStep {
  KnapsackRound round;
  double r = 0.0;  // r_t(x_t)
  Vec c;           // c_t(x_t)
  double reward_collected = 0.0;
};

// Draws the round from `rng`, charges c_t(x_t) and credits r_t(x_t) only if
// the updated cumulative consumption is within budget.
EnvStep env_step(KnapsackState& state, const KnapsackInstance& inst, const Vec& x_t, Rng& rng);
// Same accounting for an already drawn round.
EnvStep env_apply(KnapsackState& state, const KnapsackInstance& inst, const Vec& x_t,
                  KnapsackRound round);


struct PDRFTLState {
  FeasibleSet X = FeasibleSet::trivial();
  FeasibleSet Y = FeasibleSet::trivial();
  Vec grad_sum_x;
  Vec grad_sum_y;
  double eta1 = 0.0;
  double eta2 = 0.0;
  Vec x;
  Vec y;
  long round = 0;
  // Largest gradient norms seen so far (for the follow-the-leader bounds).
  double max_grad_x = 0.0;
  double max_grad_y = 0.0;
};

std::pair<double, double> theorem8_step_sizes(const KnapsackInstance& inst);
// Closed-form regret bound for the step sizes above.
double theorem8_bound(const KnapsackInstance& inst);

PDRFTLState pd_rftl_init(const FeasibleSet& X, const FeasibleSet& Y, double eta1, double eta2);
PDRFTLState pd_rftl_init(const KnapsackInstance& inst);
void pd_rftl_step(PDRFTLState& state, const PayoffFunction& revealed);


class KnapsackAgent {
 public:
  virtual ~KnapsackAgent() = default;
  virtual std::string algorithm_id() const = 0;
  virtual const Vec& x() const = 0;
  virtual const Vec& y() const = 0;
  // Receives the full round after env_step.
  virtual void observe(const KnapsackRound& round) = 0;
  virtual std::vector<ParamRecord> parameters() const { return {}; }
};

std::unique_ptr<KnapsackAgent> make_pd_rftl_agent(const KnapsackInstance& inst);
std::unique_ptr<KnapsackAgent> make_pd_rftl_agent(const KnapsackInstance& inst, double eta1,
                                                  double eta2);

// SP-FTL on L_t + H||x||^2 - H||y||^2, H = T^(-1/6) unless given. H = 0 is
// rejected: the regularized payoff must be strongly convex-concave.
std::unique_ptr<KnapsackAgent> spftl_knapsack_agent(const KnapsackInstance& inst, long T,
                                                    std::optional<double> H = std::nullopt,
                                                    const SolverConfig& solver = {});

// max_x T E[r](x) s.t. T E[c](x) <= b, via the saddle of the expected
// Lagrangian. Quadratic-family expectations are solved exactly by the saddle
// solver; other oracles go through a closure payoff.
struct BenchmarkResult {
  double r_star = 0.0;
  Vec x_star;
  Vec y_star;
  double gap = 0.0;
};
BenchmarkResult benchmark(const KnapsackInstance& inst, const ExpectationOracle& oracle);
double benchmark_r_star(const KnapsackInstance& inst, const ExpectationOracle& oracle);
double benchmark_r_star(const KnapsackInstance& inst);

// Monte-Carlo expectation oracle from `samples` draws.
ExpectationOracle monte_carlo_oracle(const KnapsackInstance& inst, long samples,
                                     std::uint64_t seed);

struct KnapsackRunRecord {
  Vec x;
  Vec y;
  double r = 0.0;
  Vec c;
  double reward_collected = 0.0;
  bool violated = false;
};

struct KnapsackTrace {
  std::vector<KnapsackRunRecord> rounds;
  std::vector<KnapsackRound> draws;  // kept for decomposition checks
  double total_reward = 0.0;
  Vec total_consumption;
};

double knapsack_regret(const KnapsackTrace& trace, double r_star);

// Runs an agent for T rounds with the environment stream `rng`.
KnapsackTrace run_knapsack(const KnapsackInstance& inst, KnapsackAgent& agent, long T, Rng& rng,
                           bool keep_draws = false);

// Terms of the regret decomposition on a finished trace (needs draws).
struct RegretDecomposition {
  double dagger = 0.0;         // max_y sum L_t(x_t, y) - sum L_t(x_t, y_t)
  double double_dagger = 0.0;  // sum L_t(x_t, y_t) - min_x max_y sum L_t
  double hindsight_minmax = 0.0;
  double reward_lower_bound = 0.0;  // sum r_t(x_t) + min_y y' sum(b/T - c_t(x_t))
};
RegretDecomposition decompose_regret(const KnapsackInstance& inst, const KnapsackTrace& trace,
                                     const SolverConfig& solver = {});

}  // namespace osp
