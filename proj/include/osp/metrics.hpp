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

// Saddle-point regret and the two individual regrets, from stored traces or
// streamed round by round.

#include <optional>
#include <utility>
#include <vector>

#include "osp/geometry.hpp"
#include "osp/payoffs.hpp"
#include "osp/saddle_solver.hpp"

namespace osp {

struct BanditRecord {
  Index i = 0;
  Index j = 0;
  double observed = 0.0;
};

struct KnapsackRecord {
  double reward = 0.0;  // r_t(x_t)
  Vec consumption;      // c_t(x_t)
  double collected = 0.0;
  bool violated = false;
};

struct RoundRecord {
  Vec x;
  Vec y;
  double payoff = 0.0;  // L_t(x_t, y_t)
  std::optional<BanditRecord> bandit;
  std::optional<KnapsackRecord> knapsack;
};

struct RoundTrace {
  std::vector<RoundRecord> rounds;
  std::size_t size() const { return rounds.size(); }
};

struct SeriesPoint {
  long t = 0;
  double cum_payoff = 0.0;
  double cum_sp_regret = 0.0;
  double cum_ind_x = 0.0;
  double cum_ind_y = 0.0;
};

struct RegretReport {
  double sp_regret = 0.0;
  double ind_regret_x = 0.0;
  double ind_regret_y = 0.0;
  double hindsight_value = 0.0;
  double cum_payoff = 0.0;
  double hindsight_gap = 0.0;  // certified gap of the hindsight solve
  Vec x_star;
  Vec y_star;
  std::vector<SeriesPoint> series;
};

// |sum_t L_t(x_t, y_t) - min_x max_y sum_t L_t|.
double compute_sp_regret(const RoundTrace& trace, const std::vector<PayoffFunction>& history,
                         const FeasibleSet& X, const FeasibleSet& Y, const SolverConfig& cfg = {});

// (sum L_t(x_t,y_t) - min_x sum L_t(x, y_t),  max_y sum L_t(x_t, y) - sum L_t(x_t,y_t)).
std::pair<double, double> compute_individual_regrets(const RoundTrace& trace,
                                                     const std::vector<PayoffFunction>& history,
                                                     const FeasibleSet& X, const FeasibleSet& Y,
                                                     const SolverConfig& cfg = {});

// Streaming form: keeps O(1) folded sums for quadratic and bilinear families.
class RegretTracker {
 public:
  RegretTracker(FeasibleSet X, FeasibleSet Y, SolverConfig cfg = {});

  // Records L_t at the played pair; returns L_t(x_t, y_t).
  double add(const PayoffFunction& f, const Vec& x, const Vec& y);
  // Solves the prefix problems and appends a series point.
  const SeriesPoint& checkpoint();
  RegretReport finalize(const std::optional<std::pair<Vec, Vec>>& warm = std::nullopt);

  long rounds() const { return t_; }
  double cum_payoff() const { return cum_payoff_; }
  const std::vector<SeriesPoint>& series() const { return series_; }

 private:
  struct Values {
    double hindsight;
    double gap;
    double best_x;  // min_x sum L_t(x, y_t)
    double best_y;  // max_y sum L_t(x_t, y)
    Vec x_star;
    Vec y_star;
  };
  Values solve(const std::optional<std::pair<Vec, Vec>>& warm);

  FeasibleSet X_;
  FeasibleSet Y_;
  SolverConfig cfg_;
  PayoffAccumulator sum_;
  PayoffAccumulator sum_fix_y_;  // sum L_t(., y_t)
  PayoffAccumulator sum_fix_x_;  // sum L_t(x_t, .)
  double cum_payoff_ = 0.0;
  long t_ = 0;
  std::optional<std::pair<Vec, Vec>> last_star_;
  std::vector<SeriesPoint> series_;
};

}  // namespace osp
