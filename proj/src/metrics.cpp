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

#include "osp/metrics.hpp"

#include <cmath>

namespace osp {

RegretTracker::RegretTracker(FeasibleSet X, FeasibleSet Y, SolverConfig cfg)
    : X_(std::move(X)),
      Y_(std::move(Y)),
      cfg_(cfg),
      sum_(X_.dimension(), Y_.dimension()),
      sum_fix_y_(X_.dimension(), 0),
      sum_fix_x_(0, Y_.dimension()) {
  validate(cfg_);
}

double RegretTracker::add(const PayoffFunction& f, const Vec& x, const Vec& y) {
  require_dim(f.dim_x(), X_.dimension(), "RegretTracker x");
  require_dim(f.dim_y(), Y_.dimension(), "RegretTracker y");
  const double v = f.value(x, y);
  if (!std::isfinite(v)) throw NumericalError("RegretTracker: non-finite payoff");
  cum_payoff_ += v;
  sum_.add(f);
  sum_fix_y_.add(f.fix_y(y));
  sum_fix_x_.add(f.fix_x(x));
  ++t_;
  return v;
}

RegretTracker::Values RegretTracker::solve(const std::optional<std::pair<Vec, Vec>>& warm) {
  if (t_ == 0) throw PreconditionError("RegretTracker: no rounds recorded");
  SolverConfig cfg = cfg_;
  if (warm) {
    cfg.warm_start = warm;
  } else if (last_star_) {
    cfg.warm_start = last_star_;
  }
  const SaddleSolution h = solve_saddle(sum_.snapshot(), X_, Y_, cfg);
  last_star_ = std::make_pair(h.x_star, h.y_star);
  const OneSidedSolution bx = minimize_over(sum_fix_y_.snapshot().term(), X_, cfg_);
  const OneSidedSolution by = maximize_over(sum_fix_x_.snapshot().term(), Y_, cfg_);
  return Values{h.value, h.gap, bx.value, by.value, h.x_star, h.y_star};
}

const SeriesPoint& RegretTracker::checkpoint() {
  const Values v = solve(std::nullopt);
  SeriesPoint p;
  p.t = t_;
  p.cum_payoff = cum_payoff_;
  p.cum_sp_regret = std::abs(cum_payoff_ - v.hindsight);
  p.cum_ind_x = cum_payoff_ - v.best_x;
  p.cum_ind_y = v.best_y - cum_payoff_;
  series_.push_back(p);
  return series_.back();
}

RegretReport RegretTracker::finalize(const std::optional<std::pair<Vec, Vec>>& warm) {
  const Values v = solve(warm);
  RegretReport r;
  r.hindsight_value = v.hindsight;
  r.hindsight_gap = v.gap;
  r.cum_payoff = cum_payoff_;
  r.sp_regret = std::abs(cum_payoff_ - v.hindsight);
  r.ind_regret_x = cum_payoff_ - v.best_x;
  r.ind_regret_y = v.best_y - cum_payoff_;
  r.x_star = v.x_star;
  r.y_star = v.y_star;
  r.series = series_;
  if (series_.empty() || series_.back().t != t_) {
    r.series.push_back({t_, cum_payoff_, r.sp_regret, r.ind_regret_x, r.ind_regret_y});
  }
  return r;
}

namespace {

RegretTracker replay(const RoundTrace& trace, const std::vector<PayoffFunction>& history,
                     const FeasibleSet& X, const FeasibleSet& Y, const SolverConfig& cfg) {
  if (trace.size() != history.size()) {
    throw DimensionError("regret: trace and history lengths differ");
  }
  RegretTracker tracker(X, Y, cfg);
  for (std::size_t t = 0; t < history.size(); ++t) {
    tracker.add(history[t], trace.rounds[t].x, trace.rounds[t].y);
  }
  return tracker;
}

}  // namespace

double compute_sp_regret(const RoundTrace& trace, const std::vector<PayoffFunction>& history,
                         const FeasibleSet& X, const FeasibleSet& Y, const SolverConfig& cfg) {
  return replay(trace, history, X, Y, cfg).finalize().sp_regret;
}

std::pair<double, double> compute_individual_regrets(const RoundTrace& trace,
                                                     const std::vector<PayoffFunction>& history,
                                                     const FeasibleSet& X, const FeasibleSet& Y,
                                                     const SolverConfig& cfg) {
  const RegretReport r = replay(trace, history, X, Y, cfg).finalize();
  return {r.ind_regret_x, r.ind_regret_y};
}

}  // namespace osp
