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

#include "osp/osp_algorithms.hpp"

#include <cmath>

namespace osp {

SPFTLState spftl_init(const FeasibleSet& X, const FeasibleSet& Y, const SPFTLConfig& cfg) {
  validate(cfg.solver);
  return SPFTLState{X, Y, cfg, PayoffAccumulator(X.dimension(), Y.dimension()), center(X),
                    center(Y), 0, SaddleSolution{}};
}

std::pair<Vec, Vec> spftl_step(SPFTLState& state, const PayoffFunction& observed) {
  require_dim(observed.dim_x(), state.X.dimension(), "spftl_step x");
  require_dim(observed.dim_y(), state.Y.dimension(), "spftl_step y");
  if (!(observed.strong_H() > 0.0) && !state.cfg.allow_convex_concave) {
    throw PreconditionError("spftl_step: payoff is not strongly convex-concave; use SP-RFTL");
  }
  state.sum.add(observed);
  SolverConfig cfg = state.cfg.solver;
  cfg.warm_start = std::make_pair(state.x, state.y);
  state.last = solve_saddle(state.sum.snapshot(), state.X, state.Y, cfg);
  state.x = state.last.x_star;
  state.y = state.last.y_star;
  ++state.round;
  return {state.x, state.y};
}

double corollary1_eta(const FeasibleSet& X, const FeasibleSet& Y, double G, long T) {
  if (T < 2) throw PreconditionError("corollary1_eta: T must be >= 2");
  if (!(G > 0.0) || !std::isfinite(G)) throw PreconditionError("corollary1_eta: G must be finite > 0");
  const double D = std::max(max_norm(X), max_norm(Y));
  const double t = static_cast<double>(T);
  return D * std::sqrt(t) / (G * std::sqrt(std::log(t)));
}

SPRFTLState sprftl_init(const FeasibleSet& X, const FeasibleSet& Y, const SPRFTLConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw PreconditionError("SP-RFTL: eta must be > 0");
  SPFTLConfig inner_cfg{cfg.solver, false};
  return SPRFTLState{spftl_init(X, Y, inner_cfg),
                     cfg.reg_x ? *cfg.reg_x : Regularizer::squared_norm(X),
                     cfg.reg_y ? *cfg.reg_y : Regularizer::squared_norm(Y), cfg.eta};
}

std::pair<Vec, Vec> sprftl_step(SPRFTLState& state, const PayoffFunction& observed) {
  return spftl_step(state.inner,
                    regularize(observed, state.reg_x, state.reg_y, 1.0 / state.eta));
}

OGDAState ogda_init(const FeasibleSet& X, const FeasibleSet& Y, const OGDAConfig& cfg,
                    std::optional<std::pair<Vec, Vec>> start) {
  if (!(cfg.c > 0.0)) throw PreconditionError("OGDA: step constant must be > 0");
  OGDAState s{X, Y, cfg, center(X), center(Y), 0};
  if (start) {
    require_dim(start->first.size(), X.dimension(), "ogda_init x");
    require_dim(start->second.size(), Y.dimension(), "ogda_init y");
    s.x = project(X, start->first);
    s.y = project(Y, start->second);
  }
  return s;
}

std::pair<Vec, Vec> ogda_step(OGDAState& state, const PayoffFunction& observed) {
  ++state.round;
  const double eta = state.cfg.step(state.round);
  const Vec gx = observed.grad_x(state.x, state.y);
  const Vec gy = observed.grad_y(state.x, state.y);
  state.x = project(state.X, state.x - eta * gx);
  state.y = project(state.Y, state.y + eta * gy);
  return {state.x, state.y};
}

namespace {

class SPFTLLearner final : public OnlineLearner {
 public:
  explicit SPFTLLearner(SPFTLState s) : s_(std::move(s)) {}
  std::string algorithm_id() const override { return "sp_ftl"; }
  const Vec& x() const override { return s_.x; }
  const Vec& y() const override { return s_.y; }
  long round() const override { return s_.round; }
  void observe(const PayoffFunction& f) override { spftl_step(s_, f); }
  double last_solver_gap() const override { return s_.last.gap; }

 private:
  SPFTLState s_;
};

class SPRFTLLearner final : public OnlineLearner {
 public:
  explicit SPRFTLLearner(SPRFTLState s) : s_(std::move(s)) {}
  std::string algorithm_id() const override { return "sp_rftl"; }
  const Vec& x() const override { return s_.inner.x; }
  const Vec& y() const override { return s_.inner.y; }
  long round() const override { return s_.inner.round; }
  void observe(const PayoffFunction& f) override { sprftl_step(s_, f); }
  std::vector<ParamRecord> parameters() const override {
    return {{"eta", s_.eta, "D*sqrt(T)/(G*sqrt(ln T)) unless overridden"}};
  }
  double last_solver_gap() const override { return s_.inner.last.gap; }

 private:
  SPRFTLState s_;
};

class OGDALearner final : public OnlineLearner {
 public:
  explicit OGDALearner(OGDAState s) : s_(std::move(s)) {}
  std::string algorithm_id() const override { return "ogda"; }
  const Vec& x() const override { return s_.x; }
  const Vec& y() const override { return s_.y; }
  long round() const override { return s_.round; }
  void observe(const PayoffFunction& f) override { ogda_step(s_, f); }
  std::vector<ParamRecord> parameters() const override {
    const bool dim = s_.cfg.schedule == OGDAConfig::Schedule::kDiminishing;
    return {{dim ? "ogda_c" : "ogda_eta", s_.cfg.c, dim ? "eta_t = c/t" : "eta_t = eta"}};
  }

 private:
  OGDAState s_;
};

}  // namespace

std::unique_ptr<OnlineLearner> make_spftl(const FeasibleSet& X, const FeasibleSet& Y,
                                          const SPFTLConfig& cfg) {
  return std::make_unique<SPFTLLearner>(spftl_init(X, Y, cfg));
}

std::unique_ptr<OnlineLearner> make_sprftl(const FeasibleSet& X, const FeasibleSet& Y,
                                           const SPRFTLConfig& cfg) {
  return std::make_unique<SPRFTLLearner>(sprftl_init(X, Y, cfg));
}

std::unique_ptr<OnlineLearner> make_ogda(const FeasibleSet& X, const FeasibleSet& Y,
                                         const OGDAConfig& cfg) {
  return std::make_unique<OGDALearner>(ogda_init(X, Y, cfg));
}

}  // namespace osp
