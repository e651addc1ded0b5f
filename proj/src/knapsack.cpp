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

#include "osp/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace osp {

double KnapsackRound::reward(const Vec& x) const {
  return -x.dot(reward_quad * x) + reward_lin.dot(x);
}

Vec KnapsackRound::consumption(const Vec& x) const {
  Vec c(static_cast<Index>(cons_lin.size()));
  for (std::size_t i = 0; i < cons_lin.size(); ++i) {
    c(static_cast<Index>(i)) = x.dot(cons_quad[i] * x) + cons_lin[i].dot(x);
  }
  return c;
}

ExpectationOracle KnapsackInstance::expectation_oracle() const {
  if (!expected_round) {
    throw PreconditionError("expectation_oracle: instance '" + name +
                            "' has no analytic expectation; use monte_carlo_oracle");
  }
  KnapsackRound e = *expected_round;
  return [e](const Vec& x) { return std::make_pair(e.reward(x), e.consumption(x)); };
}

namespace {

constexpr double kNullTol = 1e-12;

std::vector<Vec> probe_points(const FeasibleSet& X) {
  std::vector<Vec> pts = enumerate_vertices(X, 256);
  pts.push_back(center(X));
  return pts;
}

}  // namespace

void validate(const KnapsackInstance& inst, int samples, std::uint64_t seed) {
  const std::string who = "knapsack instance '" + inst.name + "'";
  if (inst.T < 1) throw PreconditionError(who + ": T must be >= 1");
  require_dim(inst.b.size(), inst.m, "knapsack budgets");
  require_dim(inst.y_max.size(), inst.m, "knapsack y_max");
  require_dim(inst.x0.size(), inst.X.dimension(), "knapsack null action");
  if ((inst.b.array() < 0.0).any() || inst.b.hasNaN()) {
    throw PreconditionError(who + ": budgets must be nonnegative");
  }
  if (!(inst.y_max.array() > 0.0).all() || !inst.y_max.allFinite()) {
    throw PreconditionError(who + ": y_max must be positive and finite");
  }
  if (!contains(inst.X, inst.x0)) throw PreconditionError(who + ": null action outside X");
  if (!inst.sampler) throw PreconditionError(who + ": missing sampler");
  Rng rng = Rng::substream(seed, 0x6b6e6170ULL);
  const auto pts = probe_points(inst.X);
  for (int s = 0; s < samples; ++s) {
    const KnapsackRound r = inst.sampler(rng);
    require_dim(static_cast<Index>(r.cons_lin.size()), inst.m, "sampled consumption count");
    if (std::abs(r.reward(inst.x0)) > kNullTol ||
        r.consumption(inst.x0).cwiseAbs().maxCoeff() > kNullTol) {
      throw PreconditionError(who + ": null action earns or consumes on a sampled round");
    }
    for (const auto& p : pts) {
      if ((r.consumption(p).array() < -kNullTol).any()) {
        throw PreconditionError(who + ": negative consumption on a sampled round");
      }
    }
  }
}

KnapsackInstance make_sec8_knapsack(long T, std::optional<Vec> budgets, std::optional<Vec> y_max) {
  if (T < 1) throw PreconditionError("make_sec8_knapsack: T must be >= 1");
  KnapsackInstance inst;
  inst.name = "ocowk_sec8";
  inst.X = FeasibleSet::interval(0.0, 20.0);
  inst.m = 2;
  inst.T = T;
  const double Td = static_cast<double>(T);
  inst.b = budgets ? *budgets : Vec((Vec(2) << 200.0 * Td, 4.0 * Td).finished());
  inst.x0 = Vec::Zero(1);
  inst.sampler = [](Rng& rng) {
    const double bt = rng.uniform(0.0, 20.0);
    const double at = rng.uniform(0.0, 3.0);
    KnapsackRound r;
    r.reward_quad = Mat::Identity(1, 1);
    r.reward_lin = Vec::Constant(1, bt);
    r.cons_quad = {Mat::Constant(1, 1, at * at), Mat::Zero(1, 1)};
    r.cons_lin = {Vec::Constant(1, 50.0), Vec::Constant(1, 1.0)};
    return r;
  };
  KnapsackRound e;
  e.reward_quad = Mat::Identity(1, 1);
  e.reward_lin = Vec::Constant(1, 10.0);
  e.cons_quad = {Mat::Constant(1, 1, 3.0), Mat::Zero(1, 1)};
  e.cons_lin = {Vec::Constant(1, 50.0), Vec::Constant(1, 1.0)};
  inst.expected_round = e;
  // max over x in [0,20], b_t in [0,20] of b_t x - x^2, at b_t = 20, x = 10.
  inst.max_round_reward = 100.0;
  // |r'| = |b_t - 2x| <= 40, c_1' = 2 a_t^2 x + 50 <= 410, c_2' = 1.
  inst.G = std::max({40.0, 2.0 * 9.0 * 20.0 + 50.0, 1.0});
  inst.D_X = diameter(inst.X);
  if (y_max) {
    inst.y_max = *y_max;
  } else {
    inst.y_max = Vec(2);
    for (Index i = 0; i < 2; ++i) inst.y_max(i) = inst.max_round_reward / (inst.b(i) / Td);
  }
  validate(inst);
  return inst;
}

FeasibleSet dual_set(const KnapsackInstance& inst) {
  return FeasibleSet::interval_product(inst.y_max);
}

PayoffFunction round_lagrangian(const KnapsackInstance& inst, const KnapsackRound& round) {
  if (!inst.b.allFinite()) {
    throw PreconditionError("round_lagrangian: infinite budgets have no Lagrangian");
  }
  return make_quadratic_knapsack_lagrangian(round.reward_quad, round.reward_lin, round.cons_quad,
                                            round.cons_lin, inst.b,
                                            static_cast<double>(inst.T), inst.X, dual_set(inst));
}

KnapsackState knapsack_init(const KnapsackInstance& inst) {
  KnapsackState s;
  s.cumulative_consumption = Vec::Zero(inst.m);
  return s;
}

EnvStep env_apply(KnapsackState& state, const KnapsackInstance& inst, const Vec& x_t,
                  KnapsackRound round) {
  require_dim(x_t.size(), inst.X.dimension(), "env_step action");
  if (!contains(inst.X, x_t)) throw PreconditionError("env_step: action outside X");
  EnvStep out;
  out.r = round.reward(x_t);
  out.c = round.consumption(x_t);
  require_dim(out.c.size(), inst.m, "env_step consumption");
  state.cumulative_consumption += out.c;
  // +inf budgets compare true.
  const bool within = (state.cumulative_consumption.array() <= inst.b.array()).all();
  out.reward_collected = within ? out.r : 0.0;
  if (!within) state.violated = true;
  state.cumulative_reward += out.reward_collected;
  ++state.round;
  out.round = std::move(round);
  return out;
}

EnvStep env_step(KnapsackState& state, const KnapsackInstance& inst, const Vec& x_t, Rng& rng) {
  require_dim(x_t.size(), inst.X.dimension(), "env_step action");
  if (!contains(inst.X, x_t)) throw PreconditionError("env_step: action outside X");
  return env_apply(state, inst, x_t, inst.sampler(rng));
}

// ---------------------------------------------------------------------------
// PD-RFTL

std::pair<double, double> theorem8_step_sizes(const KnapsackInstance& inst) {
  const double sT = std::sqrt(static_cast<double>(inst.T));
  const double ny = inst.y_max.norm();
  const double eta1 = inst.D_X / (inst.G * (1.0 + ny) * sT);
  const double gy = inst.b.norm() / static_cast<double>(inst.T) +
                    std::sqrt(static_cast<double>(inst.m) * inst.G * inst.D_X);
  const double eta2 = ny / (gy * sT);
  return {eta1, eta2};
}

double theorem8_bound(const KnapsackInstance& inst) {
  const double sT = std::sqrt(static_cast<double>(inst.T));
  const double gy = inst.b.norm() / static_cast<double>(inst.T) +
                    std::sqrt(static_cast<double>(inst.m) * inst.G * inst.D_X);
  return 5.0 * inst.G * (1.0 + inst.y_max.lpNorm<1>()) * inst.D_X * sT +
         5.0 * gy * inst.y_max.norm() * sT;
}

PDRFTLState pd_rftl_init(const FeasibleSet& X, const FeasibleSet& Y, double eta1, double eta2) {
  if (!(eta1 > 0.0) || !(eta2 > 0.0) || !std::isfinite(eta1) || !std::isfinite(eta2)) {
    throw PreconditionError("pd_rftl_init: step sizes must be positive and finite");
  }
  PDRFTLState s;
  s.X = X;
  s.Y = Y;
  s.grad_sum_x = Vec::Zero(X.dimension());
  s.grad_sum_y = Vec::Zero(Y.dimension());
  s.eta1 = eta1;
  s.eta2 = eta2;
  s.x = project(X, s.grad_sum_x);
  s.y = project(Y, s.grad_sum_y);
  return s;
}

PDRFTLState pd_rftl_init(const KnapsackInstance& inst) {
  const auto [e1, e2] = theorem8_step_sizes(inst);
  return pd_rftl_init(inst.X, dual_set(inst), e1, e2);
}

void pd_rftl_step(PDRFTLState& state, const PayoffFunction& revealed) {
  require_dim(revealed.dim_x(), state.X.dimension(), "pd_rftl_step x");
  require_dim(revealed.dim_y(), state.Y.dimension(), "pd_rftl_step y");
  // f_t = L_t(., y_t) and g_t = L_t(x_t, .) share the evaluation point.
  const Vec gx = revealed.grad_x(state.x, state.y);
  const Vec gy = revealed.grad_y(state.x, state.y);
  if (!gx.allFinite() || !gy.allFinite()) throw NumericalError("pd_rftl_step: non-finite gradient");
  state.max_grad_x = std::max(state.max_grad_x, gx.norm());
  state.max_grad_y = std::max(state.max_grad_y, gy.norm());
  state.grad_sum_x += gx;
  state.grad_sum_y += gy;
  state.x = project(state.X, Vec(-state.eta1 * state.grad_sum_x));
  state.y = project(state.Y, Vec(state.eta2 * state.grad_sum_y));
  ++state.round;
}

namespace {

class PDRFTLAgent final : public KnapsackAgent {
 public:
  PDRFTLAgent(const KnapsackInstance& inst, double eta1, double eta2)
      : inst_(inst), state_(pd_rftl_init(inst.X, dual_set(inst), eta1, eta2)) {}

  std::string algorithm_id() const override { return "pd_rftl"; }
  const Vec& x() const override { return state_.x; }
  const Vec& y() const override { return state_.y; }
  void observe(const KnapsackRound& round) override {
    pd_rftl_step(state_, round_lagrangian(inst_, round));
  }
  std::vector<ParamRecord> parameters() const override {
    return {{"eta1", state_.eta1, "D_X / (G (1 + ||y_max||_2) sqrt(T))"},
            {"eta2", state_.eta2, "||y_max||_2 / ((||b||_2 / T + sqrt(m G D_X)) sqrt(T))"}};
  }

 private:
  KnapsackInstance inst_;
  PDRFTLState state_;
};

class SPFTLKnapsackAgent final : public KnapsackAgent {
 public:
  SPFTLKnapsackAgent(const KnapsackInstance& inst, double H, const SolverConfig& solver)
      : inst_(inst),
        H_(H),
        reg_x_(Regularizer::squared_norm(inst.X)),
        reg_y_(Regularizer::squared_norm(dual_set(inst))),
        state_(spftl_init(inst.X, dual_set(inst), SPFTLConfig{solver, false})) {
    // Play the null action until the first round is revealed.
    state_.x = inst.x0;
    state_.y = Vec::Zero(inst.m);
  }

  std::string algorithm_id() const override { return "sp_ftl_knapsack"; }
  const Vec& x() const override { return state_.x; }
  const Vec& y() const override { return state_.y; }
  void observe(const KnapsackRound& round) override {
    spftl_step(state_, regularize(round_lagrangian(inst_, round), reg_x_, reg_y_, H_));
  }
  std::vector<ParamRecord> parameters() const override {
    return {{"H", H_, "T^(-1/6)"}};
  }

 private:
  KnapsackInstance inst_;
  double H_;
  Regularizer reg_x_;
  Regularizer reg_y_;
  SPFTLState state_;
};

}  // namespace

std::unique_ptr<KnapsackAgent> make_pd_rftl_agent(const KnapsackInstance& inst) {
  const auto [e1, e2] = theorem8_step_sizes(inst);
  return make_pd_rftl_agent(inst, e1, e2);
}

std::unique_ptr<KnapsackAgent> make_pd_rftl_agent(const KnapsackInstance& inst, double eta1,
                                                  double eta2) {
  return std::make_unique<PDRFTLAgent>(inst, eta1, eta2);
}

std::unique_ptr<KnapsackAgent> spftl_knapsack_agent(const KnapsackInstance& inst, long T,
                                                    std::optional<double> H,
                                                    const SolverConfig& solver) {
  if (T < 1) throw PreconditionError("spftl_knapsack_agent: T must be >= 1");
  const double h = H ? *H : std::pow(static_cast<double>(T), -1.0 / 6.0);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw PreconditionError(
        "spftl_knapsack_agent: H must be > 0 (the payoff must be strongly convex-concave)");
  }
  return std::make_unique<SPFTLKnapsackAgent>(inst, h, solver);
}

// ---------------------------------------------------------------------------
// Benchmark

namespace {

// Per-round scaling: min_x max_y -E r(x) - y'(b/T - E c(x)); r* is -T times
// the value.
PayoffFunction expected_lagrangian(const KnapsackInstance& inst, const ExpectationOracle& oracle) {
  const Vec bT = inst.b / static_cast<double>(inst.T);
  const Index n = inst.X.dimension();
  auto value = [oracle, bT](const Vec& x, const Vec& y) {
    const auto [r, c] = oracle(x);
    return -r - y.dot(bT - c);
  };
  // Central differences; the oracle is only assumed smooth.
  auto gx = [oracle, bT, n](const Vec& x, const Vec& y) {
    Vec g(n);
    for (Index i = 0; i < n; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const auto [rp, cp] = oracle(xp);
      const auto [rm, cm] = oracle(xm);
      g(i) = (-(rp - rm) + y.dot(cp - cm)) / (2.0 * h);
    }
    return g;
  };
  auto gy = [oracle, bT](const Vec& x, const Vec&) {
    const auto [r, c] = oracle(x);
    (void)r;
    return Vec(c - bT);
  };
  auto term = std::make_shared<ClosureTerm>(n, inst.m, value, gx, gy);
  return PayoffFunction(term, kInfinity, 0.0, NormTag::L2);
}

}  // namespace

BenchmarkResult benchmark(const KnapsackInstance& inst, const ExpectationOracle& oracle) {
  if (!inst.b.allFinite()) throw PreconditionError("benchmark: budgets must be finite");
  const double Td = static_cast<double>(inst.T);
  const Vec bT = inst.b / Td;
  SolverConfig cfg;
  cfg.tol_gap = 1e-11;
  cfg.max_iters = 200000;
  // A dual box that is too small turns the constraint into a penalty; grow it
  // until the primal point is feasible or the multipliers are interior.
  Vec ymax = inst.y_max;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const FeasibleSet Y = FeasibleSet::interval_product(ymax);
    PayoffFunction L = inst.expected_round
                           ? make_quadratic_knapsack_lagrangian(
                                 inst.expected_round->reward_quad, inst.expected_round->reward_lin,
                                 inst.expected_round->cons_quad, inst.expected_round->cons_lin,
                                 inst.b, Td, inst.X, Y)
                           : expected_lagrangian(inst, oracle);
    const SaddleSolution sol = solve_saddle(L, inst.X, Y, cfg);
    const Vec c = oracle(sol.x_star).second;
    const double slack = 1e-9 * std::max(1.0, bT.cwiseAbs().maxCoeff());
    const bool feasible = ((c - bT).array() <= slack).all();
    const bool interior = ((ymax - sol.y_star).array() > 1e-9 * ymax.array()).all();
    if (feasible || interior) {
      BenchmarkResult out;
      out.x_star = sol.x_star;
      out.y_star = sol.y_star;
      out.gap = sol.gap * Td;
      out.r_star = -Td * sol.value;
      return out;
    }
    ymax *= 4.0;
  }
  throw NumericalError("benchmark: no feasible saddle found; is the null action feasible?");
}

double benchmark_r_star(const KnapsackInstance& inst, const ExpectationOracle& oracle) {
  return benchmark(inst, oracle).r_star;
}

double benchmark_r_star(const KnapsackInstance& inst) {
  return benchmark_r_star(inst, inst.expectation_oracle());
}

ExpectationOracle monte_carlo_oracle(const KnapsackInstance& inst, long samples,
                                     std::uint64_t seed) {
  if (samples < 1) throw PreconditionError("monte_carlo_oracle: samples must be >= 1");
  Rng rng = Rng::substream(seed, 0x6d63ULL);
  KnapsackRound mean = inst.sampler(rng);
  for (long s = 1; s < samples; ++s) {
    const KnapsackRound r = inst.sampler(rng);
    mean.reward_quad += r.reward_quad;
    mean.reward_lin += r.reward_lin;
    for (std::size_t i = 0; i < mean.cons_lin.size(); ++i) {
      mean.cons_quad[i] += r.cons_quad[i];
      mean.cons_lin[i] += r.cons_lin[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(samples);
  mean.reward_quad *= inv;
  mean.reward_lin *= inv;
  for (std::size_t i = 0; i < mean.cons_lin.size(); ++i) {
    mean.cons_quad[i] *= inv;
    mean.cons_lin[i] *= inv;
  }
  return [mean](const Vec& x) { return std::make_pair(mean.reward(x), mean.consumption(x)); };
}

// ---------------------------------------------------------------------------
// Runs and accounting

double knapsack_regret(const KnapsackTrace& trace, double r_star) {
  return r_star - trace.total_reward;
}

KnapsackTrace run_knapsack(const KnapsackInstance& inst, KnapsackAgent& agent, long T, Rng& rng,
                           bool keep_draws) {
  KnapsackState state = knapsack_init(inst);
  KnapsackTrace trace;
  trace.rounds.reserve(static_cast<std::size_t>(T));
  for (long t = 0; t < T; ++t) {
    KnapsackRunRecord rec;
    rec.x = agent.x();
    rec.y = agent.y();
    EnvStep step = env_step(state, inst, rec.x, rng);
    rec.r = step.r;
    rec.c = step.c;
    rec.reward_collected = step.reward_collected;
    rec.violated = state.violated;
    agent.observe(step.round);
    if (keep_draws) trace.draws.push_back(std::move(step.round));
    trace.rounds.push_back(std::move(rec));
  }
  trace.total_reward = state.cumulative_reward;
  trace.total_consumption = state.cumulative_consumption;
  return trace;
}

RegretDecomposition decompose_regret(const KnapsackInstance& inst, const KnapsackTrace& trace,
                                     const SolverConfig& solver) {
  if (trace.draws.size() != trace.rounds.size()) {
    throw PreconditionError("decompose_regret: trace was recorded without draws");
  }
  const Vec bT = inst.b / static_cast<double>(inst.T);
  const FeasibleSet Y = dual_set(inst);
  double played = 0.0;  // sum L_t(x_t, y_t)
  double rewards = 0.0;
  Vec excess = Vec::Zero(inst.m);  // sum (c_t(x_t) - b/T)
  for (const auto& rec : trace.rounds) {
    played += -rec.r - rec.y.dot(bT - rec.c);
    rewards += rec.r;
    excess += rec.c - bT;
  }
  // Linear in y: the maximizer sits at y_max on positive excess.
  const double best_y = -rewards + inst.y_max.dot(excess.cwiseMax(0.0));

  PayoffAccumulator acc(inst.X.dimension(), inst.m);
  for (const auto& d : trace.draws) acc.add(round_lagrangian(inst, d));
  const SaddleSolution h = solve_saddle(acc.snapshot(), inst.X, Y, solver);

  RegretDecomposition out;
  out.dagger = best_y - played;
  out.double_dagger = played - h.value;
  out.hindsight_minmax = h.value;
  out.reward_lower_bound = -best_y;
  return out;
}

}  // namespace osp
