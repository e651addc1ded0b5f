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

#include "osp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "osp/matrix_games.hpp"

namespace osp {

namespace {

constexpr std::uint64_t kScenarioStream = 101;
constexpr std::uint64_t kEnvStream = 202;
constexpr std::uint64_t kAlgStream = 303;

Mat matching_pennies() { return (Mat(2, 2) << 1, -1, -1, 1).finished(); }

class FnStream final : public ScenarioStream {
 public:
  explicit FnStream(std::function<ScenarioRound(long)> fn) : fn_(std::move(fn)) {}
  ScenarioRound next() override { return fn_(++t_); }

 private:
  std::function<ScenarioRound(long)> fn_;
  long t_ = 0;
};

ScenarioRound matrix_round(const Mat& A) { return ScenarioRound{make_bilinear(A), A}; }

// (p_t, q_t) for the oblivious adversarial patterns.
std::pair<double, double> adversarial_centers(int pattern, long t, long T, double B) {
  switch (pattern) {
    case 0: {  // alternate every round
      const double s = (t % 2 == 0) ? 1.0 : -1.0;
      return {s * B, -s * B};
    }
    case 1: {  // one switch at T/3
      const double s = (t <= T / 3) ? 1.0 : -1.0;
      return {s * B, -s * B};
    }
    case 2: {  // square wave, period 100
      const double s = ((t - 1) / 50) % 2 == 0 ? 1.0 : -1.0;
      return {s * B, s * B};
    }
    case 3: {  // blocks of doubling length, alternating
      long len = 1, start = 1, k = 0;
      while (t >= start + len) {
        start += len;
        len *= 2;
        ++k;
      }
      const double s = k % 2 == 0 ? 1.0 : -1.0;
      return {s * B, -s * B};
    }
    case 4: {  // incommensurate rotation
      const double a = 0.1 * static_cast<double>(t);
      return {B * std::cos(a), B * std::sin(std::sqrt(2.0) * a)};
    }
    default:
      throw PreconditionError("adversarial_quadratic: pattern must be in 0..4");
  }
}

void require_even(const ScenarioSpec& spec) {
  if (spec.T % 2 != 0) {
    throw PreconditionError(spec.generator_id + ": T must be divisible by 2");
  }
}

}  // namespace

double quadratic_box_halfwidth(double H, double G) {
  if (!(H > 0.0) || !(G > 0.0)) throw PreconditionError("quadratic box: need H > 0 and G > 0");
  // |grad_x| <= H|x - p| + |y| <= (2H + 1)B on [-B, B]^2, same for y.
  return G / (std::sqrt(2.0) * (2.0 * H + 1.0));
}

std::vector<std::string> scenario_ids() {
  return {"theorem6_scenario1", "theorem6_scenario2", "sec8_instance1",  "sec8_instance2",
          "iid_quadratic",      "adversarial_quadratic", "random_convex_concave",
          "random_bilinear",    "constant_matrix",   "ocowk_sec8"};
}

std::vector<std::string> algorithm_ids() {
  return {"sp_ftl", "sp_rftl", "ogda", "omg_rftl", "bandit_omg_rftl", "pd_rftl",
          "sp_ftl_knapsack"};
}

Scenario make_scenario(const ScenarioSpec& spec) {
  if (spec.T < 1) throw PreconditionError("scenario: T must be >= 1");
  Scenario s;
  s.spec = spec;
  const long T = spec.T;
  const std::string& id = spec.generator_id;

  if (id == "theorem6_scenario1" || id == "theorem6_scenario2") {
    require_even(spec);
    s.family = ScenarioFamily::kMatrixGame;
    s.X = FeasibleSet::simplex(2);
    s.Y = FeasibleSet::simplex(2);
    s.G = 1.0;
    const Mat second = id == "theorem6_scenario1" ? Mat(Mat::Zero(2, 2))
                                                  : Mat((Mat(2, 2) << 1, -1, 1, -1).finished());
    s.open = [T, second](std::uint64_t) {
      return std::make_unique<FnStream>([T, second](long t) {
        return matrix_round(t <= T / 2 ? matching_pennies() : second);
      });
    };
    return s;
  }
  if (id == "sec8_instance1" || id == "sec8_instance2") {
    s.family = ScenarioFamily::kConvexConcave;
    s.X = FeasibleSet::interval(-10.0, 10.0);
    s.Y = FeasibleSet::interval(-10.0, 10.0);
    const double q2 = id == "sec8_instance1" ? -2.0 : 3.0;
    const PayoffFunction first = make_quadratic_bilinear(1.0, 1.0, 2.0, -1.0, s.X, s.Y);
    const PayoffFunction second = make_quadratic_bilinear(1.0, 1.0, -1.0, q2, s.X, s.Y);
    s.G = std::max(first.lipschitz_G(), second.lipschitz_G());
    s.H = 1.0;
    s.open = [T, first, second](std::uint64_t) {
      return std::make_unique<FnStream>([T, first, second](long t) {
        return ScenarioRound{t <= T / 3 ? first : second, std::nullopt};
      });
    };
    return s;
  }
  if (id == "iid_quadratic" || id == "adversarial_quadratic") {
    const double B = quadratic_box_halfwidth(spec.H, spec.G);
    s.family = ScenarioFamily::kConvexConcave;
    s.X = FeasibleSet::interval(-B, B);
    s.Y = FeasibleSet::interval(-B, B);
    s.G = spec.G;
    s.H = spec.H;
    const FeasibleSet X = s.X;
    const double H = spec.H;
    if (id == "iid_quadratic") {
      s.open = [X, B, H](std::uint64_t seed) {
        auto rng = std::make_shared<Rng>(Rng::substream(seed, kScenarioStream));
        return std::make_unique<FnStream>([X, B, H, rng](long) {
          const double p = rng->uniform(-B, B);
          const double q = rng->uniform(-B, B);
          return ScenarioRound{make_quadratic_bilinear(1.0, H, p, q, X, X), std::nullopt};
        });
      };
    } else {
      adversarial_centers(spec.pattern, 1, T, B);  // validates the pattern
      const int pattern = spec.pattern;
      s.open = [X, B, H, T, pattern](std::uint64_t) {
        return std::make_unique<FnStream>([X, B, H, T, pattern](long t) {
          const auto [p, q] = adversarial_centers(pattern, t, T, B);
          return ScenarioRound{make_quadratic_bilinear(1.0, H, p, q, X, X), std::nullopt};
        });
      };
    }
    return s;
  }
  if (id == "random_convex_concave") {
    // a_t x y + u_t x + v_t y on [-1, 1]^2, all coefficients i.i.d. U[-1/2, 1/2].
    s.family = ScenarioFamily::kConvexConcave;
    s.X = FeasibleSet::interval(-1.0, 1.0);
    s.Y = FeasibleSet::interval(-1.0, 1.0);
    const FeasibleSet X = s.X;
    s.G = std::sqrt(2.0);  // |a y + u| <= 1 in each block
    s.open = [X](std::uint64_t seed) {
      auto rng = std::make_shared<Rng>(Rng::substream(seed, kScenarioStream));
      return std::make_unique<FnStream>([X, rng](long) {
        const double a = rng->uniform(-0.5, 0.5);
        const double u = rng->uniform(-0.5, 0.5);
        const double v = rng->uniform(-0.5, 0.5);
        return ScenarioRound{make_quadratic_form(Mat::Zero(1, 1), Mat::Constant(1, 1, a),
                                                 Mat::Zero(1, 1), Vec::Constant(1, u),
                                                 Vec::Constant(1, v), 0.0, X, X),
                             std::nullopt};
      });
    };
    return s;
  }
  if (id == "random_bilinear") {
    if (spec.d1 < 2 || spec.d2 < 2) throw PreconditionError("random_bilinear: d1, d2 >= 2");
    s.family = ScenarioFamily::kMatrixGame;
    s.X = FeasibleSet::simplex(spec.d1);
    s.Y = FeasibleSet::simplex(spec.d2);
    s.G = 1.0;
    const Index d1 = spec.d1, d2 = spec.d2;
    s.open = [d1, d2](std::uint64_t seed) {
      auto rng = std::make_shared<Rng>(Rng::substream(seed, kScenarioStream));
      return std::make_unique<FnStream>([d1, d2, rng](long) {
        Mat A(d1, d2);
        // Column-major fill keeps the draw order fixed.
        for (Index j = 0; j < d2; ++j) {
          for (Index i = 0; i < d1; ++i) A(i, j) = (rng->next_u64() >> 63) ? 1.0 : -1.0;
        }
        return matrix_round(A);
      });
    };
    return s;
  }
  if (id == "constant_matrix") {
    if (spec.matrix.rows() < 2 || spec.matrix.cols() < 2) {
      throw PreconditionError("constant_matrix: matrix must be at least 2x2");
    }
    if (spec.matrix.cwiseAbs().maxCoeff() > 1.0) {
      throw PreconditionError("constant_matrix: entries must lie in [-1, 1]");
    }
    s.family = ScenarioFamily::kMatrixGame;
    s.X = FeasibleSet::simplex(spec.matrix.rows());
    s.Y = FeasibleSet::simplex(spec.matrix.cols());
    s.G = 1.0;
    const Mat A = spec.matrix;
    s.open = [A](std::uint64_t) {
      return std::make_unique<FnStream>([A](long) { return matrix_round(A); });
    };
    return s;
  }
  if (id == "ocowk_sec8") {
    s.family = ScenarioFamily::kKnapsack;
    s.knapsack = make_sec8_knapsack(T, spec.budgets, spec.y_max);
    s.X = s.knapsack->X;
    s.Y = dual_set(*s.knapsack);
    s.G = s.knapsack->G;
    s.open = [](std::uint64_t) -> std::unique_ptr<ScenarioStream> {
      throw PreconditionError("ocowk_sec8: rounds are drawn by the environment");
    };
    return s;
  }
  throw PreconditionError("unknown scenario '" + id + "'");
}

std::vector<PayoffFunction> generate_history(const Scenario& s, std::uint64_t seed) {
  auto stream = s.open(seed);
  std::vector<PayoffFunction> out;
  out.reserve(static_cast<std::size_t>(s.spec.T));
  for (long t = 0; t < s.spec.T; ++t) out.push_back(stream->next().payoff);
  return out;
}

std::vector<std::string> algorithm_param_names(const std::string& id) {
  if (id == "sp_ftl") return {"allow_convex_concave"};
  if (id == "sp_rftl") return {"eta"};
  if (id == "ogda") return {"constant", "c"};
  if (id == "omg_rftl") return {"eta", "theta"};
  if (id == "bandit_omg_rftl") return {"eta", "delta"};
  if (id == "pd_rftl") return {"eta1", "eta2"};
  if (id == "sp_ftl_knapsack") return {"H"};
  throw IncompatiblePairing("unknown algorithm '" + id + "'");
}

MeanStderr mean_stderr(const std::vector<double>& v) {
  MeanStderr r;
  if (v.empty()) return r;
  double sum = 0.0;
  for (double x : v) sum += x;
  r.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    r.stderr_ = sd / std::sqrt(static_cast<double>(v.size()));
  }
  return r;
}

namespace {

// Default schedule unless overridden; records where the value came from.
double param(const AlgorithmConfig& alg, const std::string& key, double dflt,
             const std::string& formula, std::vector<ParamRecord>& rec) {
  auto it = alg.params.find(key);
  if (it != alg.params.end()) {
    rec.push_back({key, it->second, "override"});
    return it->second;
  }
  rec.push_back({key, dflt, formula});
  return dflt;
}

void check_pairing(const Scenario& s, const std::string& id) {
  const bool knap_alg = id == "pd_rftl" || id == "sp_ftl_knapsack";
  const bool matrix_alg = id == "omg_rftl" || id == "bandit_omg_rftl";
  const auto known = algorithm_ids();
  if (std::find(known.begin(), known.end(), id) == known.end()) {
    throw IncompatiblePairing("unknown algorithm '" + id + "'");
  }
  if ((s.family == ScenarioFamily::kKnapsack) != knap_alg) {
    throw IncompatiblePairing("algorithm '" + id + "' cannot run on scenario '" +
                              s.spec.generator_id + "' (knapsack scenarios need knapsack agents)");
  }
  if (matrix_alg && s.family != ScenarioFamily::kMatrixGame) {
    throw IncompatiblePairing("algorithm '" + id + "' needs a matrix-game scenario, got '" +
                              s.spec.generator_id + "'");
  }
}

std::unique_ptr<OnlineLearner> make_learner(const Scenario& s, const AlgorithmConfig& alg,
                                            std::vector<ParamRecord>& rec) {
  const long T = s.spec.T;
  if (alg.id == "sp_ftl") {
    SPFTLConfig cfg;
    cfg.solver = alg.solver;
    cfg.allow_convex_concave =
        param(alg, "allow_convex_concave", s.H > 0.0 ? 0.0 : 1.0, "1 when H = 0", rec) != 0.0;
    return make_spftl(s.X, s.Y, cfg);
  }
  if (alg.id == "sp_rftl") {
    SPRFTLConfig cfg;
    cfg.solver = alg.solver;
    cfg.eta = param(alg, "eta", corollary1_eta(s.X, s.Y, s.G, T),
                    "D sqrt(T) / (G sqrt(ln T))", rec);
    return make_sprftl(s.X, s.Y, cfg);
  }
  if (alg.id == "ogda") {
    // 1/(H t) on strongly convex-concave scenarios. Matrix games have H = 0
    // and a c/t schedule freezes after a switch, so they use a constant step.
    const bool strong = s.H > 0.0;
    const double schedule =
        param(alg, "constant", strong ? 0.0 : 1.0, "0: c/t, 1: constant c", rec);
    const double c = param(alg, "c", strong ? 1.0 / s.H : 0.1, strong ? "1/H" : "0.1", rec);
    if (!(c > 0.0)) throw PreconditionError("ogda: c must be > 0");
    const OGDAConfig cfg = schedule != 0.0 ? OGDAConfig::constant(c) : OGDAConfig::diminishing(c);
    return make_ogda(s.X, s.Y, cfg);
  }
  if (alg.id == "omg_rftl") {
    OMGConfig cfg = omg_theorem_defaults(s.X.dimension(), s.Y.dimension(), T, s.G);
    cfg.solver = alg.solver;
    cfg.eta = param(alg, "eta", cfg.eta, "sqrt(T) / G", rec);
    cfg.theta = param(alg, "theta", cfg.theta,
                      cfg.theta_clamped ? "min(1/d1, 1/d2) / 2 (clamped)" : "exp(-eta G)", rec);
    return make_omg_rftl(s.X.dimension(), s.Y.dimension(), cfg);
  }
  throw IncompatiblePairing("algorithm '" + alg.id + "' has no generic learner");
}

std::unique_ptr<KnapsackAgent> make_knapsack_agent(const Scenario& s, const AlgorithmConfig& alg,
                                                   std::vector<ParamRecord>& rec) {
  const KnapsackInstance& inst = *s.knapsack;
  if (alg.id == "pd_rftl") {
    const auto [e1, e2] = theorem8_step_sizes(inst);
    const double eta1 = param(alg, "eta1", e1, "D_X / (G (1 + ||y_max||_2) sqrt(T))", rec);
    const double eta2 =
        param(alg, "eta2", e2, "||y_max||_2 / ((||b||_2 / T + sqrt(m G D_X)) sqrt(T))", rec);
    return make_pd_rftl_agent(inst, eta1, eta2);
  }
  const double H = param(alg, "H", std::pow(static_cast<double>(s.spec.T), -1.0 / 6.0),
                         "T^(-1/6)", rec);
  return spftl_knapsack_agent(inst, s.spec.T, H, alg.solver);
}

long checkpoint_stride(long T, long points) {
  if (points <= 0) return 0;
  return std::max<long>(1, T / points);
}

RunResult run_knapsack_single(const Scenario& s, const AlgorithmConfig& alg, std::uint64_t seed,
                              const RunOptions& opt, double r_star) {
  RunResult out;
  out.seed = seed;
  const KnapsackInstance& inst = *s.knapsack;
  auto agent = make_knapsack_agent(s, alg, out.params);
  RegretTracker tracker(s.X, s.Y, alg.solver);
  KnapsackState state = knapsack_init(inst);
  Rng env = Rng::substream(seed, kEnvStream);
  const long T = s.spec.T;
  const long stride = checkpoint_stride(T, opt.series_points);
  if (opt.keep_trace) out.trace.rounds.reserve(static_cast<std::size_t>(T));
  for (long t = 1; t <= T; ++t) {
    const Vec x = agent->x();
    const Vec y = agent->y();
    EnvStep step = env_step(state, inst, x, env);
    const double v = tracker.add(round_lagrangian(inst, step.round), x, y);
    if (opt.keep_trace) {
      out.trace.rounds.push_back(RoundRecord{
          x, y, v, std::nullopt,
          KnapsackRecord{step.r, step.c, step.reward_collected, state.violated}});
    }
    agent->observe(step.round);
    if (stride > 0 && t % stride == 0) tracker.checkpoint();
  }
  out.report = tracker.finalize();
  KnapsackSummary ks;
  ks.r_star = r_star;
  ks.total_reward = state.cumulative_reward;
  ks.regret = r_star - state.cumulative_reward;
  ks.reward_ratio = state.cumulative_reward / r_star;
  ks.violated = state.violated;
  ks.total_consumption = state.cumulative_consumption;
  out.knapsack = ks;
  return out;
}

RunResult run_bandit_single(const Scenario& s, const AlgorithmConfig& alg, std::uint64_t seed,
                            const RunOptions& opt) {
  RunResult out;
  out.seed = seed;
  const Index d1 = s.X.dimension(), d2 = s.Y.dimension();
  const std::uint64_t alg_seed = splitmix64(seed ^ kAlgStream);
  BanditConfig cfg = bandit_theorem_defaults(d1, d2, s.spec.T, alg_seed);
  cfg.solver = alg.solver;
  cfg.eta = param(alg, "eta", cfg.eta, "T^(1/6)", out.params);
  cfg.delta = param(alg, "delta", cfg.delta,
                    cfg.delta_clamped ? "min(1/d1, 1/d2) / 2 (clamped)" : "T^(-1/6)", out.params);
  BanditState state = bandit_init(d1, d2, cfg);
  RegretTracker tracker(s.X, s.Y, alg.solver);
  auto stream = s.open(seed);
  const long T = s.spec.T;
  const long stride = checkpoint_stride(T, opt.series_points);
  for (long t = 1; t <= T; ++t) {
    const ScenarioRound round = stream->next();
    const Mat& A = *round.matrix;
    const BanditStep step = bandit_omg_step(state, [&A](Index i, Index j) { return A(i, j); });
    // Regret is charged at the mixed strategies the samples came from.
    const double v = tracker.add(round.payoff, step.x_played, step.y_played);
    if (opt.keep_trace) {
      out.trace.rounds.push_back(RoundRecord{step.x_played, step.y_played, v,
                                             BanditRecord{step.i, step.j, step.observed},
                                             std::nullopt});
    }
    out.max_round_gap = std::max(out.max_round_gap, state.omg.inner.inner.last.gap);
    if (stride > 0 && t % stride == 0) tracker.checkpoint();
  }
  out.report = tracker.finalize();
  return out;
}

}  // namespace

RunResult run_single(const Scenario& s, const AlgorithmConfig& alg, std::uint64_t seed,
                     const RunOptions& opt) {
  check_pairing(s, alg.id);
  validate(alg.solver);
  if (s.family == ScenarioFamily::kKnapsack) {
    return run_knapsack_single(s, alg, seed, opt, benchmark_r_star(*s.knapsack));
  }
  if (alg.id == "bandit_omg_rftl") return run_bandit_single(s, alg, seed, opt);

  RunResult out;
  out.seed = seed;
  auto learner = make_learner(s, alg, out.params);
  RegretTracker tracker(s.X, s.Y, alg.solver);
  auto stream = s.open(seed);
  const long T = s.spec.T;
  const long stride = checkpoint_stride(T, opt.series_points);
  if (opt.keep_trace) out.trace.rounds.reserve(static_cast<std::size_t>(T));
  for (long t = 1; t <= T; ++t) {
    const ScenarioRound round = stream->next();
    const Vec x = learner->x();
    const Vec y = learner->y();
    const double v = tracker.add(round.payoff, x, y);
    if (opt.keep_trace) {
      out.trace.rounds.push_back(RoundRecord{x, y, v, std::nullopt, std::nullopt});
    }
    learner->observe(round.payoff);
    out.max_round_gap = std::max(out.max_round_gap, learner->last_solver_gap());
    if (stride > 0 && t % stride == 0) tracker.checkpoint();
  }
  out.report = tracker.finalize(std::make_pair(learner->x(), learner->y()));
  return out;
}

int worker_count(int requested, std::size_t jobs) {
  int cap = requested;
  if (cap <= 0) {
    if (const char* env = std::getenv("OSP_LAB_THREADS")) cap = std::atoi(env);
  }
  if (cap <= 0) cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(jobs, cap)));
}

ExperimentResult run_experiment(const ScenarioSpec& spec, const AlgorithmConfig& alg,
                                const std::vector<std::uint64_t>& seeds, const RunOptions& opt) {
  if (seeds.empty()) throw PreconditionError("run_experiment: no seeds");
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario s = make_scenario(spec);
  check_pairing(s, alg.id);
  validate(alg.solver);

  ExperimentResult res;
  res.spec = spec;
  res.algorithm = alg;
  res.runs.resize(seeds.size());
  const double r_star =
      s.family == ScenarioFamily::kKnapsack ? benchmark_r_star(*s.knapsack) : 0.0;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (std::size_t k = next++; k < seeds.size(); k = next++) {
      try {
        res.runs[k] = s.family == ScenarioFamily::kKnapsack
                          ? run_knapsack_single(s, alg, seeds[k], opt, r_star)
                          : run_single(s, alg, seeds[k], opt);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = worker_count(opt.threads, seeds.size());
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Fold in seed order so the aggregate does not depend on scheduling.
  std::vector<double> sp, ix, iy, kr, ratio;
  double hind = 0.0;
  for (const auto& r : res.runs) {
    sp.push_back(r.report.sp_regret);
    ix.push_back(r.report.ind_regret_x);
    iy.push_back(r.report.ind_regret_y);
    hind += r.report.hindsight_value;
    if (r.knapsack) {
      kr.push_back(r.knapsack->regret);
      ratio.push_back(r.knapsack->reward_ratio);
    }
  }
  res.sp_regret = mean_stderr(sp);
  res.ind_x = mean_stderr(ix);
  res.ind_y = mean_stderr(iy);
  res.hindsight_mean = hind / static_cast<double>(res.runs.size());
  if (!kr.empty()) {
    res.knapsack_regret = mean_stderr(kr);
    res.reward_ratio = mean_stderr(ratio);
  }
  res.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace osp
