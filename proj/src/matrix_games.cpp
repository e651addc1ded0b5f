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

#include "osp/matrix_games.hpp"

#include <cmath>

namespace osp {

double EntropyRegularizer::value(const Vec& z) const {
  require_dim(z.size(), d, "EntropyRegularizer::value");
  return entropy_value(z);
}

Vec EntropyRegularizer::grad(const Vec& z) const {
  require_dim(z.size(), d, "EntropyRegularizer::grad");
  return entropy_grad(z);
}

double EntropyRegularizer::lipschitz_bound(double theta) {
  if (!(theta > 0.0)) return kInfinity;
  return std::max(std::abs(std::log(theta)), 1.0);
}

OMGConfig omg_theorem_defaults(Index d1, Index d2, long T, double G) {
  if (d1 < 2 || d2 < 2) throw PreconditionError("omg defaults: d1, d2 must be >= 2");
  if (T < 1 || !(G > 0.0)) throw PreconditionError("omg defaults: need T >= 1 and G > 0");
  OMGConfig cfg;
  cfg.eta = std::sqrt(static_cast<double>(T)) / G;
  cfg.theta = std::exp(-cfg.eta * G);
  const double cap = std::min(1.0 / static_cast<double>(d1), 1.0 / static_cast<double>(d2));
  if (cfg.theta >= cap) {
    cfg.theta = 0.5 * cap;
    cfg.theta_clamped = true;
  }
  return cfg;
}

OMGState omg_init(Index d1, Index d2, const OMGConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw PreconditionError("OMG-RFTL: eta must be > 0");
  const double cap = std::min(1.0 / static_cast<double>(d1), 1.0 / static_cast<double>(d2));
  if (!(cfg.theta > 0.0) || cfg.theta > cap) {
    throw PreconditionError("OMG-RFTL: theta must lie in (0, min(1/d1, 1/d2)]");
  }
  const FeasibleSet X = FeasibleSet::restricted_simplex(d1, cfg.theta);
  const FeasibleSet Y = FeasibleSet::restricted_simplex(d2, cfg.theta);
  SPRFTLConfig rc;
  rc.eta = cfg.eta;
  rc.reg_x = Regularizer::entropy(X);
  rc.reg_y = Regularizer::entropy(Y);
  rc.solver = cfg.solver;
  return OMGState{sprftl_init(X, Y, rc), cfg};
}

namespace {

void check_unit_entries(const Mat& A) {
  if (A.size() > 0 && !(A.cwiseAbs().maxCoeff() <= 1.0 + 1e-12)) {
    throw PreconditionError("OMG-RFTL: payoff entries must lie in [-1, 1]");
  }
}

}  // namespace

std::pair<Vec, Vec> omg_rftl_step(OMGState& state, const Mat& A) {
  check_unit_entries(A);
  return sprftl_step(state.inner, make_bilinear(A, NormTag::L1));
}

Mat OnePointEstimate::A_hat() const {
  Mat out = Mat::Zero(d1, d2);
  out(i, j) = value;
  return out;
}

OnePointEstimate one_point_estimate(double observed_entry, Index i, Index j, const Vec& x,
                                    const Vec& y) {
  if (i < 0 || i >= x.size() || j < 0 || j >= y.size()) {
    throw DimensionError("one_point_estimate: index out of range");
  }
  if (!(x(i) > 0.0) || !(y(j) > 0.0)) {
    throw PreconditionError("one_point_estimate: sampled probability must be positive");
  }
  OnePointEstimate e;
  e.i = i;
  e.j = j;
  e.d1 = x.size();
  e.d2 = y.size();
  e.observed_entry = observed_entry;
  e.value = observed_entry / (x(i) * y(j));
  return e;
}

Index sample_with_uniform(const Vec& p, double u) {
  if (p.size() == 0) throw DimensionError("sample: empty distribution");
  if ((p.array() < -1e-12).any() || std::abs(p.sum() - 1.0) > kMembershipTol) {
    throw PreconditionError("sample: p is not a probability vector");
  }
  double cum = 0.0;
  Index last_positive = 0;
  for (Index k = 0; k < p.size(); ++k) {
    if (p(k) <= 0.0) continue;
    last_positive = k;
    cum += p(k);
    if (u < cum) return k;
  }
  return last_positive;  // u within rounding of 1
}

Index sample_from_distribution(const Vec& p, Rng& stream) {
  return sample_with_uniform(p, stream.uniform());
}

BanditConfig bandit_theorem_defaults(Index d1, Index d2, long T, std::uint64_t seed) {
  if (d1 < 2 || d2 < 2 || T < 1) throw PreconditionError("bandit defaults: invalid d or T");
  BanditConfig cfg;
  const double t = static_cast<double>(T);
  cfg.delta = std::pow(t, -1.0 / 6.0);
  cfg.eta = std::pow(t, 1.0 / 6.0);
  cfg.rng_seed = seed;
  const double cap = std::min(1.0 / static_cast<double>(d1), 1.0 / static_cast<double>(d2));
  if (cfg.delta >= cap) {
    cfg.delta = 0.5 * cap;
    cfg.delta_clamped = true;
  }
  return cfg;
}

BanditState bandit_init(Index d1, Index d2, const BanditConfig& cfg) {
  const double cap = std::min(1.0 / static_cast<double>(d1), 1.0 / static_cast<double>(d2));
  if (!(cfg.delta > 0.0) || !(cfg.delta < cap)) {
    throw PreconditionError("Bandit-OMG-RFTL: delta must lie in (0, min(1/d1, 1/d2))");
  }
  OMGConfig oc;
  oc.eta = cfg.eta;
  oc.theta = cfg.delta;
  oc.solver = cfg.solver;
  return BanditState{omg_init(d1, d2, oc), cfg, Rng::substream(cfg.rng_seed, 1),
                     Rng::substream(cfg.rng_seed, 2)};
}

BanditStep bandit_omg_step(BanditState& state, const EntryOracle& env) {
  BanditStep step;
  step.x_played = state.omg.inner.inner.x;
  step.y_played = state.omg.inner.inner.y;
  step.i = sample_from_distribution(step.x_played, state.stream_x);
  step.j = sample_from_distribution(step.y_played, state.stream_y);
  step.observed = env(step.i, step.j);
  if (!std::isfinite(step.observed)) {
    throw NumericalError("bandit_omg_step: environment returned a non-finite entry");
  }
  const OnePointEstimate est =
      one_point_estimate(step.observed, step.i, step.j, step.x_played, step.y_played);
  const double c = std::abs(est.value);
  sprftl_step(state.omg.inner,
              PayoffFunction(std::make_shared<BilinearTerm>(est.A_hat()), c, 0.0, NormTag::L1));
  return step;
}

namespace {

class OMGLearner final : public OnlineLearner {
 public:
  explicit OMGLearner(OMGState s) : s_(std::move(s)) {}
  std::string algorithm_id() const override { return "omg_rftl"; }
  const Vec& x() const override { return s_.inner.inner.x; }
  const Vec& y() const override { return s_.inner.inner.y; }
  long round() const override { return s_.inner.inner.round; }
  void observe(const PayoffFunction& f) override {
    const auto* b = dynamic_cast<const BilinearTerm*>(&f.term());
    if (b == nullptr) throw PreconditionError("OMG-RFTL observes bilinear payoffs only");
    omg_rftl_step(s_, b->A());
  }
  std::vector<ParamRecord> parameters() const override {
    return {{"eta", s_.cfg.eta, "sqrt(T)/G unless overridden"},
            {"theta", s_.cfg.theta,
             s_.cfg.theta_clamped ? "min(1/d1,1/d2)/2 (clamped)" : "exp(-eta*G)"}};
  }
  double last_solver_gap() const override { return s_.inner.inner.last.gap; }

 private:
  OMGState s_;
};

}  // namespace

std::unique_ptr<OnlineLearner> make_omg_rftl(Index d1, Index d2, const OMGConfig& cfg) {
  return std::make_unique<OMGLearner>(omg_init(d1, d2, cfg));
}

}  // namespace osp
