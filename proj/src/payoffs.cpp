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

#include "osp/payoffs.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace osp {

// ---------------------------------------------------------------------------
// PayoffTerm defaults.

std::unique_ptr<PayoffTerm> PayoffTerm::fix_y(const Vec& y) const {
  std::shared_ptr<const PayoffTerm> self = clone();
  const Vec yy = y;
  return std::make_unique<ClosureTerm>(
      dim_x(), 0, [self, yy](const Vec& x, const Vec&) { return self->value(x, yy); },
      [self, yy](const Vec& x, const Vec&) { return self->grad_x(x, yy); },
      [](const Vec&, const Vec&) { return Vec(0); });
}

std::unique_ptr<PayoffTerm> PayoffTerm::fix_x(const Vec& x) const {
  std::shared_ptr<const PayoffTerm> self = clone();
  const Vec xx = x;
  return std::make_unique<ClosureTerm>(
      0, dim_y(), [self, xx](const Vec&, const Vec& y) { return self->value(xx, y); },
      [](const Vec&, const Vec&) { return Vec(0); },
      [self, xx](const Vec&, const Vec& y) { return self->grad_y(xx, y); });
}

PayoffFunction::PayoffFunction(std::shared_ptr<const PayoffTerm> term, double lipschitz_G,
                               double strong_H, NormTag norm)
    : term_(std::move(term)), lipschitz_G_(lipschitz_G), strong_H_(strong_H), norm_(norm) {
  if (!term_) throw PreconditionError("PayoffFunction: null term");
  if (!(lipschitz_G_ >= 0.0)) throw PreconditionError("PayoffFunction: G must be >= 0");
  if (!(strong_H_ >= 0.0)) throw PreconditionError("PayoffFunction: H must be >= 0");
}

PayoffFunction PayoffFunction::fix_y(const Vec& y) const {
  require_dim(y.size(), dim_y(), "PayoffFunction::fix_y");
  return PayoffFunction(term_->fix_y(y), lipschitz_G_, strong_H_, norm_);
}

PayoffFunction PayoffFunction::fix_x(const Vec& x) const {
  require_dim(x.size(), dim_x(), "PayoffFunction::fix_x");
  return PayoffFunction(term_->fix_x(x), lipschitz_G_, strong_H_, norm_);
}

// ---------------------------------------------------------------------------
// QuadraticForm.

QuadraticForm::QuadraticForm(Mat P, Mat C, Mat Q, Vec u, Vec v, double k)
    : P_(std::move(P)), C_(std::move(C)), Q_(std::move(Q)), u_(std::move(u)), v_(std::move(v)),
      k_(k) {
  const Index n = C_.rows();
  const Index m = C_.cols();
  require_dim(P_.rows(), n, "QuadraticForm P rows");
  require_dim(P_.cols(), n, "QuadraticForm P cols");
  require_dim(Q_.rows(), m, "QuadraticForm Q rows");
  require_dim(Q_.cols(), m, "QuadraticForm Q cols");
  require_dim(u_.size(), n, "QuadraticForm u");
  require_dim(v_.size(), m, "QuadraticForm v");
}

QuadraticForm QuadraticForm::zero(Index n, Index m) {
  return QuadraticForm(Mat::Zero(n, n), Mat::Zero(n, m), Mat::Zero(m, m), Vec::Zero(n),
                       Vec::Zero(m), 0.0);
}

double QuadraticForm::value(const Vec& x, const Vec& y) const {
  return 0.5 * x.dot(P_ * x) + x.dot(C_ * y) - 0.5 * y.dot(Q_ * y) + u_.dot(x) + v_.dot(y) + k_;
}

Vec QuadraticForm::grad_x(const Vec& x, const Vec& y) const {
  return 0.5 * (P_ + P_.transpose()) * x + C_ * y + u_;
}

Vec QuadraticForm::grad_y(const Vec& x, const Vec& y) const {
  return C_.transpose() * x - 0.5 * (Q_ + Q_.transpose()) * y + v_;
}

std::unique_ptr<PayoffTerm> QuadraticForm::clone() const {
  return std::make_unique<QuadraticForm>(*this);
}

bool QuadraticForm::absorb(const PayoffTerm& other) {
  if (const auto* q = dynamic_cast<const QuadraticForm*>(&other)) {
    if (q->dim_x() != dim_x() || q->dim_y() != dim_y()) return false;
    P_ += q->P_;
    C_ += q->C_;
    Q_ += q->Q_;
    u_ += q->u_;
    v_ += q->v_;
    k_ += q->k_;
    return true;
  }
  if (const auto* l = dynamic_cast<const LinearTerm*>(&other)) {
    if (l->dim_x() != dim_x() || l->dim_y() != dim_y()) return false;
    u_ += l->u();
    v_ += l->v();
    k_ += l->k();
    return true;
  }
  return false;
}

std::unique_ptr<PayoffTerm> QuadraticForm::fix_y(const Vec& y) const {
  const Index n = dim_x();
  return std::make_unique<QuadraticForm>(P_, Mat(n, 0), Mat(0, 0), u_ + C_ * y, Vec(0),
                                         k_ + v_.dot(y) - 0.5 * y.dot(Q_ * y));
}

std::unique_ptr<PayoffTerm> QuadraticForm::fix_x(const Vec& x) const {
  const Index m = dim_y();
  return std::make_unique<QuadraticForm>(Mat(0, 0), Mat(0, m), Q_, Vec(0),
                                         v_ + C_.transpose() * x,
                                         k_ + u_.dot(x) + 0.5 * x.dot(P_ * x));
}

// ---------------------------------------------------------------------------
// LinearTerm.

double LinearTerm::value(const Vec& x, const Vec& y) const { return u_.dot(x) + v_.dot(y) + k_; }

std::unique_ptr<PayoffTerm> LinearTerm::clone() const { return std::make_unique<LinearTerm>(*this); }

bool LinearTerm::absorb(const PayoffTerm& other) {
  const auto* l = dynamic_cast<const LinearTerm*>(&other);
  if (l == nullptr || l->dim_x() != dim_x() || l->dim_y() != dim_y()) return false;
  u_ += l->u_;
  v_ += l->v_;
  k_ += l->k_;
  return true;
}

std::unique_ptr<PayoffTerm> LinearTerm::fix_y(const Vec& y) const {
  return std::make_unique<LinearTerm>(u_, Vec(0), k_ + v_.dot(y));
}

std::unique_ptr<PayoffTerm> LinearTerm::fix_x(const Vec& x) const {
  return std::make_unique<LinearTerm>(Vec(0), v_, k_ + u_.dot(x));
}

// ---------------------------------------------------------------------------
// BilinearTerm.

double BilinearTerm::value(const Vec& x, const Vec& y) const { return x.dot(A_ * y); }

std::unique_ptr<PayoffTerm> BilinearTerm::clone() const {
  return std::make_unique<BilinearTerm>(*this);
}

bool BilinearTerm::absorb(const PayoffTerm& other) {
  const auto* b = dynamic_cast<const BilinearTerm*>(&other);
  if (b == nullptr || b->A_.rows() != A_.rows() || b->A_.cols() != A_.cols()) return false;
  A_ += b->A_;
  return true;
}

std::unique_ptr<PayoffTerm> BilinearTerm::fix_y(const Vec& y) const {
  return std::make_unique<LinearTerm>(A_ * y, Vec(0), 0.0);
}

std::unique_ptr<PayoffTerm> BilinearTerm::fix_x(const Vec& x) const {
  return std::make_unique<LinearTerm>(Vec(0), A_.transpose() * x, 0.0);
}

// ---------------------------------------------------------------------------
// EntropyPair.

double EntropyPair::value(const Vec& x, const Vec& y) const {
  double out = k_;
  if (dx_ > 0 && wx_ != 0.0) out += wx_ * entropy_value(x);
  if (dy_ > 0 && wy_ != 0.0) out -= wy_ * entropy_value(y);
  return out;
}

Vec EntropyPair::grad_x(const Vec& x, const Vec&) const {
  if (wx_ == 0.0) return Vec::Zero(dx_);
  return wx_ * entropy_grad(x);
}

Vec EntropyPair::grad_y(const Vec&, const Vec& y) const {
  if (wy_ == 0.0) return Vec::Zero(dy_);
  return -wy_ * entropy_grad(y);
}

std::unique_ptr<PayoffTerm> EntropyPair::clone() const {
  return std::make_unique<EntropyPair>(*this);
}

bool EntropyPair::absorb(const PayoffTerm& other) {
  const auto* e = dynamic_cast<const EntropyPair*>(&other);
  if (e == nullptr || e->dx_ != dx_ || e->dy_ != dy_) return false;
  wx_ += e->wx_;
  wy_ += e->wy_;
  k_ += e->k_;
  return true;
}

std::unique_ptr<PayoffTerm> EntropyPair::fix_y(const Vec& y) const {
  const double ry = (dy_ > 0 && wy_ != 0.0) ? wy_ * entropy_value(y) : 0.0;
  return std::make_unique<EntropyPair>(dx_, 0, wx_, 0.0, k_ - ry);
}

std::unique_ptr<PayoffTerm> EntropyPair::fix_x(const Vec& x) const {
  const double rx = (dx_ > 0 && wx_ != 0.0) ? wx_ * entropy_value(x) : 0.0;
  return std::make_unique<EntropyPair>(0, dy_, 0.0, wy_, k_ + rx);
}

// ---------------------------------------------------------------------------
// QuadraticKnapsackLagrangian.

QuadraticKnapsackLagrangian::QuadraticKnapsackLagrangian(Mat reward_quad, Vec reward_lin,
                                                         std::vector<Mat> cons_quad,
                                                         std::vector<Vec> cons_lin,
                                                         Vec budget_per_round)
    : reward_quad_(std::move(reward_quad)), reward_lin_(std::move(reward_lin)),
      cons_quad_(std::move(cons_quad)), cons_lin_(std::move(cons_lin)),
      budget_(std::move(budget_per_round)) {
  const Index n = reward_lin_.size();
  const auto m = static_cast<std::size_t>(budget_.size());
  require_dim(reward_quad_.rows(), n, "knapsack reward_quad rows");
  require_dim(reward_quad_.cols(), n, "knapsack reward_quad cols");
  if (cons_quad_.size() != m || cons_lin_.size() != m) {
    throw DimensionError("knapsack Lagrangian: consumption count differs from budget length");
  }
  reward_quad_ = 0.5 * (reward_quad_ + reward_quad_.transpose()).eval();
  for (std::size_t i = 0; i < m; ++i) {
    require_dim(cons_quad_[i].rows(), n, "knapsack cons_quad rows");
    require_dim(cons_quad_[i].cols(), n, "knapsack cons_quad cols");
    require_dim(cons_lin_[i].size(), n, "knapsack cons_lin");
    cons_quad_[i] = 0.5 * (cons_quad_[i] + cons_quad_[i].transpose()).eval();
  }
}

double QuadraticKnapsackLagrangian::reward(const Vec& x) const {
  return -x.dot(reward_quad_ * x) + reward_lin_.dot(x);
}

Vec QuadraticKnapsackLagrangian::consumption(const Vec& x) const {
  Vec c(budget_.size());
  for (Index i = 0; i < c.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    c(i) = x.dot(cons_quad_[k] * x) + cons_lin_[k].dot(x);
  }
  return c;
}

double QuadraticKnapsackLagrangian::value(const Vec& x, const Vec& y) const {
  return -reward(x) - y.dot(budget_ - consumption(x));
}

Vec QuadraticKnapsackLagrangian::grad_x(const Vec& x, const Vec& y) const {
  Vec g = 2.0 * (reward_quad_ * x) - reward_lin_;
  for (Index i = 0; i < y.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    g += y(i) * (2.0 * (cons_quad_[k] * x) + cons_lin_[k]);
  }
  return g;
}

Vec QuadraticKnapsackLagrangian::grad_y(const Vec& x, const Vec&) const {
  return consumption(x) - budget_;
}

std::unique_ptr<PayoffTerm> QuadraticKnapsackLagrangian::clone() const {
  return std::make_unique<QuadraticKnapsackLagrangian>(*this);
}

bool QuadraticKnapsackLagrangian::absorb(const PayoffTerm& other) {
  const auto* q = dynamic_cast<const QuadraticKnapsackLagrangian*>(&other);
  if (q == nullptr || q->dim_x() != dim_x() || q->dim_y() != dim_y()) return false;
  reward_quad_ += q->reward_quad_;
  reward_lin_ += q->reward_lin_;
  for (std::size_t i = 0; i < cons_quad_.size(); ++i) {
    cons_quad_[i] += q->cons_quad_[i];
    cons_lin_[i] += q->cons_lin_[i];
  }
  budget_ += q->budget_;
  return true;
}

std::unique_ptr<PayoffTerm> QuadraticKnapsackLagrangian::fix_y(const Vec& y) const {
  const Index n = dim_x();
  Mat curvature = reward_quad_;
  Vec lin = -reward_lin_;
  for (Index i = 0; i < y.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    curvature += y(i) * cons_quad_[k];
    lin += y(i) * cons_lin_[k];
  }
  return std::make_unique<QuadraticForm>(2.0 * curvature, Mat(n, 0), Mat(0, 0), lin, Vec(0),
                                         -y.dot(budget_));
}

std::unique_ptr<PayoffTerm> QuadraticKnapsackLagrangian::fix_x(const Vec& x) const {
  return std::make_unique<LinearTerm>(Vec(0), consumption(x) - budget_, -reward(x));
}

// ---------------------------------------------------------------------------
// ClosureTerm / PayoffSum.

std::unique_ptr<PayoffTerm> ClosureTerm::clone() const {
  return std::make_unique<ClosureTerm>(*this);
}

PayoffSum::PayoffSum(const PayoffSum& other)
    : dx_(other.dx_), dy_(other.dy_), listed_(other.listed_) {
  accumulators_.reserve(other.accumulators_.size());
  for (const auto& a : other.accumulators_) accumulators_.push_back(a->clone());
}

PayoffSum& PayoffSum::operator=(const PayoffSum& other) {
  if (this != &other) {
    PayoffSum copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void PayoffSum::fold(std::unique_ptr<PayoffTerm> owned) {
  for (auto& acc : accumulators_) {
    if (acc->absorb(*owned)) return;
    // A linear term may arrive before the quadratic that can hold it.
    if (owned->absorb(*acc)) {
      acc = std::move(owned);
      return;
    }
  }
  accumulators_.push_back(std::move(owned));
}

void PayoffSum::add(const std::shared_ptr<const PayoffTerm>& term) {
  if (!term) throw PreconditionError("PayoffSum::add: null term");
  require_dim(term->dim_x(), dx_, "PayoffSum::add dim_x");
  require_dim(term->dim_y(), dy_, "PayoffSum::add dim_y");
  if (const auto* nested = dynamic_cast<const PayoffSum*>(term.get())) {
    for (const auto& a : nested->accumulators_) fold(a->clone());
    for (const auto& l : nested->listed_) listed_.push_back(l);
    return;
  }
  if (term->accumulates()) {
    fold(term->clone());
    return;
  }
  listed_.push_back(term);
}

void PayoffSum::add(const PayoffTerm& term) {
  if (term.accumulates() || dynamic_cast<const PayoffSum*>(&term) != nullptr) {
    add(std::shared_ptr<const PayoffTerm>(term.clone()));
    return;
  }
  require_dim(term.dim_x(), dx_, "PayoffSum::add dim_x");
  require_dim(term.dim_y(), dy_, "PayoffSum::add dim_y");
  listed_.push_back(std::shared_ptr<const PayoffTerm>(term.clone()));
}

double PayoffSum::value(const Vec& x, const Vec& y) const {
  double out = 0.0;
  for (const auto& a : accumulators_) out += a->value(x, y);
  for (const auto& l : listed_) out += l->value(x, y);
  return out;
}

Vec PayoffSum::grad_x(const Vec& x, const Vec& y) const {
  Vec g = Vec::Zero(dx_);
  for (const auto& a : accumulators_) g += a->grad_x(x, y);
  for (const auto& l : listed_) g += l->grad_x(x, y);
  return g;
}

Vec PayoffSum::grad_y(const Vec& x, const Vec& y) const {
  Vec g = Vec::Zero(dy_);
  for (const auto& a : accumulators_) g += a->grad_y(x, y);
  for (const auto& l : listed_) g += l->grad_y(x, y);
  return g;
}

Vec PayoffSum::smooth_grad_x(const Vec& x, const Vec& y) const {
  Vec g = Vec::Zero(dx_);
  for (const auto& a : accumulators_) g += a->smooth_grad_x(x, y);
  for (const auto& l : listed_) g += l->smooth_grad_x(x, y);
  return g;
}

Vec PayoffSum::smooth_grad_y(const Vec& x, const Vec& y) const {
  Vec g = Vec::Zero(dy_);
  for (const auto& a : accumulators_) g += a->smooth_grad_y(x, y);
  for (const auto& l : listed_) g += l->smooth_grad_y(x, y);
  return g;
}

double PayoffSum::entropy_weight_x() const {
  double w = 0.0;
  for (const auto& a : accumulators_) w += a->entropy_weight_x();
  for (const auto& l : listed_) w += l->entropy_weight_x();
  return w;
}

double PayoffSum::entropy_weight_y() const {
  double w = 0.0;
  for (const auto& a : accumulators_) w += a->entropy_weight_y();
  for (const auto& l : listed_) w += l->entropy_weight_y();
  return w;
}

std::unique_ptr<PayoffTerm> PayoffSum::clone() const { return std::make_unique<PayoffSum>(*this); }

std::unique_ptr<PayoffTerm> PayoffSum::fix_y(const Vec& y) const {
  auto out = std::make_unique<PayoffSum>(dx_, 0);
  for (const auto& a : accumulators_) out->add(std::shared_ptr<const PayoffTerm>(a->fix_y(y)));
  for (const auto& l : listed_) out->add(std::shared_ptr<const PayoffTerm>(l->fix_y(y)));
  return out;
}

std::unique_ptr<PayoffTerm> PayoffSum::fix_x(const Vec& x) const {
  auto out = std::make_unique<PayoffSum>(0, dy_);
  for (const auto& a : accumulators_) out->add(std::shared_ptr<const PayoffTerm>(a->fix_x(x)));
  for (const auto& l : listed_) out->add(std::shared_ptr<const PayoffTerm>(l->fix_x(x)));
  return out;
}

PayoffAccumulator::PayoffAccumulator(Index dx, Index dy, NormTag norm)
    : sum_(dx, dy), norm_(norm) {}

void PayoffAccumulator::add(const PayoffFunction& f) {
  sum_.add(f.shared_term());
  lipschitz_G_ += f.lipschitz_G();
  strong_H_ += f.strong_H();
  ++count_;
}

PayoffFunction PayoffAccumulator::snapshot() const {
  return PayoffFunction(std::make_shared<PayoffSum>(sum_), lipschitz_G_, strong_H_, norm_);
}

PayoffFunction sum_of(const std::vector<PayoffFunction>& fs) {
  if (fs.empty()) throw PreconditionError("sum_of: empty list");
  PayoffAccumulator acc(fs.front().dim_x(), fs.front().dim_y(), fs.front().norm_tag());
  for (const auto& f : fs) acc.add(f);
  return acc.snapshot();
}

// ---------------------------------------------------------------------------
// Regularizers.

Regularizer Regularizer::zero(const FeasibleSet& set) {
  return Regularizer(Kind::Zero, set, 0.0, 0.0, NormTag::L2);
}

Regularizer Regularizer::squared_norm(const FeasibleSet& set) {
  return Regularizer(Kind::SquaredNorm, set, 2.0 * max_norm(set), 2.0, NormTag::L2);
}

Regularizer Regularizer::entropy(const FeasibleSet& set) {
  if (!set.is_simplex_like()) {
    throw PreconditionError("Regularizer::entropy: set must be a (restricted) simplex");
  }
  const double theta = set.simplex_floor();
  const double g = theta > 0.0 ? std::max(std::abs(std::log(theta)), 1.0) : kInfinity;
  return Regularizer(Kind::Entropy, set, g, 1.0, NormTag::L1);
}

double Regularizer::value(const Vec& z) const {
  require_dim(z.size(), dimension(), "Regularizer::value");
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::SquaredNorm: return z.squaredNorm();
    case Kind::Entropy: return entropy_value(z);
  }
  return 0.0;
}

Vec Regularizer::grad(const Vec& z) const {
  require_dim(z.size(), dimension(), "Regularizer::grad");
  switch (kind_) {
    case Kind::Zero: return Vec::Zero(z.size());
    case Kind::SquaredNorm: return 2.0 * z;
    case Kind::Entropy: return entropy_grad(z);
  }
  return Vec::Zero(z.size());
}

// ---------------------------------------------------------------------------
// Constructors.

double vertex_lipschitz_bound(const PayoffTerm& term, const FeasibleSet& X, const FeasibleSet& Y,
                              NormTag norm) {
  const auto vx = enumerate_vertices(X);
  const auto vy = enumerate_vertices(Y);
  if ((vx.empty() && X.dimension() > 0) || (vy.empty() && Y.dimension() > 0)) return kInfinity;
  const std::vector<Vec> xs = vx.empty() ? std::vector<Vec>{Vec(0)} : vx;
  const std::vector<Vec> ys = vy.empty() ? std::vector<Vec>{Vec(0)} : vy;
  double best = 0.0;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      const Vec gx = term.grad_x(x, y);
      const Vec gy = term.grad_y(x, y);
      double g = 0.0;
      if (norm == NormTag::L2) {
        g = std::sqrt(gx.squaredNorm() + gy.squaredNorm());
      } else {
        const double ax = gx.size() ? gx.cwiseAbs().maxCoeff() : 0.0;
        const double ay = gy.size() ? gy.cwiseAbs().maxCoeff() : 0.0;
        g = std::max(ax, ay);
      }
      best = std::max(best, g);
    }
  }
  return best;
}

namespace {

double min_eigenvalue(const Mat& M) {
  if (M.size() == 0) return kInfinity;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()));
  return es.eigenvalues().minCoeff();
}

}  // namespace

PayoffFunction make_quadratic_bilinear(double a, double h, double p, double q,
                                       const FeasibleSet& X, const FeasibleSet& Y) {
  if (!(h >= 0.0)) throw PreconditionError("make_quadratic_bilinear: h must be >= 0");
  require_dim(X.dimension(), 1, "make_quadratic_bilinear X");
  require_dim(Y.dimension(), 1, "make_quadratic_bilinear Y");
  auto term = std::make_shared<QuadraticForm>(
      Mat::Constant(1, 1, h), Mat::Constant(1, 1, a), Mat::Constant(1, 1, h),
      Vec::Constant(1, -h * p), Vec::Constant(1, h * q), 0.5 * h * (p * p - q * q));
  const double G = vertex_lipschitz_bound(*term, X, Y, NormTag::L2);
  return PayoffFunction(std::move(term), G, h, NormTag::L2);
}

PayoffFunction make_quadratic_form(Mat P, Mat C, Mat Q, Vec u, Vec v, double k,
                                   const FeasibleSet& X, const FeasibleSet& Y) {
  const double hx = min_eigenvalue(P);
  const double hy = min_eigenvalue(Q);
  if (hx < -1e-12 || hy < -1e-12) {
    throw PreconditionError("make_quadratic_form: P and Q must be positive semidefinite");
  }
  auto term = std::make_shared<QuadraticForm>(std::move(P), std::move(C), std::move(Q),
                                              std::move(u), std::move(v), k);
  require_dim(X.dimension(), term->dim_x(), "make_quadratic_form X");
  require_dim(Y.dimension(), term->dim_y(), "make_quadratic_form Y");
  double H = std::min(hx, hy);
  if (!std::isfinite(H)) H = 0.0;
  H = std::max(H, 0.0);
  const double G = vertex_lipschitz_bound(*term, X, Y, NormTag::L2);
  return PayoffFunction(std::move(term), G, H, NormTag::L2);
}

PayoffFunction make_bilinear(const Mat& A, NormTag norm) {
  if (A.size() > 0 && !(A.cwiseAbs().maxCoeff() <= 1.0 + 1e-12)) {
    throw PreconditionError("make_bilinear: entries must lie in [-1, 1]");
  }
  const double c = A.size() > 0 ? A.cwiseAbs().maxCoeff() : 0.0;
  const double G =
      norm == NormTag::L1
          ? c
          : std::sqrt(c) * (std::sqrt(static_cast<double>(A.rows())) +
                            std::sqrt(static_cast<double>(A.cols())));
  return PayoffFunction(std::make_shared<BilinearTerm>(A), G, 0.0, norm);
}

PayoffFunction make_knapsack_lagrangian(RewardModel r, ConsumptionModel c, const Vec& b, double T,
                                        const std::optional<Vec>& y_max) {
  if (!(T >= 1.0)) throw PreconditionError("make_knapsack_lagrangian: T must be >= 1");
  if ((b.array() < 0.0).any()) {
    throw PreconditionError("make_knapsack_lagrangian: budgets must be nonnegative");
  }
  if (!r.value || !r.grad || !c.value || !c.jacobian) {
    throw PreconditionError("make_knapsack_lagrangian: reward/consumption callbacks required");
  }
  const Vec per_round = b / T;
  const Index m = b.size();
  auto value = [r, c, per_round, m](const Vec& x, const Vec& y) {
    require_dim(y.size(), m, "knapsack Lagrangian y");
    const Vec cx = c.value(x);
    require_dim(cx.size(), m, "knapsack consumption");
    return -r.value(x) - y.dot(per_round - cx);
  };
  auto gx = [r, c, m](const Vec& x, const Vec& y) {
    require_dim(y.size(), m, "knapsack Lagrangian y");
    const Mat J = c.jacobian(x);
    return Vec(-r.grad(x) + J.transpose() * y);
  };
  auto gy = [c, per_round](const Vec& x, const Vec&) { return Vec(c.value(x) - per_round); };
  double G = kInfinity;
  if (y_max) {
    require_dim(y_max->size(), m, "make_knapsack_lagrangian y_max");
    const double gxb = r.lipschitz + y_max->lpNorm<1>() * c.lipschitz;
    const double gyb = c.max_norm + per_round.norm();
    G = std::hypot(gxb, gyb);
  }
  return PayoffFunction(std::make_shared<ClosureTerm>(r.dim, m, value, gx, gy), G, 0.0,
                        NormTag::L2);
}

PayoffFunction make_quadratic_knapsack_lagrangian(const Mat& reward_quad, const Vec& reward_lin,
                                                  const std::vector<Mat>& cons_quad,
                                                  const std::vector<Vec>& cons_lin,
                                                  const Vec& b, double T, const FeasibleSet& X,
                                                  const FeasibleSet& Y) {
  if (!(T >= 1.0)) throw PreconditionError("make_quadratic_knapsack_lagrangian: T must be >= 1");
  if ((b.array() < 0.0).any()) {
    throw PreconditionError("make_quadratic_knapsack_lagrangian: budgets must be nonnegative");
  }
  auto term = std::make_shared<QuadraticKnapsackLagrangian>(reward_quad, reward_lin, cons_quad,
                                                            cons_lin, b / T);
  require_dim(X.dimension(), term->dim_x(), "make_quadratic_knapsack_lagrangian X");
  require_dim(Y.dimension(), term->dim_y(), "make_quadratic_knapsack_lagrangian Y");
  // grad_x is affine in x for fixed y and in y for fixed x: vertices suffice.
  // |c_i(x) - b_i| is bounded by its vertex values or by b_i (c_i >= 0).
  const auto vx = enumerate_vertices(X);
  const auto vy = enumerate_vertices(Y);
  double G = kInfinity;
  if (!vx.empty() && !vy.empty()) {
    double gx2 = 0.0;
    Vec gy2 = (b / T).array().square().matrix();
    for (const auto& x : vx) {
      for (const auto& y : vy) gx2 = std::max(gx2, term->grad_x(x, y).squaredNorm());
      gy2 = gy2.cwiseMax(term->grad_y(x, vy.front()).array().square().matrix());
    }
    G = std::sqrt(gx2 + gy2.sum());
  }
  return PayoffFunction(std::move(term), G, 0.0, NormTag::L2);
}

PayoffFunction regularize(const PayoffFunction& base, const Regularizer& reg_x,
                          const Regularizer& reg_y, double weight) {
  if (!(weight > 0.0)) throw PreconditionError("regularize: weight must be > 0");
  const Index n = base.dim_x();
  const Index m = base.dim_y();
  require_dim(reg_x.dimension(), n, "regularize reg_x");
  require_dim(reg_y.dimension(), m, "regularize reg_y");
  auto sum = std::make_shared<PayoffSum>(n, m);
  sum->add(base.shared_term());
  auto add_part = [&](const Regularizer& reg, bool is_x) {
    switch (reg.kind()) {
      case Regularizer::Kind::Zero:
        return;
      case Regularizer::Kind::SquaredNorm: {
        Mat P = Mat::Zero(n, n);
        Mat Q = Mat::Zero(m, m);
        if (is_x) {
          P = 2.0 * weight * Mat::Identity(n, n);
        } else {
          Q = 2.0 * weight * Mat::Identity(m, m);
        }
        sum->add(std::make_shared<QuadraticForm>(P, Mat::Zero(n, m), Q, Vec::Zero(n),
                                                 Vec::Zero(m), 0.0));
        return;
      }
      case Regularizer::Kind::Entropy:
        sum->add(std::make_shared<EntropyPair>(n, m, is_x ? weight : 0.0, is_x ? 0.0 : weight));
        return;
    }
  };
  add_part(reg_x, true);
  add_part(reg_y, false);
  const double H = base.strong_H() + weight * std::min(reg_x.modulus(), reg_y.modulus());
  const double G = base.lipschitz_G() + weight * std::max(reg_x.lipschitz(), reg_y.lipschitz());
  return PayoffFunction(std::move(sum), G, H, base.norm_tag());
}

}  // namespace osp
