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

// Convex-concave payoff functions L(x, y): player 1 picks x to minimize,
// player 2 picks y to maximize. A PayoffFunction is an immutable handle on a
// polymorphic PayoffTerm together with its Lipschitz constant G and strong
// convexity-concavity modulus H.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "osp/geometry.hpp"
#include "osp/types.hpp"

namespace osp {

enum class NormTag { L1, L2 };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class PayoffTerm {
 public:
  virtual ~PayoffTerm() = default;

  virtual Index dim_x() const = 0;
  virtual Index dim_y() const = 0;
  virtual double value(const Vec& x, const Vec& y) const = 0;
  virtual Vec grad_x(const Vec& x, const Vec& y) const = 0;
  virtual Vec grad_y(const Vec& x, const Vec& y) const = 0;
  virtual std::unique_ptr<PayoffTerm> clone() const = 0;

  // Terms of a closed family (quadratic forms, bilinear maps, ...) fold sums
  // into a single instance so running sums stay O(1) in the horizon.
  virtual bool accumulates() const { return false; }
  // this += other when `other` belongs to the same family; false otherwise.
  virtual bool absorb(const PayoffTerm& /*other*/) { return false; }

  // Restrictions to one player: the result has dim_y() == 0 (resp. dim_x()).
  virtual std::unique_ptr<PayoffTerm> fix_y(const Vec& y) const;
  virtual std::unique_ptr<PayoffTerm> fix_x(const Vec& x) const;

  // The value contains entropy_weight_x()*R(x) - entropy_weight_y()*R(y)
  // with R(z) = sum z_i ln z_i + ln d. Simplex solvers treat that part
  // exactly and only differentiate the remainder.
  virtual double entropy_weight_x() const { return 0.0; }
  virtual double entropy_weight_y() const { return 0.0; }
  virtual Vec smooth_grad_x(const Vec& x, const Vec& y) const { return grad_x(x, y); }
  virtual Vec smooth_grad_y(const Vec& x, const Vec& y) const { return grad_y(x, y); }
};

class PayoffFunction {
 public:
  PayoffFunction(std::shared_ptr<const PayoffTerm> term, double lipschitz_G,
                 double strong_H, NormTag norm = NormTag::L2);

  Index dim_x() const { return term_->dim_x(); }
  Index dim_y() const { return term_->dim_y(); }
  double value(const Vec& x, const Vec& y) const { return term_->value(x, y); }
  Vec grad_x(const Vec& x, const Vec& y) const { return term_->grad_x(x, y); }
  Vec grad_y(const Vec& x, const Vec& y) const { return term_->grad_y(x, y); }

  double lipschitz_G() const { return lipschitz_G_; }
  double strong_H() const { return strong_H_; }
  NormTag norm_tag() const { return norm_; }

  const PayoffTerm& term() const { return *term_; }
  const std::shared_ptr<const PayoffTerm>& shared_term() const { return term_; }

  PayoffFunction fix_y(const Vec& y) const;
  PayoffFunction fix_x(const Vec& x) const;

 private:
  std::shared_ptr<const PayoffTerm> term_;
  double lipschitz_G_;
  double strong_H_;
  NormTag norm_;
};

// ---------------------------------------------------------------------------
// Concrete terms.

// 1/2 x'Px + x'Cy - 1/2 y'Qy + u'x + v'y + k.
class QuadraticForm final : public PayoffTerm {
 public:
  QuadraticForm(Mat P, Mat C, Mat Q, Vec u, Vec v, double k);
  static QuadraticForm zero(Index n, Index m);

  Index dim_x() const override { return C_.rows(); }
  Index dim_y() const override { return C_.cols(); }
  double value(const Vec& x, const Vec& y) const override;
  Vec grad_x(const Vec& x, const Vec& y) const override;
  Vec grad_y(const Vec& x, const Vec& y) const override;
  std::unique_ptr<PayoffTerm> clone() const override;
  bool accumulates() const override { return true; }
  bool absorb(const PayoffTerm& other) override;
  std::unique_ptr<PayoffTerm> fix_y(const Vec& y) const override;
  std::unique_ptr<PayoffTerm> fix_x(const Vec& x) const override;

  const Mat& P() const { return P_; }
  const Mat& C() const { return C_; }
  const Mat& Q() const { return Q_; }
  const Vec& u() const { return u_; }
  const Vec& v() const { return v_; }
  double k() const { return k_; }

 private:
  Mat P_, C_, Q_;
  Vec u_, v_;
  double k_;
};

// u'x + v'y + k.
class LinearTerm final : public PayoffTerm {
 public:
  LinearTerm(Vec u, Vec v, double k) : u_(std::move(u)), v_(std::move(v)), k_(k) {}

  Index dim_x() const override { return u_.size(); }
  Index dim_y() const override { return v_.size(); }
  double value(const Vec& x, const Vec& y) const override;
  Vec grad_x(const Vec&, const Vec&) const override { return u_; }
  Vec grad_y(const Vec&, const Vec&) const override { return v_; }
  std::unique_ptr<PayoffTerm> clone() const override;
  bool accumulates() const override { return true; }
  bool absorb(const PayoffTerm& other) override;
  std::unique_ptr<PayoffTerm> fix_y(const Vec& y) const override;
  std::unique_ptr<PayoffTerm> fix_x(const Vec& x) const override;

  const Vec& u() const { return u_; }
  const Vec& v() const { return v_; }
  double k() const { return k_; }

 private:
  Vec u_, v_;
  double k_;
};

// x'Ay.
class BilinearTerm final : public PayoffTerm {
 public:
  explicit BilinearTerm(Mat A) : A_(std::move(A)) {}

  Index dim_x() const override { return A_.rows(); }
  Index dim_y() const override { return A_.cols(); }
  double value(const Vec& x, const Vec& y) const override;
  Vec grad_x(const Vec&, const Vec& y) const override { return A_ * y; }
  Vec grad_y(const Vec& x, const Vec&) const override { return A_.transpose() * x; }
  std::unique_ptr<PayoffTerm> clone() const override;
  bool accumulates() const override { return true; }
  bool absorb(const PayoffTerm& other) override;
  std::unique_ptr<PayoffTerm> fix_y(const Vec& y) const override;
  std::unique_ptr<PayoffTerm> fix_x(const Vec& x) const override;

  const Mat& A() const { return A_; }

 private:
  Mat A_;
};

// Negative entropy with the ln d offset; zero at the uniform distribution.
template <typename Derived>
typename Derived::Scalar entropy_value(const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  Scalar acc = std::log(Scalar(z.size()));
  for (Index i = 0; i < z.size(); ++i) {
    if (z(i) > Scalar(0)) acc += z(i) * std::log(z(i));
  }
  return acc;
}

template <typename Derived>
VecT<typename Derived::Scalar> entropy_grad(const Eigen::MatrixBase<Derived>& z) {
  return (1.0 + z.array().log()).matrix().eval();
}

// w_x R(x) - w_y R(y) + k.
class EntropyPair final : public PayoffTerm {
 public:
  EntropyPair(Index dx, Index dy, double wx, double wy, double k = 0.0)
      : dx_(dx), dy_(dy), wx_(wx), wy_(wy), k_(k) {}

  Index dim_x() const override { return dx_; }
  Index dim_y() const override { return dy_; }
  double value(const Vec& x, const Vec& y) const override;
  Vec grad_x(const Vec& x, const Vec& y) const override;
  Vec grad_y(const Vec& x, const Vec& y) const override;
  std::unique_ptr<PayoffTerm> clone() const override;
  bool accumulates() const override { return true; }
  bool absorb(const PayoffTerm& other) override;
  std::unique_ptr<PayoffTerm> fix_y(const Vec& y) const override;
  std::unique_ptr<PayoffTerm> fix_x(const Vec& x) const override;
  double entropy_weight_x() const override { return wx_; }
  double entropy_weight_y() const override { return wy_; }
  Vec smooth_grad_x(const Vec&, const Vec&) const override { return Vec::Zero(dx_); }
  Vec smooth_grad_y(const Vec&, const Vec&) const override { return Vec::Zero(dy_); }
  double k() const { return k_; }

 private:
  Index dx_, dy_;
  double wx_, wy_, k_;
};

// Lagrangian of a budgeted round with quadratic reward and consumption:
//   L(x, y) = -r(x) - y'(budget - c(x)),
//   r(x) = -x'Rx + r'x,  c_i(x) = x'C_i x + c_i'x.
// Sums of such rounds stay in the family (coefficients and budgets add).
class QuadraticKnapsackLagrangian final : public PayoffTerm {
 public:
  QuadraticKnapsackLagrangian(Mat reward_quad, Vec reward_lin,
                              std::vector<Mat> cons_quad, std::vector<Vec> cons_lin,
                              Vec budget_per_round);

  Index dim_x() const override { return reward_lin_.size(); }
  Index dim_y() const override { return budget_.size(); }
  double value(const Vec& x, const Vec& y) const override;
  Vec grad_x(const Vec& x, const Vec& y) const override;
  Vec grad_y(const Vec& x, const Vec& y) const override;
  std::unique_ptr<PayoffTerm> clone() const override;
  bool accumulates() const override { return true; }
  bool absorb(const PayoffTerm& other) override;
  std::unique_ptr<PayoffTerm> fix_y(const Vec& y) const override;
  std::unique_ptr<PayoffTerm> fix_x(const Vec& x) const override;

  double reward(const Vec& x) const;
  Vec consumption(const Vec& x) const;
  const Vec& budget_per_round() const { return budget_; }

 private:
  Mat reward_quad_;
  Vec reward_lin_;
  std::vector<Mat> cons_quad_;
  std::vector<Vec> cons_lin_;
  Vec budget_;
};

// Payoff given by closures; never folded into sums.
class ClosureTerm final : public PayoffTerm {
 public:
  using ValueFn = std::function<double(const Vec&, const Vec&)>;
  using GradFn = std::function<Vec(const Vec&, const Vec&)>;

  ClosureTerm(Index dx, Index dy, ValueFn value, GradFn gx, GradFn gy)
      : dx_(dx), dy_(dy), value_(std::move(value)), gx_(std::move(gx)), gy_(std::move(gy)) {}

  Index dim_x() const override { return dx_; }
  Index dim_y() const override { return dy_; }
  double value(const Vec& x, const Vec& y) const override { return value_(x, y); }
  Vec grad_x(const Vec& x, const Vec& y) const override { return gx_(x, y); }
  Vec grad_y(const Vec& x, const Vec& y) const override { return gy_(x, y); }
  std::unique_ptr<PayoffTerm> clone() const override;

 private:
  Index dx_, dy_;
  ValueFn value_;
  GradFn gx_, gy_;
};

// Running sum of terms. Closed-family terms are folded into accumulators;
// everything else is kept by shared reference.
class PayoffSum final : public PayoffTerm {
 public:
  PayoffSum(Index dx, Index dy) : dx_(dx), dy_(dy) {}
  PayoffSum(const PayoffSum& other);
  PayoffSum& operator=(const PayoffSum& other);
  PayoffSum(PayoffSum&&) noexcept = default;
  PayoffSum& operator=(PayoffSum&&) noexcept = default;

  void add(const std::shared_ptr<const PayoffTerm>& term);
  void add(const PayoffTerm& term);
  std::size_t folded_count() const { return accumulators_.size(); }
  std::size_t listed_count() const { return listed_.size(); }
  bool empty() const { return accumulators_.empty() && listed_.empty(); }
  const std::vector<std::unique_ptr<PayoffTerm>>& folded() const { return accumulators_; }
  const std::vector<std::shared_ptr<const PayoffTerm>>& listed() const { return listed_; }

  Index dim_x() const override { return dx_; }
  Index dim_y() const override { return dy_; }
  double value(const Vec& x, const Vec& y) const override;
  Vec grad_x(const Vec& x, const Vec& y) const override;
  Vec grad_y(const Vec& x, const Vec& y) const override;
  std::unique_ptr<PayoffTerm> clone() const override;
  std::unique_ptr<PayoffTerm> fix_y(const Vec& y) const override;
  std::unique_ptr<PayoffTerm> fix_x(const Vec& x) const override;
  double entropy_weight_x() const override;
  double entropy_weight_y() const override;
  Vec smooth_grad_x(const Vec& x, const Vec& y) const override;
  Vec smooth_grad_y(const Vec& x, const Vec& y) const override;

 private:
  void fold(std::unique_ptr<PayoffTerm> owned);

  Index dx_, dy_;
  std::vector<std::unique_ptr<PayoffTerm>> accumulators_;
  std::vector<std::shared_ptr<const PayoffTerm>> listed_;
};

// Running sum together with the summed metadata (G and H add up).
class PayoffAccumulator {
 public:
  PayoffAccumulator(Index dx, Index dy, NormTag norm = NormTag::L2);

  void add(const PayoffFunction& f);
  PayoffFunction snapshot() const;
  std::size_t count() const { return count_; }
  const PayoffSum& sum() const { return sum_; }

 private:
  PayoffSum sum_;
  double lipschitz_G_ = 0.0;
  double strong_H_ = 0.0;
  NormTag norm_;
  std::size_t count_ = 0;
};

PayoffFunction sum_of(const std::vector<PayoffFunction>& fs);

// ---------------------------------------------------------------------------
// Regularizers.

class Regularizer {
 public:
  enum class Kind { Zero, SquaredNorm, Entropy };

  static Regularizer zero(const FeasibleSet& set);
  // ||z||_2^2; 2-strongly convex in l2; G = 2 max ||z||_2 over the set.
  static Regularizer squared_norm(const FeasibleSet& set);
  // sum z ln z + ln d; 1-strongly convex in l1 on the simplex; G in l1 is
  // max(|ln theta|, 1) over the restricted simplex (infinite for theta = 0).
  static Regularizer entropy(const FeasibleSet& set);

  Kind kind() const { return kind_; }
  Index dimension() const { return set_.dimension(); }
  const FeasibleSet& set() const { return set_; }
  double value(const Vec& z) const;
  Vec grad(const Vec& z) const;
  double lipschitz() const { return lipschitz_; }
  double modulus() const { return modulus_; }
  NormTag norm_tag() const { return norm_; }

 private:
  Regularizer(Kind kind, FeasibleSet set, double lipschitz, double modulus, NormTag norm)
      : kind_(kind), set_(std::move(set)), lipschitz_(lipschitz), modulus_(modulus), norm_(norm) {}

  Kind kind_;
  FeasibleSet set_;
  double lipschitz_;
  double modulus_;
  NormTag norm_;
};

// ---------------------------------------------------------------------------
// Constructors.

// a*x*y + (h/2)(x-p)^2 - (h/2)(y-q)^2 on scalar x, y; G is the exact l2 bound
// of the gradient over X x Y (both default to [-10, 10]).
PayoffFunction make_quadratic_bilinear(double a, double h, double p, double q,
                                       const FeasibleSet& X = FeasibleSet::interval(-10.0, 10.0),
                                       const FeasibleSet& Y = FeasibleSet::interval(-10.0, 10.0));

// General quadratic form with G computed exactly over box X x Y (vertex
// enumeration) and H = min(lambda_min(P), lambda_min(Q)).
PayoffFunction make_quadratic_form(Mat P, Mat C, Mat Q, Vec u, Vec v, double k,
                                   const FeasibleSet& X, const FeasibleSet& Y);

// x'Ay over simplexes. With c = max |A_ij|: G = c for L1,
// G = sqrt(c)(sqrt(d1) + sqrt(d2)) for L2.
PayoffFunction make_bilinear(const Mat& A, NormTag norm = NormTag::L1);

struct RewardModel {
  Index dim = 1;  // dimension of x
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;
  double lipschitz = kInfinity;
};

struct ConsumptionModel {
  std::function<Vec(const Vec&)> value;     // length m
  std::function<Mat(const Vec&)> jacobian;  // m x n
  double lipschitz = kInfinity;             // per component
  double max_norm = kInfinity;              // bound on ||c(x)||_2 over X
};

// L(x, y) = -r(x) - y'(b/T - c(x)). With y_max given, G bounds the gradient
// over X x [0, y_max].
PayoffFunction make_knapsack_lagrangian(RewardModel r, ConsumptionModel c, const Vec& b,
                                        double T, const std::optional<Vec>& y_max = std::nullopt);

// Quadratic-family Lagrangian; G is exact over X x Y by vertex enumeration.
PayoffFunction make_quadratic_knapsack_lagrangian(const Mat& reward_quad, const Vec& reward_lin,
                                                  const std::vector<Mat>& cons_quad,
                                                  const std::vector<Vec>& cons_lin,
                                                  const Vec& b, double T, const FeasibleSet& X,
                                                  const FeasibleSet& Y);

// base + weight*reg_x(x) - weight*reg_y(y).
PayoffFunction regularize(const PayoffFunction& base, const Regularizer& reg_x,
                          const Regularizer& reg_y, double weight);

// max over the vertices of X x Y of the gradient's dual norm; the exact
// Lipschitz constant for payoffs whose gradient norm is convex in each block.
double vertex_lipschitz_bound(const PayoffTerm& term, const FeasibleSet& X, const FeasibleSet& Y,
                              NormTag norm);

}  // namespace osp
