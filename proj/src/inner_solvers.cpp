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

#include "inner.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace osp::detail {

double Flat2::value(const Vec& x, const Vec& y) const {
  double out = 0.5 * x.dot(P * x) + x.dot(C * y) - 0.5 * y.dot(Q * y) + u.dot(x) + v.dot(y) + k;
  if (wx != 0.0 && x.size() > 0) out += wx * entropy_value(x);
  if (wy != 0.0 && y.size() > 0) out -= wy * entropy_value(y);
  return out;
}

namespace {

bool flatten_into(const PayoffTerm& term, Flat2& acc) {
  if (const auto* q = dynamic_cast<const QuadraticForm*>(&term)) {
    acc.P += 0.5 * (q->P() + q->P().transpose());
    acc.C += q->C();
    acc.Q += 0.5 * (q->Q() + q->Q().transpose());
    acc.u += q->u();
    acc.v += q->v();
    acc.k += q->k();
    return true;
  }
  if (const auto* l = dynamic_cast<const LinearTerm*>(&term)) {
    acc.u += l->u();
    acc.v += l->v();
    acc.k += l->k();
    return true;
  }
  if (const auto* b = dynamic_cast<const BilinearTerm*>(&term)) {
    acc.C += b->A();
    return true;
  }
  if (const auto* e = dynamic_cast<const EntropyPair*>(&term)) {
    acc.wx += e->entropy_weight_x();
    acc.wy += e->entropy_weight_y();
    acc.k += e->k();
    return true;
  }
  if (const auto* s = dynamic_cast<const PayoffSum*>(&term)) {
    for (const auto& a : s->folded()) {
      if (!flatten_into(*a, acc)) return false;
    }
    for (const auto& l : s->listed()) {
      if (!flatten_into(*l, acc)) return false;
    }
    return true;
  }
  return false;
}

// Largest eigenvalue of a symmetric PSD matrix (0 for empty).
double lambda_max(const Mat& M) {
  if (M.size() == 0) return 0.0;
  if (M.rows() == 1) return M(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

bool is_diagonal(const Mat& M) {
  for (Index j = 0; j < M.cols(); ++j) {
    for (Index i = 0; i < M.rows(); ++i) {
      if (i != j && M(i, j) != 0.0) return false;
    }
  }
  return true;
}

void check_finite(const Vec& g, const char* what) {
  if (!g.allFinite()) throw NumericalError(std::string("non-finite gradient in ") + what);
}

}  // namespace

std::optional<Flat2> flatten(const PayoffTerm& term) {
  const Index n = term.dim_x();
  const Index m = term.dim_y();
  Flat2 acc;
  acc.P = Mat::Zero(n, n);
  acc.C = Mat::Zero(n, m);
  acc.Q = Mat::Zero(m, m);
  acc.u = Vec::Zero(n);
  acc.v = Vec::Zero(m);
  if (!flatten_into(term, acc)) return std::nullopt;
  return acc;
}

double Convex1::h(const Vec& z) const {
  if (flat) return 0.5 * z.dot(M * z) + g.dot(z) + k;
  return smooth_value(z);
}

Vec Convex1::dh(const Vec& z) const {
  if (flat) return M * z + g;
  return smooth_grad(z);
}

double Convex1::value(const Vec& z) const {
  double out = h(z);
  if (w != 0.0 && z.size() > 0) out += w * entropy_value(z);
  return out;
}

Convex1 restrict_to_x(const PayoffTerm& f, const Flat2* flat, const Vec& y) {
  if (flat != nullptr) {
    Convex1 c;
    c.flat = true;
    c.M = flat->P;
    c.g = flat->C * y + flat->u;
    c.k = flat->v.dot(y) - 0.5 * y.dot(flat->Q * y) + flat->k;
    if (flat->wy != 0.0 && y.size() > 0) c.k -= flat->wy * entropy_value(y);
    c.w = flat->wx;
    return c;
  }
  std::shared_ptr<const PayoffTerm> fixed = f.fix_y(y);
  return one_sided(*fixed, true, 1.0);
}

Convex1 restrict_to_y(const PayoffTerm& f, const Flat2* flat, const Vec& x) {
  if (flat != nullptr) {
    Convex1 c;
    c.flat = true;
    c.M = flat->Q;
    c.g = -(flat->C.transpose() * x + flat->v);
    c.k = -(0.5 * x.dot(flat->P * x) + flat->u.dot(x) + flat->k);
    if (flat->wx != 0.0 && x.size() > 0) c.k -= flat->wx * entropy_value(x);
    c.w = flat->wy;
    return c;
  }
  std::shared_ptr<const PayoffTerm> fixed = f.fix_x(x);
  return one_sided(*fixed, false, -1.0);
}

Convex1 one_sided(const PayoffTerm& h, bool x_side, double sign) {
  if (x_side && h.dim_y() != 0) throw DimensionError("one-sided term must have dim_y() == 0");
  if (!x_side && h.dim_x() != 0) throw DimensionError("one-sided term must have dim_x() == 0");
  Convex1 c;
  if (auto fl = flatten(h)) {
    // Minimizing sign * h; for a y-side term h = -1/2 y'Qy + v'y + k - wy R(y).
    c.flat = true;
    if (x_side) {
      c.M = sign * fl->P;
      c.g = sign * fl->u;
      c.w = sign * fl->wx;
    } else {
      c.M = -sign * fl->Q;
      c.g = sign * fl->v;
      c.w = -sign * fl->wy;
    }
    c.k = sign * fl->k;
    return c;
  }
  std::shared_ptr<const PayoffTerm> keep = h.clone();
  c.keep_alive = keep;
  const PayoffTerm* t = keep.get();
  const Vec empty(0);
  if (x_side) {
    const double w = t->entropy_weight_x();
    c.w = sign * w;
    c.smooth_value = [t, sign, w, empty](const Vec& z) {
      double v = t->value(z, empty);
      if (w != 0.0) v -= w * entropy_value(z);
      return sign * v;
    };
    c.smooth_grad = [t, sign, empty](const Vec& z) {
      return Vec(sign * t->smooth_grad_x(z, empty));
    };
  } else {
    const double w = t->entropy_weight_y();
    c.w = -sign * w;
    c.smooth_value = [t, sign, w, empty](const Vec& z) {
      double v = t->value(empty, z);
      if (w != 0.0) v += w * entropy_value(z);
      return sign * v;
    };
    c.smooth_grad = [t, sign, empty](const Vec& z) {
      return Vec(sign * t->smooth_grad_y(empty, z));
    };
  }
  return c;
}

Vec entropic_argmin(const Vec& v, double theta) {
  const Index d = v.size();
  if (d == 0) return Vec(0);
  if (theta * static_cast<double>(d) >= 1.0 - 1e-15) {
    return Vec::Constant(d, 1.0 / static_cast<double>(d));
  }
  const double vmax = v.maxCoeff();
  const Vec e = (v.array() - vmax).exp().matrix();
  std::vector<bool> clamped(static_cast<std::size_t>(d), false);
  Index n_clamped = 0;
  double c = 0.0;
  for (;;) {
    double denom = 0.0;
    for (Index i = 0; i < d; ++i) {
      if (!clamped[static_cast<std::size_t>(i)]) denom += e(i);
    }
    c = (1.0 - theta * static_cast<double>(n_clamped)) / denom;
    bool changed = false;
    for (Index i = 0; i < d; ++i) {
      if (!clamped[static_cast<std::size_t>(i)] && c * e(i) < theta) {
        clamped[static_cast<std::size_t>(i)] = true;
        ++n_clamped;
        changed = true;
      }
    }
    if (!changed) break;
  }
  Vec z(d);
  for (Index i = 0; i < d; ++i) z(i) = clamped[static_cast<std::size_t>(i)] ? theta : c * e(i);
  return z;
}

double kl_divergence(const Vec& a, const Vec& b) {
  double out = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) > 0.0) out += a(i) * std::log(a(i) / b(i));
  }
  return std::max(out, 0.0);
}

Vec interiorize(const Vec& z) {
  if (z.size() == 0 || z.minCoeff() > 0.0) return z;
  constexpr double kMix = 1e-9;
  return ((1.0 - kMix) * z.array() + kMix / static_cast<double>(z.size())).matrix();
}

bool uses_entropic_geometry(const FeasibleSet& set) {
  return set.is_simplex_like() && set.dimension() >= 2;
}

namespace {

OneSidedSolution finish(const Convex1& prob, Vec z, double fw, long iters) {
  OneSidedSolution out;
  out.value = prob.value(z);
  out.fw_gap = std::max(fw, 0.0);
  out.z = std::move(z);
  out.iterations = iters;
  return out;
}

// Closed forms: linear objectives, entropic-linear objectives on simplexes
// and separable quadratics on boxes.
std::optional<OneSidedSolution> closed_form(const Convex1& prob, const FeasibleSet& set) {
  if (!prob.flat) return std::nullopt;
  const bool quad_free = prob.M.size() == 0 || prob.M.cwiseAbs().maxCoeff() == 0.0;
  const bool entropic = uses_entropic_geometry(set);
  if (quad_free && prob.w == 0.0) return finish(prob, linear_minimizer(set, prob.g), 0.0, 0);
  if (quad_free && prob.w > 0.0 && entropic) {
    return finish(prob, entropic_argmin(-prob.g / prob.w, set.simplex_floor()), 0.0, 0);
  }
  if (prob.w == 0.0 && !set.is_simplex_like() && is_diagonal(prob.M)) {
    const Vec lo = set.lower_bounds();
    const Vec hi = set.upper_bounds();
    Vec z(prob.g.size());
    for (Index i = 0; i < z.size(); ++i) {
      const double m = prob.M(i, i);
      if (m > 0.0) {
        z(i) = std::clamp(-prob.g(i) / m, lo(i), hi(i));
      } else if (m == 0.0) {
        z(i) = prob.g(i) > 0.0 ? lo(i) : hi(i);
      } else {
        return std::nullopt;  // concave coordinate: not a convex problem
      }
    }
    return finish(prob, std::move(z), 0.0, 0);
  }
  return std::nullopt;
}

// Frank-Wolfe gap for the composite objective h + w R.
double fw_gap(const Convex1& prob, const FeasibleSet& set, const Vec& z, const Vec& grad,
              bool entropic) {
  if (entropic && prob.w > 0.0) {
    const Vec zb = entropic_argmin(-grad / prob.w, set.simplex_floor());
    return grad.dot(z - zb) + prob.w * (entropy_value(z) - entropy_value(zb));
  }
  const Vec zb = linear_minimizer(set, grad);
  return grad.dot(z - zb);
}

OneSidedSolution projected_gradient(const Convex1& prob, const FeasibleSet& set, Vec z,
                                    double tol, long max_iters) {
  // Entropy on a non-simplex set is folded into the smooth part.
  auto value = [&](const Vec& p) { return prob.value(p); };
  auto grad = [&](const Vec& p) {
    Vec gr = prob.dh(p);
    if (prob.w != 0.0) gr += prob.w * entropy_grad(p);
    return gr;
  };
  double alpha = 1.0;
  if (prob.flat && prob.w == 0.0) {
    const double L = lambda_max(prob.M);
    alpha = L > 0.0 ? 1.0 / L : 1.0;
  }
  double fz = value(z);
  long it = 0;
  double fw = 0.0;
  for (;; ++it) {
    const Vec gr = grad(z);
    check_finite(gr, "projected gradient");
    fw = fw_gap(prob, set, z, gr, false);
    if (fw <= tol || it >= max_iters) break;
    for (int bt = 0; bt < 60; ++bt) {
      const Vec zn = project(set, z - alpha * gr);
      const Vec dz = zn - z;
      const double fn = value(zn);
      if (fn <= fz + gr.dot(dz) + dz.squaredNorm() / (2.0 * alpha) + 1e-15 * std::abs(fz)) {
        z = zn;
        fz = fn;
        alpha *= 1.25;
        break;
      }
      alpha *= 0.5;
    }
  }
  return finish(prob, std::move(z), fw, it);
}

OneSidedSolution entropic_descent(const Convex1& prob, const FeasibleSet& set, Vec z, double tol,
                                  long max_iters) {
  const double theta = set.simplex_floor();
  z = interiorize(z);
  double alpha = 1.0;
  if (prob.flat) {
    const double L = prob.M.size() ? prob.M.cwiseAbs().maxCoeff() : 0.0;
    alpha = L > 0.0 ? 1.0 / L : 1.0;
  }
  double hz = prob.h(z);
  long it = 0;
  double fw = 0.0;
  for (;; ++it) {
    const Vec gr = prob.dh(z);
    check_finite(gr, "entropic descent");
    fw = fw_gap(prob, set, z, gr, true);
    if (fw <= tol || it >= max_iters) break;
    const Vec logz = z.array().log().matrix();
    for (int bt = 0; bt < 60; ++bt) {
      const Vec v = (logz - alpha * gr) / (1.0 + alpha * prob.w);
      const Vec zn = entropic_argmin(v, theta);
      const double hn = prob.h(zn);
      if (hn <= hz + gr.dot(zn - z) + kl_divergence(zn, z) / alpha + 1e-15 * std::abs(hz)) {
        z = zn;
        hz = hn;
        alpha *= 1.25;
        break;
      }
      alpha *= 0.5;
    }
  }
  return finish(prob, std::move(z), fw, it);
}

}  // namespace

OneSidedSolution solve_convex1(const Convex1& prob, const FeasibleSet& set,
                               const std::optional<Vec>& start, double tol, long max_iters) {
  const Index d = set.dimension();
  if (d == 0) return finish(prob, Vec(0), 0.0, 0);
  if (diameter(set) == 0.0) return finish(prob, center(set), 0.0, 0);
  if (auto cf = closed_form(prob, set)) return *cf;
  Vec z0 = start ? project(set, *start) : center(set);
  if (uses_entropic_geometry(set) && prob.w > 0.0) {
    return entropic_descent(prob, set, std::move(z0), tol, max_iters);
  }
  return projected_gradient(prob, set, std::move(z0), tol, max_iters);
}

}  // namespace osp::detail
