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

#include "osp/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osp/rng.hpp"

namespace osp::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Grid argmax of g on [lo, hi], zoomed twice around the incumbent.
std::pair<double, double> zoom_argmax(const std::function<double(double)>& g, double lo, double hi,
                                      int n) {
  double best_s = lo, best_v = -kInf;
  double a = lo, b = hi;
  for (int phase = 0; phase < 3; ++phase) {
    const double h = (b - a) / (n - 1);
    for (int k = 0; k < n; ++k) {
      const double s = a + h * k;
      const double v = g(s);
      if (v > best_v) {
        best_v = v;
        best_s = s;
      }
    }
    a = std::max(lo, best_s - 2.0 * h);
    b = std::min(hi, best_s + 2.0 * h);
  }
  return {best_s, best_v};
}

}  // namespace

GridSaddle saddle_1d(const std::function<double(double, double)>& f, double xlo, double xhi,
                     double ylo, double yhi, int n) {
  auto inner = [&](double x) {
    return zoom_argmax([&](double y) { return f(x, y); }, ylo, yhi, n);
  };
  const auto [xs, neg] = zoom_argmax([&](double x) { return -inner(x).second; }, xlo, xhi, n);
  const auto [ys, val] = inner(xs);
  (void)neg;
  return GridSaddle{xs, ys, val};
}

Grid2x2 game_2x2(const Mat& A, int n) {
  Grid2x2 out;
  double best = kInf;
  for (int k = 0; k < n; ++k) {
    const double p = static_cast<double>(k) / (n - 1);
    const double c0 = p * A(0, 0) + (1 - p) * A(1, 0);
    const double c1 = p * A(0, 1) + (1 - p) * A(1, 1);
    const double v = std::max(c0, c1);
    if (v < best) {
      best = v;
      out.p = p;
    }
  }
  out.value = best;
  double best_q = -kInf;
  for (int k = 0; k < n; ++k) {
    const double q = static_cast<double>(k) / (n - 1);
    const double r0 = q * A(0, 0) + (1 - q) * A(0, 1);
    const double r1 = q * A(1, 0) + (1 - q) * A(1, 1);
    const double v = std::min(r0, r1);
    if (v > best_q) {
      best_q = v;
      out.q = q;
    }
  }
  return out;
}

Vec nearest_on_box_grid(const Vec& lower, const Vec& upper, const Vec& z, int n) {
  const Index d = z.size();
  if (d < 1 || d > 2) throw PreconditionError("nearest_on_box_grid: dimension 1 or 2 only");
  Vec lo = lower, hi = upper;
  Vec best = lower;
  double best_d = kInf;
  for (int phase = 0; phase < 4; ++phase) {
    const Vec h = (hi - lo) / (n - 1);
    const int n2 = d == 2 ? n : 1;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n2; ++j) {
        Vec p(d);
        p(0) = lo(0) + h(0) * i;
        if (d == 2) p(1) = lo(1) + h(1) * j;
        const double dist = (p - z).squaredNorm();
        if (dist < best_d) {
          best_d = dist;
          best = p;
        }
      }
    }
    lo = (best - 2.0 * h).cwiseMax(lower);
    hi = (best + 2.0 * h).cwiseMin(upper);
  }
  return best;
}

Vec nearest_on_simplex_grid(Index d, double theta, const Vec& z, int n) {
  if (d < 2 || d > 3) throw PreconditionError("nearest_on_simplex_grid: dimension 2 or 3 only");
  // Free coordinates (a, b); the last one is 1 - a - b (b unused for d = 2).
  const double top = 1.0 - (d - 1) * theta;
  double alo = theta, ahi = top, blo = theta, bhi = d == 3 ? top : theta;
  Vec best = Vec::Constant(d, 1.0 / d);
  double best_d = kInf;
  for (int phase = 0; phase < 4; ++phase) {
    const double ha = (ahi - alo) / n, hb = (bhi - blo) / n;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= (d == 3 ? n : 0); ++j) {
        const double a = alo + ha * i;
        const double b = blo + hb * j;
        Vec p(d);
        if (d == 2) {
          p << a, 1.0 - a;
        } else {
          p << a, b, 1.0 - a - b;
        }
        if (p.minCoeff() < theta - 1e-15) continue;
        const double dist = (p - z).squaredNorm();
        if (dist < best_d) {
          best_d = dist;
          best = p;
        }
      }
    }
    alo = std::max(theta, best(0) - 2.0 * ha);
    ahi = std::min(top, best(0) + 2.0 * ha);
    if (d == 3) {
      blo = std::max(theta, best(1) - 2.0 * hb);
      bhi = std::min(top, best(1) + 2.0 * hb);
    }
  }
  return best;
}

Mat estimator_expectation(const Mat& A, const Vec& x, const Vec& y, const Estimator& est) {
  Mat sum = Mat::Zero(A.rows(), A.cols());
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) sum += x(i) * y(j) * est(A(i, j), i, j, x, y);
  }
  return sum;
}

McEstimate sec8_monte_carlo(const std::function<double(double, double)>& g, long samples,
                            std::uint64_t seed) {
  Rng rng(seed);
  double s = 0.0, s2 = 0.0;
  for (long k = 0; k < samples; ++k) {
    const double b = 20.0 * rng.uniform();
    const double a = 3.0 * rng.uniform();
    const double v = g(b, a);
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(samples);
  McEstimate out;
  out.mean = s / n;
  const double var = std::max(0.0, (s2 - n * out.mean * out.mean) / (n - 1));
  out.stderr_ = std::sqrt(var / n);
  return out;
}

double constrained_max_1d(const std::function<double(double)>& reward,
                          const std::vector<std::function<double(double)>>& constraints,
                          double lo, double hi, int n) {
  auto g = [&](double x) {
    for (const auto& c : constraints) {
      if (c(x) > 0.0) return -kInf;
    }
    return reward(x);
  };
  return zoom_argmax(g, lo, hi, n).second;
}

double grid_min_1d(const std::function<double(double)>& f, double lo, double hi, int n) {
  return -zoom_argmax([&](double x) { return -f(x); }, lo, hi, n).second;
}

}  // namespace osp::oracle
