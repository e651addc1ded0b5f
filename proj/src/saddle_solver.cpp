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

#include "osp/saddle_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "inner.hpp"

namespace osp {

using detail::Convex1;
using detail::Flat2;

void validate(const SolverConfig& cfg) {
  if (!(cfg.tol_gap > 0.0)) throw PreconditionError("SolverConfig: tol_gap must be > 0");
  if (cfg.max_iters <= 0) throw PreconditionError("SolverConfig: max_iters must be > 0");
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// The payoff together with its flattened view (when the family allows it).
struct Problem {
  const PayoffTerm& term;
  std::optional<Flat2> flat;
  const FeasibleSet& X;
  const FeasibleSet& Y;

  const Flat2* fp() const { return flat ? &*flat : nullptr; }

  double value(const Vec& x, const Vec& y) const {
    return flat ? flat->value(x, y) : term.value(x, y);
  }
  double wx() const { return flat ? flat->wx : term.entropy_weight_x(); }
  double wy() const { return flat ? flat->wy : term.entropy_weight_y(); }
  Vec smooth_gx(const Vec& x, const Vec& y) const {
    return flat ? flat->smooth_grad_x(x, y) : term.smooth_grad_x(x, y);
  }
  Vec smooth_gy(const Vec& x, const Vec& y) const {
    return flat ? flat->smooth_grad_y(x, y) : term.smooth_grad_y(x, y);
  }
  Vec gx(const Vec& x, const Vec& y) const {
    Vec g = smooth_gx(x, y);
    if (wx() != 0.0) g += wx() * entropy_grad(x);
    return g;
  }
  Vec gy(const Vec& x, const Vec& y) const {
    Vec g = smooth_gy(x, y);
    if (wy() != 0.0) g -= wy() * entropy_grad(y);
    return g;
  }
};

struct GapInfo {
  double gap = kInfinity;
  double upper = 0.0;  // certified >= max_y f(x, y)
  double lower = 0.0;  // certified <= min_x f(x, y)
  Vec y_br;
  Vec x_br;

  double tolerance(double tol) const {
    return std::max(tol, 64.0 * kEps * (std::abs(upper) + std::abs(lower)));
  }
};

OneSidedSolution best_response_y(const Problem& p, const Vec& x, double tol, long iters,
                                 const std::optional<Vec>& start = std::nullopt) {
  const Convex1 c = detail::restrict_to_y(p.term, p.fp(), x);
  return detail::solve_convex1(c, p.Y, start, tol, iters);
}

OneSidedSolution best_response_x(const Problem& p, const Vec& y, double tol, long iters,
                                 const std::optional<Vec>& start = std::nullopt) {
  const Convex1 c = detail::restrict_to_x(p.term, p.fp(), y);
  return detail::solve_convex1(c, p.X, start, tol, iters);
}

GapInfo measure_gap(const Problem& p, const Vec& x, const Vec& y, double tol, long iters) {
  GapInfo g;
  const double inner_tol = 0.25 * tol;
  const OneSidedSolution ry = best_response_y(p, x, inner_tol, iters, y);
  const OneSidedSolution rx = best_response_x(p, y, inner_tol, iters, x);
  g.upper = -ry.value + ry.fw_gap;
  g.lower = rx.value - rx.fw_gap;
  g.gap = std::max(0.0, g.upper - g.lower);
  g.y_br = ry.z;
  g.x_br = rx.z;
  return g;
}

void require_feasible(const FeasibleSet& S, const Vec& z, const char* what) {
  require_dim(z.size(), S.dimension(), what);
  if (!contains(S, z, kMembershipTol)) {
    throw PreconditionError(std::string(what) + ": infeasible warm start");
  }
}

SaddleSolution make_solution(const Problem& p, Vec x, Vec y, double gap, long iters, bool conv,
                             const char* method) {
  SaddleSolution s;
  s.value = p.value(x, y);
  s.x_star = std::move(x);
  s.y_star = std::move(y);
  s.gap = gap;
  s.iterations = iters;
  s.converged = conv;
  s.method = method;
  return s;
}

// ---------------------------------------------------------------------------
// 2x2 pure bilinear games on full simplexes.

std::optional<Mat> as_matrix_game(const Problem& p) {
  if (!p.flat) return std::nullopt;
  const Flat2& f = *p.flat;
  if (f.C.rows() != 2 || f.C.cols() != 2) return std::nullopt;
  const bool full_simplex = p.X.is_simplex_like() && p.Y.is_simplex_like() &&
                            p.X.simplex_floor() == 0.0 && p.Y.simplex_floor() == 0.0;
  if (!full_simplex || f.wx != 0.0 || f.wy != 0.0) return std::nullopt;
  if (f.P.cwiseAbs().maxCoeff() != 0.0 || f.Q.cwiseAbs().maxCoeff() != 0.0) return std::nullopt;
  // On simplexes u'x + v'y + k = x'(u 1' + 1 v' + k 1 1')y.
  Mat A = f.C;
  A.colwise() += f.u;
  A.rowwise() += f.v.transpose();
  A.array() += f.k;
  return A;
}

// ---------------------------------------------------------------------------
// Nested bisection when one side is a segment.

struct Segment {
  Vec a, b;
  Vec at(double s) const { return a + s * (b - a); }
  double param(const Vec& z) const {
    const Vec d = b - a;
    const double n2 = d.squaredNorm();
    return n2 > 0.0 ? std::clamp((z - a).dot(d) / n2, 0.0, 1.0) : 0.0;
  }
};

std::optional<Segment> segment_of(const FeasibleSet& S) {
  if (S.is_simplex_like()) {
    if (S.dimension() != 2) return std::nullopt;
    const double th = S.simplex_floor();
    Segment seg;
    seg.a = Vec(2);
    seg.b = Vec(2);
    seg.a << 1.0 - th, th;
    seg.b << th, 1.0 - th;
    return seg;
  }
  if (S.dimension() != 1) return std::nullopt;
  return Segment{S.lower_bounds(), S.upper_bounds()};
}

// Maximizes psi(y) = min_x f(x, y) (over_x) or minimizes phi(x) = max_y f(x, y)
// on the non-segment side. Smooth when the inner response is unique.
Vec envelope_solve(const Problem& p, bool over_x, const Vec& start, const SolverConfig& cfg) {
  const long inner_iters = std::min<long>(cfg.max_iters, 20000);
  const double inner_tol = 0.05 * cfg.tol_gap;
  Convex1 c;
  c.flat = false;
  if (over_x) {
    c.smooth_value = [&](const Vec& y) {
      const Vec x = best_response_x(p, y, inner_tol, inner_iters).z;
      return -p.value(x, y);
    };
    c.smooth_grad = [&](const Vec& y) {
      const Vec x = best_response_x(p, y, inner_tol, inner_iters).z;
      return Vec(-p.gy(x, y));
    };
    return detail::solve_convex1(c, p.Y, start, 0.25 * cfg.tol_gap, inner_iters).z;
  }
  c.smooth_value = [&](const Vec& x) {
    const Vec y = best_response_y(p, x, inner_tol, inner_iters).z;
    return p.value(x, y);
  };
  c.smooth_grad = [&](const Vec& x) {
    const Vec y = best_response_y(p, x, inner_tol, inner_iters).z;
    return p.gx(x, y);
  };
  return detail::solve_convex1(c, p.X, start, 0.25 * cfg.tol_gap, inner_iters).z;
}

SaddleSolution solve_nested(const Problem& p, const Segment& seg, bool over_x,
                            const SolverConfig& cfg, bool strongly) {
  const long inner_iters = std::min<long>(cfg.max_iters, 20000);
  const double inner_tol = 0.05 * cfg.tol_gap;
  // d(s) is increasing; its root minimizes phi(s) = max_y f(x(s), y)
  // (over_x) or maximizes psi(s) = min_x f(x, y(s)).
  Vec last_other;
  auto pair_at = [&](double s) -> std::pair<Vec, Vec> {
    const Vec z = seg.at(s);
    std::optional<Vec> start;
    if (last_other.size() > 0) start = last_other;
    if (over_x) {
      Vec y = best_response_y(p, z, inner_tol, inner_iters, start).z;
      last_other = y;
      return {z, y};
    }
    Vec x = best_response_x(p, z, inner_tol, inner_iters, start).z;
    last_other = x;
    return {x, z};
  };
  const Vec dir = seg.b - seg.a;
  auto deriv = [&](double s) {
    const auto [x, y] = pair_at(s);
    const double d = over_x ? dir.dot(p.gx(x, y)) : -dir.dot(p.gy(x, y));
    if (std::isnan(d)) throw NumericalError("solve_saddle: NaN derivative in nested solve");
    return d;
  };

  long iters = 0;
  double best_s = 0.5;
  double best_abs = kInfinity;
  auto eval = [&](double s) {
    ++iters;
    const double d = deriv(s);
    if (std::abs(d) < best_abs) {
      best_abs = std::abs(d);
      best_s = s;
    }
    return d;
  };
  auto finish = [&](double s, long it) {
    auto [x, y] = pair_at(s);
    // Without strong concavity the best response need not be the saddle's
    // other coordinate; recover it from the envelope.
    if (!strongly) {
      if (over_x) {
        y = envelope_solve(p, true, y, cfg);
      } else {
        x = envelope_solve(p, false, x, cfg);
      }
    }
    const GapInfo g = measure_gap(p, x, y, cfg.tol_gap, inner_iters);
    return make_solution(p, x, y, g.gap, it, g.gap <= g.tolerance(cfg.tol_gap), "nested_1d");
  };
  auto try_accept = [&](double s) -> std::optional<SaddleSolution> {
    if (!strongly) return std::nullopt;
    SaddleSolution sol = finish(s, iters);
    if (sol.converged) return sol;
    return std::nullopt;
  };

  double lo = 0.0, hi = 1.0, dlo = 0.0, dhi = 0.0;
  bool bracketed = false;
  if (cfg.warm_start) {
    const double sw = seg.param(over_x ? cfg.warm_start->first : cfg.warm_start->second);
    const double dw = eval(sw);
    if (std::abs(dw) * dir.norm() <= cfg.tol_gap) {
      if (auto sol = try_accept(sw)) return *sol;
    }
    if (dw == 0.0) return finish(sw, iters);
    // Expand a small bracket around the warm start.
    double step = 1e-3;
    if (dw < 0.0) {
      lo = sw;
      dlo = dw;
      for (;;) {
        hi = std::min(1.0, sw + step);
        dhi = eval(hi);
        if (dhi >= 0.0 || hi >= 1.0) break;
        lo = hi;
        dlo = dhi;
        step *= 8.0;
      }
      if (dhi <= 0.0) return finish(1.0, iters);
    } else {
      hi = sw;
      dhi = dw;
      for (;;) {
        lo = std::max(0.0, sw - step);
        dlo = eval(lo);
        if (dlo <= 0.0 || lo <= 0.0) break;
        hi = lo;
        dhi = dlo;
        step *= 8.0;
      }
      if (dlo >= 0.0) return finish(0.0, iters);
    }
    bracketed = true;
  }
  if (!bracketed) {
    dlo = eval(0.0);
    if (dlo >= 0.0) return finish(0.0, iters);
    dhi = eval(1.0);
    if (dhi <= 0.0) return finish(1.0, iters);
  }
  if (dlo == 0.0) return finish(lo, iters);
  if (dhi == 0.0) return finish(hi, iters);

  // Illinois regula falsi with bisection safeguard.
  int side = 0;
  double last_width = hi - lo;
  int stalls = 0;
  while (iters < cfg.max_iters && hi - lo > 4.0 * kEps) {
    double s;
    if (std::isfinite(dlo) && std::isfinite(dhi) && stalls < 2) {
      s = (lo * dhi - hi * dlo) / (dhi - dlo);
      if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
    } else {
      s = 0.5 * (lo + hi);
      stalls = 0;
    }
    const double ds = eval(s);
    if (ds == 0.0) return finish(s, iters);
    if (ds < 0.0) {
      lo = s;
      dlo = ds;
      if (side == -1) dhi *= 0.5;
      side = -1;
    } else {
      hi = s;
      dhi = ds;
      if (side == 1) dlo *= 0.5;
      side = 1;
    }
    const double width = hi - lo;
    stalls = width > 0.5 * last_width ? stalls + 1 : 0;
    last_width = width;
    // |d| * |s - s*| bounds the one-sided suboptimality of the segment player.
    if (std::abs(ds) * width <= 0.1 * cfg.tol_gap || width <= 1e-12) {
      if (auto sol = try_accept(s)) return *sol;
    }
  }
  SaddleSolution sol = finish(best_s, iters);
  if (!sol.converged && iters >= cfg.max_iters) sol.iterations = cfg.max_iters;
  return sol;
}

// ---------------------------------------------------------------------------
// Extragradient / mirror-prox with per-block prox maps.

struct Block {
  const FeasibleSet* set;
  bool entropic;
  double w;  // composite entropy weight handled inside the prox

  Vec prox(const Vec& z0, const Vec& g, double alpha) const {
    if (set->dimension() == 0) return z0;
    if (entropic) {
      const Vec v = (z0.array().log().matrix() - alpha * g) / (1.0 + alpha * w);
      return detail::entropic_argmin(v, set->simplex_floor()).cwiseMax(1e-300);
    }
    return project(*set, z0 - alpha * g);
  }
  double bregman(const Vec& a, const Vec& b) const {
    if (entropic) return detail::kl_divergence(a, b);
    return 0.5 * (a - b).squaredNorm();
  }
};

SaddleSolution solve_extragradient(const Problem& p, const SolverConfig& cfg, double strong_H) {
  const bool entX = detail::uses_entropic_geometry(p.X);
  const bool entY = detail::uses_entropic_geometry(p.Y);
  const Block bx{&p.X, entX, entX ? p.wx() : 0.0};
  const Block by{&p.Y, entY, entY ? p.wy() : 0.0};
  const long inner_iters = std::min<long>(cfg.max_iters, 20000);

  auto F = [&](const Vec& x, const Vec& y) {
    Vec gx = entX ? p.smooth_gx(x, y) : p.gx(x, y);
    Vec gy = entY ? Vec(-p.smooth_gy(x, y)) : Vec(-p.gy(x, y));
    if (!gx.allFinite() || !gy.allFinite()) {
      throw NumericalError("solve_saddle: non-finite gradient");
    }
    return std::make_pair(std::move(gx), std::move(gy));
  };

  Vec x = cfg.warm_start ? cfg.warm_start->first : center(p.X);
  Vec y = cfg.warm_start ? cfg.warm_start->second : center(p.Y);
  if (entX) x = detail::interiorize(x);
  if (entY) y = detail::interiorize(y);

  // Initial step from the operator's coupling scale.
  double L = 1.0;
  if (p.flat) {
    const Flat2& f = *p.flat;
    auto mx = [](const Mat& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; };
    L = std::max({mx(f.C) * std::sqrt(static_cast<double>(f.C.size()) + 1.0),
                  mx(f.P) * static_cast<double>(f.P.rows()),
                  mx(f.Q) * static_cast<double>(f.Q.rows()), 1e-12});
  }
  double alpha = 1.0 / L;

  const bool average_too = !(strong_H > 0.0);
  Vec sum_x = Vec::Zero(x.size());
  Vec sum_y = Vec::Zero(y.size());
  double sum_a = 0.0;

  // A small gap only bounds the distance to the saddle by sqrt(2 gap / H).
  // On strongly monotone Euclidean problems also ask for a small natural
  // residual r = |z - P(z - F(z))|, which bounds the variational inequality
  // by r (D + |F|). Polishing is capped once the gap criterion holds.
  const bool polish = strong_H > 0.0 && !entX && !entY;
  const double D = std::max(diameter(p.X) + diameter(p.Y), 1e-300);
  long polish_deadline = -1;
  auto residual_ok = [&](const Vec& cx, const Vec& cy) {
    const auto [fx, fy] = F(cx, cy);
    const double r = std::sqrt((cx - project(p.X, cx - fx)).squaredNorm() +
                               (cy - project(p.Y, cy - fy)).squaredNorm());
    const double Fn = std::sqrt(fx.squaredNorm() + fy.squaredNorm());
    return r * (D + Fn) <= std::max(cfg.tol_gap * D, 64.0 * kEps * (D + Fn) * (1.0 + Fn));
  };

  SaddleSolution best;
  best.gap = kInfinity;
  auto consider = [&](const Vec& cx, const Vec& cy, long it) -> bool {
    const GapInfo g = measure_gap(p, cx, cy, cfg.tol_gap, inner_iters);
    const bool gap_ok = g.gap <= g.tolerance(cfg.tol_gap);
    if (gap_ok && polish && polish_deadline < 0) polish_deadline = 2 * it + 200;
    const bool done = gap_ok && (!polish || residual_ok(cx, cy) || it >= polish_deadline);
    if (g.gap < best.gap || (done && gap_ok)) {
      best = make_solution(p, cx, cy, g.gap, it, false, "extragradient");
    }
    if (done) {
      best.converged = true;
      best.iterations = it;
      return true;
    }
    return false;
  };

  if (cfg.warm_start && consider(x, y, 0)) return best;

  const long check_every = 10;
  long it = 0;
  for (it = 1; it <= cfg.max_iters; ++it) {
    const auto [fx, fy] = F(x, y);
    Vec xn, yn, wx, wy;
    if (cfg.step_rule == StepRule::kGdaDiminishing) {
      const double a = alpha / std::sqrt(static_cast<double>(it));
      xn = bx.prox(x, fx, a);
      yn = by.prox(y, fy, a);
      wx = xn;
      wy = yn;
      sum_x += a * wx;
      sum_y += a * wy;
      sum_a += a;
    } else {
      for (int bt = 0; bt < 80; ++bt) {
        wx = bx.prox(x, fx, alpha);
        wy = by.prox(y, fy, alpha);
        const auto [gx, gy] = F(wx, wy);
        xn = bx.prox(x, gx, alpha);
        yn = by.prox(y, gy, alpha);
        const double lhs = alpha * ((gx - fx).dot(wx - xn) + (gy - fy).dot(wy - yn));
        const double rhs =
            bx.bregman(xn, wx) + bx.bregman(wx, x) + by.bregman(yn, wy) + by.bregman(wy, y);
        if (lhs <= 0.9 * rhs + 1e-300) break;
        alpha *= 0.5;
      }
      sum_x += alpha * wx;
      sum_y += alpha * wy;
      sum_a += alpha;
      alpha *= 1.05;
    }
    x = std::move(xn);
    y = std::move(yn);
    if (it % check_every == 0 || it == cfg.max_iters) {
      if (consider(x, y, it)) return best;
      if (average_too && sum_a > 0.0) {
        Vec ax = sum_x / sum_a;
        Vec ay = sum_y / sum_a;
        if (entX) ax /= ax.sum();
        if (entY) ay /= ay.sum();
        if (consider(project(p.X, ax), project(p.Y, ay), it)) return best;
      }
    }
  }
  best.iterations = cfg.max_iters;
  return best;
}

}  // namespace

SaddleSolution solve_saddle(const PayoffFunction& f, const FeasibleSet& X, const FeasibleSet& Y,
                            const SolverConfig& cfg) {
  validate(cfg);
  require_dim(f.dim_x(), X.dimension(), "solve_saddle X");
  require_dim(f.dim_y(), Y.dimension(), "solve_saddle Y");
  if (cfg.warm_start) {
    require_feasible(X, cfg.warm_start->first, "solve_saddle warm_start x");
    require_feasible(Y, cfg.warm_start->second, "solve_saddle warm_start y");
  }
  const Problem p{f.term(), detail::flatten(f.term()), X, Y};
  const long inner_iters = std::min<long>(cfg.max_iters, 20000);

  // One player has a single feasible point (or no coordinates): a one-sided solve.
  if (X.dimension() == 0 || diameter(X) == 0.0) {
    const Vec x = X.dimension() == 0 ? Vec(0) : center(X);
    const Vec y = best_response_y(p, x, 0.25 * cfg.tol_gap, inner_iters).z;
    const GapInfo g = measure_gap(p, x, y, cfg.tol_gap, inner_iters);
    return make_solution(p, x, y, g.gap, 0, g.gap <= g.tolerance(cfg.tol_gap), "one_sided");
  }
  if (Y.dimension() == 0 || diameter(Y) == 0.0) {
    const Vec y = Y.dimension() == 0 ? Vec(0) : center(Y);
    const Vec x = best_response_x(p, y, 0.25 * cfg.tol_gap, inner_iters).z;
    const GapInfo g = measure_gap(p, x, y, cfg.tol_gap, inner_iters);
    return make_solution(p, x, y, g.gap, 0, g.gap <= g.tolerance(cfg.tol_gap), "one_sided");
  }

  if (auto A = as_matrix_game(p)) {
    SaddleSolution s = solve_matrix_game_2x2(*A);
    s.value = p.value(s.x_star, s.y_star);
    return s;
  }

  if (cfg.step_rule == StepRule::kExtragradientFixed) {
    const bool strongly = f.strong_H() > 0.0;
    std::optional<SaddleSolution> nested;
    if (auto seg = segment_of(X)) {
      nested = solve_nested(p, *seg, true, cfg, strongly);
    } else if (auto seg = segment_of(Y)) {
      nested = solve_nested(p, *seg, false, cfg, strongly);
    }
    if (nested && (strongly || nested->converged)) return *nested;
    if (nested) {
      SolverConfig refine = cfg;
      refine.warm_start = std::make_pair(nested->x_star, nested->y_star);
      SaddleSolution eg = solve_extragradient(p, refine, f.strong_H());
      eg.iterations += nested->iterations;
      return eg.gap < nested->gap ? eg : *nested;
    }
  }
  return solve_extragradient(p, cfg, f.strong_H());
}

double gap_estimate(const PayoffTerm& f, const FeasibleSet& X, const FeasibleSet& Y, const Vec& x,
                    const Vec& y, const SolverConfig& inner_cfg) {
  validate(inner_cfg);
  require_dim(f.dim_x(), X.dimension(), "gap_estimate X");
  require_dim(f.dim_y(), Y.dimension(), "gap_estimate Y");
  require_dim(x.size(), X.dimension(), "gap_estimate x");
  require_dim(y.size(), Y.dimension(), "gap_estimate y");
  const Problem p{f, detail::flatten(f), X, Y};
  return measure_gap(p, x, y, inner_cfg.tol_gap, inner_cfg.max_iters).gap;
}

double gap_estimate(const PayoffFunction& f, const FeasibleSet& X, const FeasibleSet& Y,
                    const Vec& x, const Vec& y, const SolverConfig& inner_cfg) {
  return gap_estimate(f.term(), X, Y, x, y, inner_cfg);
}

OneSidedSolution minimize_over(const PayoffTerm& h, const FeasibleSet& X, const SolverConfig& cfg,
                               const std::optional<Vec>& start) {
  validate(cfg);
  require_dim(h.dim_x(), X.dimension(), "minimize_over");
  const Convex1 c = detail::one_sided(h, true, 1.0);
  return detail::solve_convex1(c, X, start, cfg.tol_gap, cfg.max_iters);
}

OneSidedSolution maximize_over(const PayoffTerm& h, const FeasibleSet& Y, const SolverConfig& cfg,
                               const std::optional<Vec>& start) {
  validate(cfg);
  require_dim(h.dim_y(), Y.dimension(), "maximize_over");
  const Convex1 c = detail::one_sided(h, false, -1.0);
  OneSidedSolution s = detail::solve_convex1(c, Y, start, cfg.tol_gap, cfg.max_iters);
  s.value = -s.value;
  return s;
}

SaddleSolution solve_matrix_game_2x2(const Mat& A) {
  require_dim(A.rows(), 2, "solve_matrix_game_2x2 rows");
  require_dim(A.cols(), 2, "solve_matrix_game_2x2 cols");
  SaddleSolution s;
  s.method = "closed_form_2x2";
  s.converged = true;
  s.gap = 0.0;
  const Vec uniform = Vec::Constant(2, 0.5);
  if (A.maxCoeff() == A.minCoeff()) {
    s.x_star = uniform;
    s.y_star = uniform;
    s.value = A(0, 0);
    return s;
  }
  // Pure saddle: the row player minimizes, the column player maximizes.
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      const bool col_best = A(i, j) >= A(i, 1 - j);
      const bool row_best = A(i, j) <= A(1 - i, j);
      if (col_best && row_best) {
        s.x_star = Vec::Zero(2);
        s.y_star = Vec::Zero(2);
        s.x_star(i) = 1.0;
        s.y_star(j) = 1.0;
        s.value = A(i, j);
        return s;
      }
    }
  }
  // No pure saddle implies a nonzero denominator.
  const double den = A(0, 0) - A(0, 1) - A(1, 0) + A(1, 1);
  const double p = (A(1, 1) - A(1, 0)) / den;
  const double q = (A(1, 1) - A(0, 1)) / den;
  s.x_star = Vec(2);
  s.y_star = Vec(2);
  s.x_star << p, 1.0 - p;
  s.y_star << q, 1.0 - q;
  s.value = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / den;
  return s;
}

double hindsight_value(const std::vector<PayoffFunction>& history, const FeasibleSet& X,
                       const FeasibleSet& Y, const SolverConfig& cfg) {
  if (history.empty()) throw PreconditionError("hindsight_value: empty history");
  return solve_saddle(sum_of(history), X, Y, cfg).value;
}

}  // namespace osp
