#include "refgp/trust_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "refgp/errors.hpp"

namespace refgp {

using Eigen::Matrix2d;
using Eigen::Vector2d;

namespace {

double step_norm(const Vector2d& gbar, const Vector2d& lam, double mu) {
  const double s0 = gbar[0] / (lam[0] + mu);
  const double s1 = gbar[1] / (lam[1] + mu);
  return std::sqrt(s0 * s0 + s1 * s1);
}

Vector2d clamp_box(const Vector2d& u, const TrustRegionOptions& opts) {
  Vector2d out;
  for (int i = 0; i < 2; ++i)
    out[i] = std::clamp(u[i], opts.box_lo, opts.box_hi);
  return out;
}

}  // namespace

TrustRegionStep solve_subproblem(const Matrix2d& H, const Vector2d& g,
                                 double delta) {
  Eigen::SelfAdjointEigenSolver<Matrix2d> es(H);
  const Vector2d lam = es.eigenvalues();  // ascending
  const Matrix2d Q = es.eigenvectors();
  const Vector2d gbar = Q.transpose() * g;
  const double gnorm = g.norm();
  const double scale = std::max({1.0, std::abs(lam[0]), std::abs(lam[1])});

  // Interior Newton step when H is positive definite.
  if (lam[0] > 0.0) {
    const Vector2d sn(-gbar[0] / lam[0], -gbar[1] / lam[1]);
    if (sn.norm() <= delta) return {Q * sn, 0.0};
  }

  const double mu_lo = std::max(0.0, -lam[0]);

  // Hard case: the gradient has (numerically) no component along the most
  // negative curvature direction and the regularized step stays interior.
  const bool g0_tiny = std::abs(gbar[0]) <= 1e-13 * scale * std::max(1.0, gnorm);
  if (lam[0] <= 0.0 && g0_tiny) {
    const double denom = lam[1] + mu_lo;
    const double s1 = denom > 0.0 ? -gbar[1] / denom : 0.0;
    if (std::abs(s1) <= delta) {
      const double t = std::sqrt(std::max(0.0, delta * delta - s1 * s1));
      Vector2d sbar(t, s1);
      return {Q * sbar, mu_lo};
    }
  }

  // Boundary solution: find mu > mu_lo with |s(mu)| = delta by bisection on
  // the strictly decreasing |s(mu)|.
  double lo = mu_lo;
  double hi = std::max(mu_lo, gnorm / delta - lam[0]) + scale + 1.0;
  while (step_norm(gbar, lam, hi) > delta) hi = 2.0 * hi + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (step_norm(gbar, lam, mid) > delta)
      lo = mid;
    else
      hi = mid;
  }
  const double mu = 0.5 * (lo + hi);
  Vector2d sbar(-gbar[0] / (lam[0] + mu), -gbar[1] / (lam[1] + mu));
  return {Q * sbar, mu};
}

TrustRegionResult minimize(const Objective2d& objective, const Vector2d& u0,
                           const TrustRegionOptions& opts) {
  TrustRegionResult res;
  res.u = clamp_box(u0, opts);
  objective(res.u, res.f, res.grad, res.hess);
  res.evaluations = 1;
  if (!std::isfinite(res.f))
    throw numeric_error("objective is not finite at the start point");

  double delta = opts.delta0;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    res.iterations = iter;
    Eigen::SelfAdjointEigenSolver<Matrix2d> es(res.hess);
    const double lam_min = es.eigenvalues()[0];
    const double hnorm = res.hess.cwiseAbs().maxCoeff();
    if (res.grad.cwiseAbs().maxCoeff() <= opts.grad_tol &&
        lam_min >= -1e-10 * std::max(1.0, hnorm)) {
      res.converged = true;
      return res;
    }

    const TrustRegionStep step = solve_subproblem(res.hess, res.grad, delta);
    const Vector2d cand = clamp_box(res.u + step.s, opts);
    const Vector2d s = cand - res.u;
    const double pred =
        -(res.grad.dot(s) + 0.5 * s.dot(res.hess * s));
    if (s.norm() == 0.0 || pred <= 0.0) {
      delta *= 0.25;
      if (delta < 1e-14) return res;
      continue;
    }

    double f_new = std::numeric_limits<double>::infinity();
    Vector2d g_new;
    Matrix2d h_new;
    bool eval_ok = true;
    try {
      objective(cand, f_new, g_new, h_new);
      ++res.evaluations;
      if (!std::isfinite(f_new)) eval_ok = false;
    } catch (const numeric_error&) {
      eval_ok = false;
    }

    const double rho = eval_ok ? (res.f - f_new) / pred
                               : -std::numeric_limits<double>::infinity();
    if (rho < 0.25) {
      delta = 0.25 * std::min(delta, s.norm());
      if (delta < 1e-14) return res;
    } else if (rho > 0.75 && s.norm() >= 0.99 * delta) {
      delta = std::min(2.0 * delta, opts.delta_max);
    }
    if (eval_ok && rho > 1e-4) {
      res.u = cand;
      res.f = f_new;
      res.grad = g_new;
      res.hess = h_new;
    }
  }
  res.iterations = opts.max_iter;
  return res;
}

TrustRegionResult minimize_multistart(const Objective2d& objective,
                                      const std::vector<Vector2d>& starts,
                                      const TrustRegionOptions& opts) {
  bool have_best = false;
  TrustRegionResult best;
  for (const Vector2d& u0 : starts) {
    TrustRegionResult r;
    try {
      r = minimize(objective, u0, opts);
    } catch (const numeric_error&) {
      continue;
    }
    if (!r.converged) continue;
    if (!have_best || r.f < best.f) {
      best = r;
      have_best = true;
    }
  }
  if (!have_best)
    throw numeric_error(
        "optimization failed: no start converged to a local minimum with a "
        "positive semidefinite Hessian");
  return best;
}

std::vector<Vector2d> default_starts() {
  const double vals[3] = {-3.0, -1.0, 1.0};
  std::vector<Vector2d> starts;
  for (double a : vals)
    for (double b : vals) starts.emplace_back(a, b);
  return starts;
}

}  // namespace refgp
