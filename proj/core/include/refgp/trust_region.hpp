#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace refgp {

// Objective callback: fills value, gradient, Hessian at u.
using Objective2d = std::function<void(const Eigen::Vector2d&, double&,
                                       Eigen::Vector2d&, Eigen::Matrix2d&)>;

struct TrustRegionOptions {
  double grad_tol = 1e-8;   // infinity-norm stopping tolerance
  int max_iter = 200;
  double delta0 = 1.0;
  double delta_max = 100.0;
  double box_lo = -25.0;    // bounds on each coordinate of u
  double box_hi = 25.0;
};

struct TrustRegionResult {
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  double f = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

// Exact solution of min g's + 1/2 s'Hs subject to |s| <= delta (2x2 case,
// via eigendecomposition, including the hard case).  Returns the step and the
// Lagrange multiplier mu >= 0 with (H + mu I)s = -g.
struct TrustRegionStep {
  Eigen::Vector2d s;
  double mu;
};
TrustRegionStep solve_subproblem(const Eigen::Matrix2d& H,
                                 const Eigen::Vector2d& g, double delta);

// Minimizes the objective inside the box; converged means the gradient test
// passed at a point where the Hessian is positive semidefinite.
TrustRegionResult minimize(const Objective2d& objective,
                           const Eigen::Vector2d& u0,
                           const TrustRegionOptions& opts = {});

// Runs `minimize` from each start and returns the best converged result;
// throws numeric_error when every start fails.
TrustRegionResult minimize_multistart(const Objective2d& objective,
                                      const std::vector<Eigen::Vector2d>& starts,
                                      const TrustRegionOptions& opts = {});

// The default start grid {-3, -1, 1} x {-3, -1, 1} in u = (log l, log eta).
std::vector<Eigen::Vector2d> default_starts();

}  // namespace refgp
