#include <doctest.h>

#include <cmath>

#include "refgp/errors.hpp"
#include "refgp/rng.hpp"
#include "refgp/trust_region.hpp"

using namespace refgp;

namespace {

// KKT conditions for min g's + 1/2 s'Hs, |s| <= delta:
//   (H + mu I) s = -g,  mu >= 0,  mu (delta - |s|) = 0,  H + mu I PSD.
void check_kkt(const Eigen::Matrix2d& H, const Eigen::Vector2d& g,
               double delta) {
  const TrustRegionStep st = solve_subproblem(H, g, delta);
  const double scale = std::max(1.0, g.norm());
  const Eigen::Vector2d resid = (H + st.mu * Eigen::Matrix2d::Identity()) * st.s + g;
  CHECK(resid.norm() <= 1e-8 * scale);
  CHECK(st.mu >= 0.0);
  CHECK(st.s.norm() <= delta * (1.0 + 1e-9));
  if (st.mu > 1e-12 * scale) {
    CHECK(st.s.norm() == doctest::Approx(delta).epsilon(1e-7));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(
      H + st.mu * Eigen::Matrix2d::Identity());
  CHECK(es.eigenvalues().minCoeff() >=
        -1e-9 * std::max(1.0, H.cwiseAbs().maxCoeff()));
}

}  // namespace

TEST_CASE("subproblem satisfies KKT on randomized instances") {
  Rng rng(123, 0);
  for (int rep = 0; rep < 500; ++rep) {
    // random symmetric H with eigenvalues in [-5, 5]; random g; random delta
    const double th = 2.0 * 3.14159265358979 * rng.next_double();
    Eigen::Matrix2d Q;
    Q << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Eigen::Vector2d lam(10.0 * rng.next_double() - 5.0,
                        10.0 * rng.next_double() - 5.0);
    const Eigen::Matrix2d H = Q * lam.asDiagonal() * Q.transpose();
    Eigen::Vector2d g(2.0 * rng.next_double() - 1.0,
                      2.0 * rng.next_double() - 1.0);
    const double delta = 0.05 + 3.0 * rng.next_double();
    check_kkt(H, g, delta);
  }
}

TEST_CASE("subproblem handles the hard case (gradient orthogonal to the "
          "negative eigendirection)") {
  Eigen::Matrix2d H;
  H << 2.0, 0.0, 0.0, -1.0;        // negative curvature along e2
  Eigen::Vector2d g(0.5, 0.0);     // g orthogonal to e2
  check_kkt(H, g, 10.0);
  // zero gradient, indefinite H: step must still reach the boundary
  const TrustRegionStep st = solve_subproblem(H, Eigen::Vector2d::Zero(), 2.0);
  CHECK(st.s.norm() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(st.mu >= 1.0 - 1e-9);  // mu >= -lambda_min
}

TEST_CASE("minimize converges on a convex quadratic to the analytic optimum") {
  Eigen::Matrix2d A;
  A << 3.0, 0.4, 0.4, 1.2;
  const Eigen::Vector2d target(0.7, -1.1);
  Objective2d obj = [&](const Eigen::Vector2d& u, double& f,
                        Eigen::Vector2d& g, Eigen::Matrix2d& h) {
    const Eigen::Vector2d r = u - target;
    f = 0.5 * r.dot(A * r);
    g = A * r;
    h = A;
  };
  const TrustRegionResult r = minimize(obj, Eigen::Vector2d(5.0, 5.0));
  CHECK(r.converged);
  CHECK((r.u - target).norm() < 1e-7);
  CHECK(r.grad.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("minimize respects the box and reports non-convergence at a bound") {
  // Minimum at u = (30, 0), outside the default box [-25, 25]^2.
  Objective2d obj = [](const Eigen::Vector2d& u, double& f, Eigen::Vector2d& g,
                       Eigen::Matrix2d& h) {
    const Eigen::Vector2d t(30.0, 0.0);
    f = 0.5 * (u - t).squaredNorm();
    g = u - t;
    h = Eigen::Matrix2d::Identity();
  };
  TrustRegionOptions opts;
  opts.max_iter = 60;
  const TrustRegionResult r = minimize(obj, Eigen::Vector2d(0.0, 0.0), opts);
  CHECK(r.u[0] <= 25.0 + 1e-12);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(minimize_multistart(obj, default_starts(), opts),
                  numeric_error);
}

TEST_CASE("multistart picks the best converged local minimum") {
  // Double-well along u1: minima near -2 (f=-1) and +2 (f=-3, global-ish).
  Objective2d obj = [](const Eigen::Vector2d& u, double& f, Eigen::Vector2d& g,
                       Eigen::Matrix2d& h) {
    const double x = u[0], y = u[1];
    const double w = (x * x - 4.0);
    f = 0.25 * w * w - 0.5 * x + 0.5 * y * y;
    g[0] = w * x - 0.5;
    g[1] = y;
    h(0, 0) = 3.0 * x * x - 4.0;
    h(0, 1) = h(1, 0) = 0.0;
    h(1, 1) = 1.0;
  };
  const TrustRegionResult r = minimize_multistart(obj, default_starts());
  CHECK(r.converged);
  CHECK(r.u[0] > 0.0);  // the deeper well
  double f_left;
  {
    TrustRegionResult l = minimize(obj, Eigen::Vector2d(-2.0, 0.0));
    f_left = l.f;
  }
  CHECK(r.f < f_left);
  CHECK(default_starts().size() == 9);
}
