#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "refgp/chebyshev.hpp"
#include "refgp/posterior.hpp"
#include "refgp/quadrature.hpp"
#include "refgp/sparse_grid.hpp"
#include "refgp/trust_region.hpp"
#include "refgp/warp.hpp"

namespace refgp {

struct FitOptions {
  double tol = 1e-4;        // sparse-grid tolerance on the relative density
  double eps = 1e-5;        // density ratio that defines the bracketed region
  int budget = 20000;       // sparse-grid evaluation budget
  double bracket_tmax = 50.0;
  double bracket_tol = 1e-8;
  TrustRegionOptions trust_region;  // MAP search (grad_tol 1e-8 by default)
};

// Deterministic approximation of the hyperparameter posterior built in four
// steps: (1) multi-start trust-region MAP of f(u), u = (log ell, log eta);
// (2) eigendecomposition of the Hessian at the mode; (3) bracketing of each
// eigen-direction where the density falls to eps of its peak, and a monotone
// cubic warp of [0,1] onto each bracket; (4) adaptive sparse-grid
// interpolation of the warped relative density g(x) = exp(-(f(u(x)) - f_map))
// over the unit square, converted into a quadrature rule whose masses sum
// to 1.  Immutable once constructed; safe for concurrent queries.
class PosteriorSurrogate {
 public:
  PosteriorSurrogate(const Dataset& data, double gamma,
                     const FitOptions& opts = {});

  const Posterior& posterior() const { return post_; }
  const FitOptions& options() const { return opts_; }

  const Eigen::Vector2d& u_map() const { return u_map_; }
  double f_map() const { return f_map_; }
  // Hessian eigenvalues (descending) and matching eigenvector columns with
  // the first nonzero component of each column positive.
  const Eigen::Vector2d& hess_eigenvalues() const { return eigval_; }
  const Eigen::Matrix2d& hess_eigenvectors() const { return eigvec_; }
  const std::array<Bracket, 2>& brackets() const { return brackets_; }
  const std::array<MonotoneCubic, 2>& warps() const { return warps_; }
  // Axis slices of g through the mode (descriptive separable factors).
  const std::array<Cheb1D, 2>& axis_factors() const { return axis_factors_; }
  const SparseGrid& grid() const { return grid_; }
  const QuadratureRule& rule() const { return rule_; }
  // Integral of the relative density over the bracket box (positive).
  double normalization() const { return rule_.integral; }

  // Coordinate maps: unit square -> eigen-ray coordinates t -> u.
  Eigen::Vector2d u_from_unit(const std::array<double, 2>& x) const;
  Eigen::Vector2d u_from_t(const Eigen::Vector2d& t) const;
  Eigen::Vector2d t_from_u(const Eigen::Vector2d& u) const;

  // Surrogate relative density exp(-(f - f_map)); zero outside the box.
  double density_unit(const std::array<double, 2>& x) const;
  double density_t(const Eigen::Vector2d& t) const;
  double density_u(const Eigen::Vector2d& u) const;

  // Per rule-node hyperparameters and cached GLS statistics.
  const std::vector<Eigen::Vector2d>& node_u() const { return node_u_; }
  const std::vector<GlsStats>& node_gls() const { return node_gls_; }

  // Expectation of fn(ell, eta) under the quadrature rule.
  double expect(const std::function<double(double, double)>& fn) const;

 private:
  Posterior post_;
  FitOptions opts_;
  Eigen::Vector2d u_map_;
  double f_map_ = 0.0;
  Eigen::Vector2d eigval_;
  Eigen::Matrix2d eigvec_;
  std::array<Bracket, 2> brackets_{};
  std::array<MonotoneCubic, 2> warps_;
  std::array<Cheb1D, 2> axis_factors_;
  SparseGrid grid_;
  QuadratureRule rule_;
  std::vector<Eigen::Vector2d> node_u_;
  std::vector<GlsStats> node_gls_;
};

// Spec-shaped conveniences.
PosteriorSurrogate fit(const Dataset& data, double gamma,
                       const FitOptions& opts = {});
double posterior_expect(const PosteriorSurrogate& s,
                        const std::function<double(double, double)>& fn);

}  // namespace refgp
