#pragma once

#include <Eigen/Dense>

#include "refgp/dataset.hpp"

namespace refgp {

// GLS quantities at fixed hyperparameters: generalized residual sum of
// squares S^2 = y'Ry, beta_hat = A^{-1} X' G^{-1} y, A = X' G^{-1} X.
struct GlsStats {
  double S2 = 0.0;
  Eigen::VectorXd beta;    // p (empty when p = 0)
  Eigen::MatrixXd A_inv;   // p x p
};

// Negative log posterior of the spatial model under the reference prior, as
// a function of u = (log ell, log eta):
//   f(u) = 1/2 log|G| + 1/2 log|A| + (n-p)/2 log S^2 - 1/2 log|Sigma|
//          - u_1 - u_2,
// where G = eta I + K(ell), A = X'G^{-1}X, R = G^{-1} - G^{-1}XA^{-1}X'G^{-1},
// S^2 = y'Ry, and Sigma is the 3x3 Fisher-information matrix of the
// integrated likelihood.  Gradient and Hessian are analytic.
//
// The same machinery provides the profile maximum-likelihood objective
//   f_ml(u) = 1/2 log|G| + n/2 log S^2.
class Posterior {
 public:
  Posterior(const Dataset& data, double gamma);

  int n() const { return n_; }
  int p() const { return p_; }
  double gamma() const { return gamma_; }
  const Dataset& data() const { return data_; }

  double value(const Eigen::Vector2d& u) const;
  void value_grad_hess(const Eigen::Vector2d& u, double& f,
                       Eigen::Vector2d& grad, Eigen::Matrix2d& hess) const;

  double ml_value(const Eigen::Vector2d& u) const;
  void ml_value_grad_hess(const Eigen::Vector2d& u, double& f,
                          Eigen::Vector2d& grad, Eigen::Matrix2d& hess) const;

  GlsStats gls(const Eigen::Vector2d& u) const;

 private:
  struct Terms;  // per-objective coefficients

  double value_impl(const Eigen::Vector2d& u, const Terms& t) const;
  void full_impl(const Eigen::Vector2d& u, const Terms& t, double& f,
                 Eigen::Vector2d& grad, Eigen::Matrix2d& hess) const;

  Dataset data_;
  Eigen::MatrixXd D_;
  double gamma_;
  int n_, p_;
};

}  // namespace refgp
