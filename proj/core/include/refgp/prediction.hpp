#pragma once

#include <Eigen/Dense>
#include <vector>

#include "refgp/marginals.hpp"
#include "refgp/surrogate.hpp"

namespace refgp {

// Posterior predictive distribution at m new locations: a quadrature-rule
// mixture whose components are multivariate t kernels
//   [b + (y2 - ybar)' R22 (y2 - ybar)]^{-(n+m-p)/2},  df = n - p,
// built from the joint precision structure R over the n + m points.  Each
// coordinate marginally is a scalar-t mixture with location ybar_j and scale
// sqrt(b (R22^{-1})_jj / (n-p)).
class PredictiveDistribution {
 public:
  int m() const { return m_; }
  double df() const { return df_; }

  // Per-location scalar-t mixtures (size m).
  const std::vector<MixtureMarginal>& marginals() const { return marginals_; }
  Eigen::VectorXd mean() const;
  Eigen::VectorXd variance() const;

  // Joint mixture density at a full m-vector.
  double joint_pdf(const Eigen::VectorXd& y2) const;

 private:
  friend PredictiveDistribution predict(const PosteriorSurrogate&,
                                        const Eigen::MatrixXd&,
                                        const Eigen::MatrixXd&);

  struct Component {
    double weight;
    Eigen::VectorXd ybar;      // m
    Eigen::MatrixXd R22;       // m x m (positive definite)
    Eigen::MatrixXd R22_inv;   // m x m
    double b;                  // residual quadratic constant
    double log_norm;           // log normalizing constant of the t kernel
  };

  int m_ = 0;
  double df_ = 0.0;
  std::vector<Component> comps_;
  std::vector<MixtureMarginal> marginals_;
};

// new_locations: m x d (same coordinate dimension as the data);
// new_X: m x p regressors at the new locations (m x 0 for zero-mean models).
// Locations must be distinct from each other and from the sample locations.
PredictiveDistribution predict(const PosteriorSurrogate& s,
                               const Eigen::MatrixXd& new_locations,
                               const Eigen::MatrixXd& new_X);

}  // namespace refgp
