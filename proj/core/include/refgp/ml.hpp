#pragma once

#include <Eigen/Dense>

#include "refgp/dataset.hpp"
#include "refgp/trust_region.hpp"

namespace refgp {

struct MlOptions {
  // For near-noiseless data the profile likelihood has no interior minimum in
  // log eta: the whole gradient decays proportionally to eta down the valley,
  // so the reported eta is set by this tolerance (eta_stop ~ grad_tol / 5).
  // 1e-5 stops around eta ~ 1e-6 without affecting ell (already stationary to
  // ~6 decimals well before the slide ends).
  TrustRegionOptions trust_region{.grad_tol = 1e-5};
};

// Profile maximum-likelihood estimates: (ell, eta) maximize the profile
// log-likelihood -1/2 log|G| - n/2 log(S^2); beta and sigma^2 are the GLS
// plug-ins at the optimum.
struct MlFit {
  double ell = 0.0;
  double eta = 0.0;
  double sigma2 = 0.0;       // S^2 / (n - p) at the optimum
  Eigen::VectorXd beta;      // p entries (empty for zero-mean models)
  Eigen::Vector2d u;         // (log ell, log eta)
  double objective = 0.0;    // minimized negative profile log-likelihood part
  Eigen::Vector2d grad;      // objective gradient at the optimum
  int iterations = 0;
};

MlFit ml_fit(const Dataset& data, double gamma, const MlOptions& opts = {});

// Plug-in Gaussian prediction at the ML estimate: conditional mean
// x*'beta + k*'G^{-1}(y - X beta) and variance sigma2 (1 + eta - k*'G^{-1}k*)
// per location (noise included).
struct MlPrediction {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;
};
MlPrediction ml_predict(const Dataset& data, double gamma, const MlFit& fit,
                        const Eigen::MatrixXd& new_locations,
                        const Eigen::MatrixXd& new_X);

}  // namespace refgp
