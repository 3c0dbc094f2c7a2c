#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "refgp/errors.hpp"

namespace refgp {

// Power-exponential correlation k(d) = exp(-(d/l)^gamma / gamma) with
// gamma = 1 (exponential) or gamma = 2 (Gaussian).
inline void check_gamma(double gamma) {
  if (gamma != 1.0 && gamma != 2.0) {
    throw config_error("kernel gamma must be 1 or 2");
  }
}

inline double kernel_value(double d, double ell, double gamma) {
  return std::exp(-std::pow(d, gamma) * std::pow(ell, -gamma) / gamma);
}

// Correlation matrix and its derivatives in ell up to the requested order,
// computed through u(d) = -(d/l)^gamma / gamma:
//   k = e^u,  k' = u' e^u,  k'' = (u'' + u'^2) e^u,
//   k''' = (u''' + 3 u' u'' + u'^3) e^u.
struct KernelMatrices {
  Eigen::MatrixXd K, K1, K2, K3;
};

inline KernelMatrices kernel_matrices(const Eigen::MatrixXd& D, double ell,
                                      double gamma, bool third) {
  const auto c = D.array().pow(gamma);
  const auto u1 = c * std::pow(ell, -gamma - 1.0);
  const auto u2 = -(gamma + 1.0) * c * std::pow(ell, -gamma - 2.0);
  KernelMatrices m;
  m.K = (-c * std::pow(ell, -gamma) / gamma).exp();
  m.K1 = u1 * m.K.array();
  m.K2 = (u2 + u1.square()) * m.K.array();
  if (third) {
    const auto u3 = (gamma + 1.0) * (gamma + 2.0) * c * std::pow(ell, -gamma - 3.0);
    m.K3 = (u3 + 3.0 * u1 * u2 + u1.cube()) * m.K.array();
  }
  return m;
}

inline Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& D, double ell,
                                     double gamma) {
  return (-D.array().pow(gamma) * std::pow(ell, -gamma) / gamma).exp();
}

}  // namespace refgp
