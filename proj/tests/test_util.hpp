#pragma once

#include <string>

#include <Eigen/Dense>

#include "refgp/dataset.hpp"
#include "refgp/kernel.hpp"
#include "refgp/rng.hpp"

namespace refgp_test {

inline std::string data_path(const std::string& name) {
  return std::string(REFGP_TEST_DATA_DIR) + "/" + name;
}

// Draws a dataset from the model itself: uniform locations on [0,1]^d,
// y ~ N(X beta, sigma2 (K + eta I)), X = [1, loc columns...] truncated to p.
inline refgp::Dataset random_dataset(refgp::Rng& rng, int n, int d, int p,
                                     double ell, double eta, double sigma2,
                                     double gamma) {
  Eigen::MatrixXd loc(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) loc(i, k) = rng.next_double();
  Eigen::MatrixXd X(n, p);
  for (int j = 0; j < p; ++j) {
    if (j == 0)
      X.col(0).setOnes();
    else
      X.col(j) = loc.col((j - 1) % d);
  }
  Eigen::MatrixXd G =
      refgp::kernel_matrix(refgp::pairwise_distances(loc), ell, gamma);
  G.diagonal().array() += eta;
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z[i] = rng.next_normal();
  Eigen::VectorXd corr = llt.matrixL() * z;
  Eigen::VectorXd y = std::sqrt(sigma2) * corr;
  for (int j = 0; j < p; ++j) y += X.col(j);  // beta_j = 1
  return refgp::Dataset{std::move(loc), std::move(y), std::move(X)};
}

}  // namespace refgp_test
