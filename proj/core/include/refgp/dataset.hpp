#pragma once

#include <Eigen/Dense>
#include <string>

namespace refgp {

// Observations of a spatial process: locations (n x d), responses y (n), and
// a regression design matrix X (n x p, p may be zero for a zero-mean model).
struct Dataset {
  Eigen::MatrixXd locations;
  Eigen::VectorXd y;
  Eigen::MatrixXd X;

  int n() const { return static_cast<int>(y.size()); }
  int dim() const { return static_cast<int>(locations.cols()); }
  int p() const { return static_cast<int>(X.cols()); }

  // Throws config_error on inconsistent sizes, non-finite values, duplicate
  // locations (zero distance breaks the covariance), or n <= p.
  void validate() const;
};

// Matrix of pairwise Euclidean distances between rows of `locations`.
Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& locations);

// Cross-distances: result(i, j) = |a.row(i) - b.row(j)|.
Eigen::MatrixXd cross_distances(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b);

}  // namespace refgp
