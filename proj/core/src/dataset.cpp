#include "refgp/dataset.hpp"

#include <cmath>
#include <string>

#include "refgp/errors.hpp"

namespace refgp {

void Dataset::validate() const {
  const int nn = n();
  if (nn == 0) throw config_error("dataset is empty");
  if (locations.rows() != nn) {
    throw config_error("locations row count (" +
                       std::to_string(locations.rows()) +
                       ") does not match y length (" + std::to_string(nn) +
                       ")");
  }
  if (X.cols() > 0 && X.rows() != nn) {
    throw config_error("design matrix row count does not match y length");
  }
  if (nn <= p()) {
    throw config_error("need more observations than regressors (n=" +
                       std::to_string(nn) + ", p=" + std::to_string(p()) +
                       ")");
  }
  if (!y.allFinite() || !locations.allFinite() ||
      (X.size() > 0 && !X.allFinite())) {
    throw config_error("dataset contains non-finite values");
  }
  for (int i = 0; i < nn; ++i) {
    for (int j = i + 1; j < nn; ++j) {
      if ((locations.row(i) - locations.row(j)).norm() == 0.0) {
        throw config_error("duplicate locations at rows " + std::to_string(i) +
                           " and " + std::to_string(j));
      }
    }
  }
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& locations) {
  return cross_distances(locations, locations);
}

Eigen::MatrixXd cross_distances(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      out(i, j) = (a.row(i) - b.row(j)).norm();
    }
  }
  return out;
}

}  // namespace refgp
