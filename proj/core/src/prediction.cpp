#include "refgp/prediction.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "refgp/errors.hpp"
#include "refgp/kernel.hpp"

namespace refgp {

namespace {

constexpr double kHalfLogPi = 0.5723649429247000870717137;  // log(pi)/2

}  // namespace

Eigen::VectorXd PredictiveDistribution::mean() const {
  Eigen::VectorXd out(m_);
  for (int j = 0; j < m_; ++j) out[j] = marginals_[j].mean();
  return out;
}

Eigen::VectorXd PredictiveDistribution::variance() const {
  Eigen::VectorXd out(m_);
  for (int j = 0; j < m_; ++j) out[j] = marginals_[j].variance();
  return out;
}

double PredictiveDistribution::joint_pdf(const Eigen::VectorXd& y2) const {
  if (y2.size() != m_) throw config_error("prediction vector has wrong size");
  double acc = 0.0;
  for (const Component& c : comps_) {
    const Eigen::VectorXd r = y2 - c.ybar;
    const double q = r.dot(c.R22 * r);
    const double log_kernel =
        -0.5 * (df_ + m_) * std::log(c.b + q) + c.log_norm;
    acc += c.weight * std::exp(log_kernel);
  }
  return acc;
}

PredictiveDistribution predict(const PosteriorSurrogate& s,
                               const Eigen::MatrixXd& new_locations,
                               const Eigen::MatrixXd& new_X) {
  const Posterior& post = s.posterior();
  const Dataset& data = post.data();
  const int n = data.n();
  const int p = data.p();
  const int m = static_cast<int>(new_locations.rows());

  PredictiveDistribution out;
  out.m_ = m;
  out.df_ = n - p;
  if (m == 0) return out;

  if (new_locations.cols() != data.locations.cols())
    throw config_error("prediction locations have wrong coordinate dimension");
  if (new_X.rows() != m || new_X.cols() != p)
    throw config_error("prediction regressor matrix must be m x p");
  if (!new_locations.allFinite() || !new_X.allFinite())
    throw config_error("prediction inputs contain non-finite values");

  // Coincident locations make the joint covariance degenerate.
  const Eigen::MatrixXd cross = cross_distances(new_locations, data.locations);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (cross(i, j) == 0.0)
        throw config_error("prediction location " + std::to_string(i + 1) +
                           " coincides with sample location " +
                           std::to_string(j + 1));
  const Eigen::MatrixXd between = pairwise_distances(new_locations);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (between(i, j) == 0.0)
        throw config_error("prediction locations " + std::to_string(i + 1) +
                           " and " + std::to_string(j + 1) + " coincide");

  // Joint locations/design, distances computed once.
  Eigen::MatrixXd locs(n + m, data.locations.cols());
  locs.topRows(n) = data.locations;
  locs.bottomRows(m) = new_locations;
  Eigen::MatrixXd X(n + m, p);
  if (p > 0) {
    X.topRows(n) = data.X;
    X.bottomRows(m) = new_X;
  }
  const Eigen::MatrixXd D = pairwise_distances(locs);
  const Eigen::VectorXd& y1 = data.y;

  const double df = out.df_;
  const double log_gamma_ratio = boost::math::lgamma(0.5 * (df + m)) -
                                 boost::math::lgamma(0.5 * df);

  out.comps_.reserve(s.rule().size());
  std::vector<std::vector<double>> locsc(m), scalesc(m);
  std::vector<double> weights;
  for (int j = 0; j < m; ++j) {
    locsc[j].reserve(s.rule().size());
    scalesc[j].reserve(s.rule().size());
  }

  for (std::size_t k = 0; k < s.rule().size(); ++k) {
    const double ell = std::exp(s.node_u()[k][0]);
    const double eta = std::exp(s.node_u()[k][1]);
    const Eigen::MatrixXd K = kernel_matrix(D, ell, post.gamma());
    Eigen::MatrixXd G = K;
    G.diagonal().array() += eta;
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
      throw numeric_error("joint covariance not positive definite at a "
                          "quadrature node");
    const Eigen::MatrixXd Gi =
        llt.solve(Eigen::MatrixXd::Identity(n + m, n + m));
    Eigen::MatrixXd R;
    if (p > 0) {
      const Eigen::MatrixXd GiX = Gi * X;
      const Eigen::MatrixXd A = X.transpose() * GiX;
      Eigen::LLT<Eigen::MatrixXd> lltA(A);
      if (lltA.info() != Eigen::Success)
        throw numeric_error("design normal matrix not positive definite at a "
                            "quadrature node");
      R = Gi - GiX * lltA.solve(GiX.transpose());
    } else {
      R = Gi;
    }

    PredictiveDistribution::Component c;
    c.weight = s.rule().mass[k];
    const Eigen::MatrixXd R11 = R.topLeftCorner(n, n);
    const Eigen::MatrixXd R12 = R.topRightCorner(n, m);
    c.R22 = R.bottomRightCorner(m, m);
    Eigen::LLT<Eigen::MatrixXd> llt22(c.R22);
    if (llt22.info() != Eigen::Success)
      throw numeric_error("predictive precision not positive definite");
    c.ybar = -llt22.solve(R12.transpose() * y1);
    c.R22_inv = llt22.solve(Eigen::MatrixXd::Identity(m, m));
    c.b = y1.dot(R11 * y1) - c.ybar.dot(c.R22 * c.ybar);
    if (!(c.b > 0.0))
      throw numeric_error("predictive residual constant is not positive");
    double half_logdet_R22 = 0.0;
    for (int j = 0; j < m; ++j)
      half_logdet_R22 += std::log(llt22.matrixL()(j, j));
    c.log_norm = log_gamma_ratio + half_logdet_R22 - m * kHalfLogPi +
                 0.5 * df * std::log(c.b);

    weights.push_back(c.weight);
    for (int j = 0; j < m; ++j) {
      locsc[j].push_back(c.ybar[j]);
      scalesc[j].push_back(std::sqrt(c.b * c.R22_inv(j, j) / df));
    }
    out.comps_.push_back(std::move(c));
  }

  out.marginals_.reserve(m);
  for (int j = 0; j < m; ++j) {
    std::vector<double> dfv(weights.size(), df);
    out.marginals_.push_back(MixtureMarginal::student_t(
        weights, std::move(dfv), std::move(locsc[j]), std::move(scalesc[j])));
  }
  return out;
}

}  // namespace refgp
