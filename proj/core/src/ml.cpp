#include "refgp/ml.hpp"

#include <cmath>

#include "refgp/errors.hpp"
#include "refgp/kernel.hpp"
#include "refgp/posterior.hpp"

namespace refgp {

MlFit ml_fit(const Dataset& data, double gamma, const MlOptions& opts) {
  const Posterior post(data, gamma);
  Objective2d objective = [&post](const Eigen::Vector2d& u, double& f,
                                  Eigen::Vector2d& g, Eigen::Matrix2d& h) {
    post.ml_value_grad_hess(u, f, g, h);
  };
  const TrustRegionResult r =
      minimize_multistart(objective, default_starts(), opts.trust_region);

  MlFit fit;
  fit.u = r.u;
  fit.ell = std::exp(r.u[0]);
  fit.eta = std::exp(r.u[1]);
  fit.objective = r.f;
  fit.grad = r.grad;
  fit.iterations = r.iterations;
  const GlsStats gls = post.gls(r.u);
  fit.beta = gls.beta;
  fit.sigma2 = gls.S2 / (post.n() - post.p());
  return fit;
}

MlPrediction ml_predict(const Dataset& data, double gamma, const MlFit& fit,
                        const Eigen::MatrixXd& new_locations,
                        const Eigen::MatrixXd& new_X) {
  const int p = data.p();
  const int m = static_cast<int>(new_locations.rows());
  if (new_locations.cols() != data.locations.cols())
    throw config_error("prediction locations have wrong coordinate dimension");
  if (new_X.rows() != m || new_X.cols() != p)
    throw config_error("prediction regressor matrix must be m x p");

  MlPrediction out;
  out.mean.resize(m);
  out.sd.resize(m);
  if (m == 0) return out;

  const Eigen::MatrixXd D = pairwise_distances(data.locations);
  Eigen::MatrixXd G = kernel_matrix(D, fit.ell, gamma);
  G.diagonal().array() += fit.eta;
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw numeric_error("covariance not positive definite at the ML estimate");

  Eigen::VectorXd resid = data.y;
  if (p > 0) resid -= data.X * fit.beta;
  const Eigen::VectorXd Gi_resid = llt.solve(resid);

  const Eigen::MatrixXd cross = cross_distances(data.locations, new_locations);
  const Eigen::MatrixXd Kstar = kernel_matrix(cross, fit.ell, gamma);
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd k = Kstar.col(j);
    double mu = k.dot(Gi_resid);
    if (p > 0) mu += new_X.row(j).dot(fit.beta);
    const double var =
        fit.sigma2 * (1.0 + fit.eta - k.dot(llt.solve(k)));
    if (!(var > 0.0))
      throw numeric_error("ML plug-in predictive variance is not positive");
    out.mean[j] = mu;
    out.sd[j] = std::sqrt(var);
  }
  return out;
}

}  // namespace refgp
