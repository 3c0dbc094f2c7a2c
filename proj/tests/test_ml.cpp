#include <doctest.h>

#include <cmath>

#include "refgp/csv.hpp"
#include "refgp/ml.hpp"
#include "refgp/posterior.hpp"
#include "test_util.hpp"

using namespace refgp;
using refgp_test::data_path;

TEST_CASE("profile ML fit is stationary and internally consistent") {
  const Dataset data = dataset_from_csv(data_path("synth1d.csv"));
  const MlFit fit = ml_fit(data, 2.0);

  CHECK(fit.ell == doctest::Approx(std::exp(fit.u[0])).epsilon(1e-14));
  CHECK(fit.eta == doctest::Approx(std::exp(fit.u[1])).epsilon(1e-14));
  CHECK(fit.grad.cwiseAbs().maxCoeff() <= 1e-5);
  CHECK(fit.iterations > 0);
  CHECK(fit.sigma2 > 0.0);
  REQUIRE(fit.beta.size() == 1);

  // objective value reproduces through the posterior machinery
  const Posterior post(data, 2.0);
  CHECK(post.ml_value(fit.u) == doctest::Approx(fit.objective).epsilon(1e-12));

  // sigma2 = S^2 / (n - p) at the optimum
  const GlsStats gls = post.gls(fit.u);
  CHECK(fit.sigma2 ==
        doctest::Approx(gls.S2 / (data.n() - data.p())).epsilon(1e-12));
  CHECK((fit.beta - gls.beta).cwiseAbs().maxCoeff() < 1e-14);

  // the reported optimum beats a ring of nearby points
  for (double dx : {-0.05, 0.05})
    for (double dy : {-0.5, 0.5}) {
      const Eigen::Vector2d u(fit.u[0] + dx, fit.u[1] + dy);
      CHECK(post.ml_value(u) >= fit.objective - 1e-9);
    }
}

TEST_CASE("ML plug-in prediction matches direct GLS kriging algebra") {
  const Dataset data = dataset_from_csv(data_path("synth1d.csv"));
  const MlFit fit = ml_fit(data, 2.0);
  Eigen::MatrixXd loc(2, 1);
  loc << 0.475, 0.05;
  const Eigen::MatrixXd Xnew = Eigen::MatrixXd::Ones(2, 1);
  const MlPrediction pred = ml_predict(data, 2.0, fit, loc, Xnew);
  REQUIRE(pred.mean.size() == 2);

  Eigen::MatrixXd G = kernel_matrix(pairwise_distances(data.locations),
                                    fit.ell, 2.0);
  G.diagonal().array() += fit.eta;
  const Eigen::MatrixXd Gi = G.llt().solve(
      Eigen::MatrixXd::Identity(data.n(), data.n()));
  const Eigen::VectorXd resid = data.y - data.X * fit.beta;
  const Eigen::MatrixXd Ks =
      kernel_matrix(cross_distances(data.locations, loc), fit.ell, 2.0);
  for (int j = 0; j < 2; ++j) {
    const double mu = fit.beta[0] + Ks.col(j).dot(Gi * resid);
    const double var =
        fit.sigma2 * (1.0 + fit.eta - Ks.col(j).dot(Gi * Ks.col(j)));
    CHECK(pred.mean[j] == doctest::Approx(mu).epsilon(1e-10));
    CHECK(pred.sd[j] == doctest::Approx(std::sqrt(var)).epsilon(1e-10));
    CHECK(pred.sd[j] > 0.0);
  }

  // shape validation
  CHECK_THROWS_AS(ml_predict(data, 2.0, fit, loc, Eigen::MatrixXd::Ones(1, 1)),
                  config_error);
  // empty request is fine
  const MlPrediction none =
      ml_predict(data, 2.0, fit, Eigen::MatrixXd(0, 1), Eigen::MatrixXd(0, 1));
  CHECK(none.mean.size() == 0);
}

TEST_CASE("zero-mean ML fit works without regressors") {
  Rng rng(12, 0);
  const Dataset data = refgp_test::random_dataset(rng, 18, 1, 0, 0.3, 0.2,
                                                  1.5, 1.0);
  const MlFit fit = ml_fit(data, 1.0);
  CHECK(fit.beta.size() == 0);
  CHECK(fit.sigma2 > 0.0);
  CHECK(fit.grad.cwiseAbs().maxCoeff() <= 1e-5);
}
