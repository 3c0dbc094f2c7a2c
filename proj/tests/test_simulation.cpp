#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "refgp/simulation.hpp"

using namespace refgp;

TEST_CASE("equal-tailed counting is strict at the band edges") {
  CHECK(covered_by_equal_tailed(0.5, 0.9));
  CHECK(covered_by_equal_tailed(0.0500001, 0.9));
  CHECK_FALSE(covered_by_equal_tailed(0.05, 0.9));   // boundary excluded
  CHECK_FALSE(covered_by_equal_tailed(0.95, 0.9));   // boundary excluded
  CHECK_FALSE(covered_by_equal_tailed(0.01, 0.9));
  CHECK_FALSE(covered_by_equal_tailed(0.99, 0.9));
}

TEST_CASE("coverage_test counting, failure handling, and determinism") {
  auto sampler = [](Rng& rng) { return rng.next_double(); };

  SUBCASE("cdf at the center is always covered") {
    const CoverageReport r = coverage_test(
        sampler, [](double) { return 0.5; }, "p", 1.0, 0.95, 100, 7);
    CHECK(r.covered == 100);
    CHECK(r.coverage == 1.0);
    CHECK(r.warnings == 0);
  }
  SUBCASE("cdf in the tail is never covered") {
    const CoverageReport r = coverage_test(
        sampler, [](double) { return 0.001; }, "p", 1.0, 0.95, 100, 7);
    CHECK(r.covered == 0);
    CHECK(r.coverage == 0.0);
  }
  SUBCASE("throwing or non-finite CDFs count as warnings, not coverage") {
    const CoverageReport r = coverage_test(
        sampler,
        [](double d) -> double {
          if (d < 0.5) throw std::runtime_error("boom");
          return std::nan("");
        },
        "p", 1.0, 0.95, 50, 7);
    CHECK(r.covered == 0);
    CHECK(r.warnings == 50);
  }
  SUBCASE("identical configs give identical reports on any thread count") {
    auto cdf = [](double d) { return d; };  // uniform: ~alpha coverage
    const CoverageReport a =
        coverage_test(sampler, cdf, "p", 1.0, 0.95, 400, 3, 1);
    const CoverageReport b =
        coverage_test(sampler, cdf, "p", 1.0, 0.95, 400, 3, 4);
    CHECK(a.covered == b.covered);
    CHECK(a.warnings == b.warnings);
    CHECK(a.coverage == doctest::Approx(b.coverage));
    CHECK(a.covered > 320);  // ~0.95 * 400, loose sanity band
    CHECK(a.covered < 400);
  }
  SUBCASE("argument validation") {
    auto cdf = [](double) { return 0.5; };
    CHECK_THROWS_AS(coverage_test(sampler, cdf, "p", 1.0, 1.0, 10, 1),
                    config_error);
    CHECK_THROWS_AS(coverage_test(sampler, cdf, "p", 1.0, 0.95, 0, 1),
                    config_error);
  }
}

TEST_CASE("closed-form normal posteriors match numeric integration oracles") {
  Rng rng(2024, 0);

  SUBCASE("mean with flat prior, known unit variance") {
    const Eigen::VectorXd y =
        sample_normal_model(NormalModel::mean_flat_known_variance, 10, 0.7,
                            rng);
    const double ybar = y.mean();
    // posterior: N(ybar, 1/n); oracle via erf
    for (double t : {-0.5, 0.4, 0.7, 1.4}) {
      const double z = (t - ybar) / std::sqrt(1.0 / 10.0);
      const double oracle = 0.5 * std::erfc(-z / std::sqrt(2.0));
      CHECK(normal_posterior_cdf(NormalModel::mean_flat_known_variance, y,
                                 t) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }

  // For the variance models, integrate prior x likelihood numerically on a
  // fine log-spaced grid (trapezoid in log space), independent of any
  // incomplete-gamma implementation.
  auto numeric_cdf = [](const Eigen::VectorXd& y, double t, bool known_mean,
                        double prior_exponent) {
    // density in v = sigma^2: v^prior_exponent * prod N(y_i; mu, v) with mu
    // either 0 (known) or profiled out by integration (unknown mean uses the
    // marginal likelihood with ybar, centered RSS, and one less power of v).
    const int n = static_cast<int>(y.size());
    const double ybar = y.mean();
    const double rss =
        known_mean ? y.squaredNorm()
                   : (y.array() - ybar).square().sum();
    const double like_exponent = known_mean ? -0.5 * n : -0.5 * (n - 1);
    auto log_density = [&](double v) {
      return (prior_exponent + like_exponent) * std::log(v) -
             0.5 * rss / v;
    };
    const double lo = 1e-6, hi = 1e6;
    const int steps = 200000;
    double z = 0.0, upto = 0.0;
    double prev_v = lo, prev_d = std::exp(log_density(lo));
    for (int i = 1; i <= steps; ++i) {
      const double v = lo * std::pow(hi / lo, static_cast<double>(i) / steps);
      const double d = std::exp(log_density(v));
      const double panel = 0.5 * (prev_d + d) * (v - prev_v);
      z += panel;
      if (v <= t)
        upto += panel;
      else if (prev_v < t) {
        const double dm = std::exp(log_density(t));
        upto += 0.5 * (prev_d + dm) * (t - prev_v);
      }
      prev_v = v;
      prev_d = d;
    }
    return upto / z;
  };

  SUBCASE("variance with flat prior, known mean") {
    const Eigen::VectorXd y = sample_normal_model(
        NormalModel::variance_flat_known_mean, 5, 1.0, rng);
    for (double t : {0.4, 1.0, 2.5})
      CHECK(normal_posterior_cdf(NormalModel::variance_flat_known_mean, y,
                                 t) ==
            doctest::Approx(numeric_cdf(y, t, true, 0.0)).epsilon(5e-5));
  }
  SUBCASE("variance with Jeffreys prior, known mean") {
    const Eigen::VectorXd y = sample_normal_model(
        NormalModel::variance_jeffreys_known_mean, 5, 1.0, rng);
    for (double t : {0.4, 1.0, 2.5})
      CHECK(normal_posterior_cdf(NormalModel::variance_jeffreys_known_mean, y,
                                 t) ==
            doctest::Approx(numeric_cdf(y, t, true, -1.0)).epsilon(5e-5));
  }
  SUBCASE("variance with joint Jeffreys-rule prior, unknown mean") {
    const Eigen::VectorXd y = sample_normal_model(
        NormalModel::variance_jeffreys_unknown_mean, 5, 1.0, rng);
    // prior sigma^-3 = v^-3/2; after integrating mu out the extra v^-1/2
    // from the marginal likelihood is already accounted in like_exponent,
    // so the prior exponent is -1.5 + 0.0
    for (double t : {0.4, 1.0, 2.5})
      CHECK(normal_posterior_cdf(NormalModel::variance_jeffreys_unknown_mean,
                                 y, t) ==
            doctest::Approx(numeric_cdf(y, t, false, -1.5)).epsilon(5e-5));
  }
  SUBCASE("variance with reference prior, unknown mean") {
    const Eigen::VectorXd y = sample_normal_model(
        NormalModel::variance_reference_unknown_mean, 5, 1.0, rng);
    for (double t : {0.4, 1.0, 2.5})
      CHECK(normal_posterior_cdf(NormalModel::variance_reference_unknown_mean,
                                 y, t) ==
            doctest::Approx(numeric_cdf(y, t, false, -1.0)).epsilon(5e-5));
  }
  SUBCASE("CDFs are zero at and below the origin for variance models") {
    const Eigen::VectorXd y = sample_normal_model(
        NormalModel::variance_reference_unknown_mean, 5, 1.0, rng);
    CHECK(normal_posterior_cdf(NormalModel::variance_reference_unknown_mean,
                               y, 0.0) == 0.0);
    CHECK(normal_posterior_cdf(NormalModel::variance_reference_unknown_mean,
                               y, -3.0) == 0.0);
  }
}

TEST_CASE("normal-model coverage runs are deterministic and calibrated") {
  const CoverageReport a = normal_model_coverage(
      NormalModel::mean_flat_known_variance, 10, 1.0, 0.95, 500, 11);
  const CoverageReport b = normal_model_coverage(
      NormalModel::mean_flat_known_variance, 10, 1.0, 0.95, 500, 11);
  CHECK(a.covered == b.covered);
  CHECK(a.coverage > 0.89);  // exact-coverage model, N=500 noise band
  CHECK(a.coverage < 1.0);
  CHECK(normal_model_name(NormalModel::mean_flat_known_variance) ==
        a.parameter);
}

TEST_CASE("GP coverage cells run deterministically at tiny scale") {
  GpCoverageConfig cfg;
  cfg.grid_nx = 5;  // n = 25 keeps each replicate fast
  cfg.n_sims = 2;
  cfg.seed = 5;
  const GpCellReport a = gp_coverage_cell(cfg);
  const GpCellReport b = gp_coverage_cell(cfg);
  REQUIRE(a.params.size() == 4);  // ell, eta, sigma2, beta1
  CHECK(a.params[0].parameter == "ell");
  CHECK(a.params[3].parameter == "beta1");
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    CHECK(a.params[i].covered == b.params[i].covered);
    CHECK(a.params[i].excluded == b.params[i].excluded);
    CHECK(a.params[i].n_sims == 2);
    CHECK(a.params[i].coverage >= 0.0);
    CHECK(a.params[i].coverage <= 1.0);
  }
  CHECK(a.fit_failures == b.fit_failures);
}

TEST_CASE("prediction coverage cells compare Bayes and ML arms") {
  PredictionCoverageConfig cfg;
  cfg.n_train = 10;
  cfg.n_sims = 2;
  cfg.seed = 5;
  const PredictionCellReport a = prediction_coverage_cell(cfg);
  const PredictionCellReport b = prediction_coverage_cell(cfg);
  CHECK(a.bayes.covered == b.bayes.covered);
  CHECK(a.ml.covered == b.ml.covered);
  CHECK(a.bayes.n_sims == 2);
  CHECK(a.ml.n_sims == 2);
  CHECK(a.ell_true == cfg.ell_true);
}

TEST_CASE("suite layouts iterate cells independently of order") {
  GpCoverageConfig cfg;
  cfg.grid_nx = 5;
  cfg.n_sims = 1;
  cfg.seed = 9;
  const auto both = gp_coverage_suite(cfg, {0.5, 1.0}, {0.1});
  REQUIRE(both.size() == 2);
  const auto second_only = gp_coverage_suite(cfg, {1.0}, {0.1});
  REQUIRE(second_only.size() == 1);
  // different cells use decorrelated seeds, but a cell's position in the
  // sweep determines its stream: the (1.0, 0.1) cell differs between sweeps
  // only if its index differs (it does: index 1 vs 0), so just check shape
  // and determinism of a repeated call.
  const auto both2 = gp_coverage_suite(cfg, {0.5, 1.0}, {0.1});
  for (std::size_t c = 0; c < both.size(); ++c)
    for (std::size_t i = 0; i < both[c].params.size(); ++i)
      CHECK(both[c].params[i].covered == both2[c].params[i].covered);
}
