#include "refgp/simulation.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "refgp/kernel.hpp"
#include "refgp/marginals.hpp"
#include "refgp/ml.hpp"
#include "refgp/prediction.hpp"

namespace refgp {

namespace {

constexpr std::uint8_t kNotCovered = 0;
constexpr std::uint8_t kCovered = 1;
constexpr std::uint8_t kCdfFailure = 2;  // counted as non-covered
constexpr std::uint8_t kExcluded = 3;    // dropped from the denominator

std::uint8_t classify(double t, double alpha) {
  if (!std::isfinite(t)) return kCdfFailure;
  return covered_by_equal_tailed(t, alpha) ? kCovered : kNotCovered;
}

CoverageReport reduce_statuses(const std::vector<std::uint8_t>& status,
                               std::string parameter, double true_value,
                               double alpha, std::uint64_t seed) {
  CoverageReport rep;
  rep.parameter = std::move(parameter);
  rep.true_value = true_value;
  rep.alpha = alpha;
  rep.n_sims = static_cast<int>(status.size());
  rep.seed = seed;
  for (std::uint8_t s : status) {
    if (s == kCovered) ++rep.covered;
    if (s == kCdfFailure) ++rep.warnings;
    if (s == kExcluded) ++rep.excluded;
  }
  const int denom = rep.n_sims - rep.excluded;
  rep.coverage = denom > 0 ? static_cast<double>(rep.covered) / denom : 0.0;
  return rep;
}

double standard_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// Upper incomplete gamma ratio Q(shape, scale / t): the CDF of an
// inverse-gamma(shape, scale) variate at t, with CDF(t <= 0) = 0.
double inverse_gamma_cdf(double shape, double scale, double t) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw numeric_error("degenerate inverse-gamma posterior");
  if (t <= 0.0) return 0.0;
  return boost::math::gamma_q(shape, scale / t);
}

bool is_variance_model(NormalModel model) {
  return model != NormalModel::mean_flat_known_variance;
}

}  // namespace

std::string normal_model_name(NormalModel model) {
  switch (model) {
    case NormalModel::mean_flat_known_variance:
      return "mean-flat-known-variance";
    case NormalModel::variance_flat_known_mean:
      return "variance-flat-known-mean";
    case NormalModel::variance_jeffreys_known_mean:
      return "variance-jeffreys-known-mean";
    case NormalModel::variance_jeffreys_unknown_mean:
      return "variance-jeffreys-unknown-mean";
    case NormalModel::variance_reference_unknown_mean:
      return "variance-reference-unknown-mean";
  }
  throw config_error("unknown normal model");
}

double normal_posterior_cdf(NormalModel model, const Eigen::VectorXd& y,
                            double t) {
  const int n = static_cast<int>(y.size());
  if (n < 1) throw config_error("normal model needs at least one observation");
  if (!y.allFinite()) throw config_error("observations must be finite");
  const double sum_sq = y.squaredNorm();
  const double mean = y.mean();
  switch (model) {
    case NormalModel::mean_flat_known_variance:
      // mu | y ~ N(ybar, 1/n)
      return standard_normal_cdf((t - mean) * std::sqrt(static_cast<double>(n)));
    case NormalModel::variance_flat_known_mean:
      // sigma^2 | y ~ InvGamma(n/2 - 1, y'y / 2)
      return inverse_gamma_cdf(0.5 * n - 1.0, 0.5 * sum_sq, t);
    case NormalModel::variance_jeffreys_known_mean:
      // sigma^2 | y ~ InvGamma(n/2, y'y / 2)
      return inverse_gamma_cdf(0.5 * n, 0.5 * sum_sq, t);
    case NormalModel::variance_jeffreys_unknown_mean:
      // Jeffreys-rule prior sigma^-3; mu integrated out:
      // sigma^2 | y ~ InvGamma(n/2, (y'y - n ybar^2) / 2)
      return inverse_gamma_cdf(0.5 * n, 0.5 * (sum_sq - n * mean * mean), t);
    case NormalModel::variance_reference_unknown_mean:
      // Reference / independence-Jeffreys prior sigma^-2:
      // sigma^2 | y ~ InvGamma((n-1)/2, (y'y - n ybar^2) / 2)
      return inverse_gamma_cdf(0.5 * (n - 1.0),
                               0.5 * (sum_sq - n * mean * mean), t);
  }
  throw config_error("unknown normal model");
}

Eigen::VectorXd sample_normal_model(NormalModel model, int n_obs,
                                    double true_value, Rng& rng) {
  if (n_obs < 1) throw config_error("normal model needs n_obs >= 1");
  if (!std::isfinite(true_value))
    throw config_error("true parameter must be finite");
  Eigen::VectorXd y(n_obs);
  if (is_variance_model(model)) {
    if (!(true_value > 0.0))
      throw config_error("true variance must be positive");
    const double sd = std::sqrt(true_value);
    for (int i = 0; i < n_obs; ++i) y[i] = sd * rng.next_normal();
  } else {
    for (int i = 0; i < n_obs; ++i) y[i] = true_value + rng.next_normal();
  }
  return y;
}

CoverageReport normal_model_coverage(NormalModel model, int n_obs,
                                     double true_value, double alpha,
                                     int n_sims, std::uint64_t seed,
                                     int threads) {
  return coverage_test(
      [model, n_obs, true_value](Rng& rng) {
        return sample_normal_model(model, n_obs, true_value, rng);
      },
      [model, true_value](const Eigen::VectorXd& y) {
        return normal_posterior_cdf(model, y, true_value);
      },
      normal_model_name(model), true_value, alpha, n_sims, seed, threads);
}

// ---- Gaussian-process parameter coverage ------------------------------------

namespace {

// nx x nx evenly spaced locations on the unit square, row-major.
Eigen::MatrixXd unit_square_grid(int nx) {
  Eigen::MatrixXd locations(nx * nx, 2);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < nx; ++j) {
      locations(i * nx + j, 0) = static_cast<double>(i) / (nx - 1);
      locations(i * nx + j, 1) = static_cast<double>(j) / (nx - 1);
    }
  }
  return locations;
}

Eigen::MatrixXd design_matrix(const Eigen::MatrixXd& locations,
                              bool quadratic) {
  const int n = static_cast<int>(locations.rows());
  if (!quadratic) return Eigen::MatrixXd::Ones(n, 1);
  Eigen::MatrixXd X(n, 6);
  for (int i = 0; i < n; ++i) {
    const double u = locations(i, 0), v = locations(i, 1);
    X(i, 0) = 1.0;
    X(i, 1) = u;
    X(i, 2) = v;
    X(i, 3) = u * u;
    X(i, 4) = u * v;
    X(i, 5) = v * v;
  }
  return X;
}

Eigen::VectorXd design_beta(bool quadratic) {
  if (!quadratic) {
    Eigen::VectorXd beta(1);
    beta << 1.0;
    return beta;
  }
  Eigen::VectorXd beta(6);
  beta << 0.15, -0.65, -0.1, 0.9, -1.0, 1.2;
  return beta;
}

void check_gp_cell_params(double ell, double eta, double sigma2, double gamma,
                          int n_sims) {
  check_gamma(gamma);
  if (!(ell > 0.0) || !(eta > 0.0) || !(sigma2 > 0.0))
    throw config_error("true ell, eta, sigma2 must be positive");
  if (n_sims < 1) throw config_error("coverage test needs n_sims >= 1");
}

// Distinct replicate streams per simulation cell.
std::uint64_t cell_seed(std::uint64_t base, std::size_t cell_index) {
  return base ^ (0x9e3779b97f4a7c15ULL * (cell_index + 1));
}

}  // namespace

GpCellReport gp_coverage_cell(const GpCoverageConfig& config) {
  check_gp_cell_params(config.ell_true, config.eta_true, config.sigma2_true,
                       config.gamma, config.n_sims);
  if (config.grid_nx < 2)
    throw config_error("location grid needs grid_nx >= 2");

  const Eigen::MatrixXd locations = unit_square_grid(config.grid_nx);
  const Eigen::MatrixXd X = design_matrix(locations, config.quadratic_design);
  const Eigen::VectorXd beta = design_beta(config.quadratic_design);
  const int n = static_cast<int>(locations.rows());
  const int p = static_cast<int>(X.cols());
  const int n_params = 3 + p;  // ell, eta, sigma2, beta_j

  const Eigen::MatrixXd D = pairwise_distances(locations);
  Eigen::MatrixXd C = kernel_matrix(D, config.ell_true, config.gamma);
  C.diagonal().array() += config.eta_true;
  Eigen::LLT<Eigen::MatrixXd> llt(C);
  if (llt.info() != Eigen::Success)
    throw numeric_error("true covariance is not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::VectorXd mean = X * beta;
  const double sd = std::sqrt(config.sigma2_true);

  std::vector<std::vector<std::uint8_t>> status(
      config.n_sims, std::vector<std::uint8_t>(n_params, kNotCovered));
  parallel_for(
      static_cast<std::size_t>(config.n_sims), config.threads,
      [&](std::size_t r) {
        Rng rng(config.seed, static_cast<std::uint64_t>(r));
        Eigen::VectorXd z(n);
        for (int i = 0; i < n; ++i) z[i] = rng.next_normal();
        Dataset data{locations, mean + sd * (L * z), X};
        std::vector<std::uint8_t>& row = status[r];
        try {
          PosteriorSurrogate s(data, config.gamma, config.fit);
          const auto eval = [&](int slot, auto&& cdf_at_true) {
            double t = std::numeric_limits<double>::quiet_NaN();
            try {
              t = cdf_at_true();
            } catch (const std::exception&) {
            }
            row[slot] = classify(t, config.alpha);
          };
          eval(0, [&] { return length_marginal(s).cdf(config.ell_true); });
          eval(1, [&] { return noise_marginal(s).cdf(config.eta_true); });
          eval(2, [&] { return sigma2_marginal(s).cdf(config.sigma2_true); });
          for (int j = 0; j < p; ++j)
            eval(3 + j,
                 [&] { return beta_marginal(s, j + 1).cdf(beta[j]); });
        } catch (const std::exception&) {
          std::fill(row.begin(), row.end(), kExcluded);
        }
      });

  GpCellReport cell;
  cell.ell_true = config.ell_true;
  cell.eta_true = config.eta_true;
  cell.n_sims = config.n_sims;
  std::vector<std::string> names = {"ell", "eta", "sigma2"};
  std::vector<double> truths = {config.ell_true, config.eta_true,
                                config.sigma2_true};
  for (int j = 0; j < p; ++j) {
    names.push_back("beta" + std::to_string(j + 1));
    truths.push_back(beta[j]);
  }
  for (int k = 0; k < n_params; ++k) {
    std::vector<std::uint8_t> column(config.n_sims);
    for (int r = 0; r < config.n_sims; ++r) column[r] = status[r][k];
    cell.params.push_back(reduce_statuses(column, names[k], truths[k],
                                          config.alpha, config.seed));
  }
  cell.fit_failures = cell.params.front().excluded;
  return cell;
}

std::vector<GpCellReport> gp_coverage_suite(const GpCoverageConfig& base,
                                            const std::vector<double>& ells,
                                            const std::vector<double>& etas) {
  if (ells.empty() || etas.empty())
    throw config_error("coverage suite needs at least one ell and eta");
  std::vector<GpCellReport> cells;
  std::size_t index = 0;
  for (double eta : etas) {
    for (double ell : ells) {
      GpCoverageConfig config = base;
      config.ell_true = ell;
      config.eta_true = eta;
      config.seed = cell_seed(base.seed, index++);
      cells.push_back(gp_coverage_cell(config));
    }
  }
  return cells;
}

// ---- Prediction coverage ----------------------------------------------------

PredictionCellReport prediction_coverage_cell(
    const PredictionCoverageConfig& config) {
  check_gp_cell_params(config.ell_true, config.eta_true, config.sigma2_true,
                       config.gamma, config.n_sims);
  if (config.n_train < 2)
    throw config_error("prediction coverage needs n_train >= 2");

  const int n = config.n_train;
  Eigen::MatrixXd train(n, 1);
  for (int i = 0; i < n; ++i)
    train(i, 0) = static_cast<double>(i) / (n - 1);
  const double sd = std::sqrt(config.sigma2_true);
  const Eigen::MatrixXd empty_X(n, 0);

  std::vector<std::uint8_t> bayes_status(config.n_sims, kNotCovered);
  std::vector<std::uint8_t> ml_status(config.n_sims, kNotCovered);
  parallel_for(
      static_cast<std::size_t>(config.n_sims), config.threads,
      [&](std::size_t r) {
        Rng rng(config.seed, static_cast<std::uint64_t>(r));
        // Held-out location, redrawn while it collides with a training point.
        double s_star = rng.next_double();
        while ((train.col(0).array() - s_star).abs().minCoeff() < 1e-9)
          s_star = rng.next_double();
        Eigen::MatrixXd joint(n + 1, 1);
        joint.topRows(n) = train;
        joint(n, 0) = s_star;

        const Eigen::MatrixXd D = pairwise_distances(joint);
        Eigen::MatrixXd C = kernel_matrix(D, config.ell_true, config.gamma);
        C.diagonal().array() += config.eta_true;
        Eigen::LLT<Eigen::MatrixXd> llt(C);
        if (llt.info() != Eigen::Success) {
          bayes_status[r] = kExcluded;
          ml_status[r] = kExcluded;
          return;
        }
        Eigen::VectorXd z(n + 1);
        for (int i = 0; i <= n; ++i) z[i] = rng.next_normal();
        const Eigen::VectorXd y_all =
            sd * (Eigen::MatrixXd(llt.matrixL()) * z);
        const double y_star = y_all[n];
        Dataset data{train, y_all.head(n), empty_X};
        Eigen::MatrixXd new_loc(1, 1);
        new_loc(0, 0) = s_star;
        const Eigen::MatrixXd new_X(1, 0);

        try {
          PosteriorSurrogate s(data, config.gamma, config.fit);
          double t = std::numeric_limits<double>::quiet_NaN();
          try {
            t = predict(s, new_loc, new_X).marginals()[0].cdf(y_star);
          } catch (const std::exception&) {
          }
          bayes_status[r] = classify(t, config.alpha);
        } catch (const std::exception&) {
          bayes_status[r] = kExcluded;
        }

        try {
          const MlFit fit = ml_fit(data, config.gamma);
          double t = std::numeric_limits<double>::quiet_NaN();
          try {
            const MlPrediction pred =
                ml_predict(data, config.gamma, fit, new_loc, new_X);
            t = standard_normal_cdf((y_star - pred.mean[0]) / pred.sd[0]);
          } catch (const std::exception&) {
          }
          ml_status[r] = classify(t, config.alpha);
        } catch (const std::exception&) {
          ml_status[r] = kExcluded;
        }
      });

  PredictionCellReport cell;
  cell.ell_true = config.ell_true;
  cell.eta_true = config.eta_true;
  cell.bayes = reduce_statuses(bayes_status, "prediction-bayes", 0.0,
                               config.alpha, config.seed);
  cell.ml = reduce_statuses(ml_status, "prediction-ml", 0.0, config.alpha,
                            config.seed);
  return cell;
}

std::vector<PredictionCellReport> prediction_coverage_suite(
    const PredictionCoverageConfig& base, const std::vector<double>& ells,
    const std::vector<double>& etas) {
  if (ells.empty() || etas.empty())
    throw config_error("coverage suite needs at least one ell and eta");
  std::vector<PredictionCellReport> cells;
  std::size_t index = 0;
  for (double eta : etas) {
    for (double ell : ells) {
      PredictionCoverageConfig config = base;
      config.ell_true = ell;
      config.eta_true = eta;
      config.seed = cell_seed(base.seed, index++);
      cells.push_back(prediction_coverage_cell(config));
    }
  }
  return cells;
}

}  // namespace refgp
