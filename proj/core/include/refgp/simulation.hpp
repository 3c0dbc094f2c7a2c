#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "refgp/dataset.hpp"
#include "refgp/errors.hpp"
#include "refgp/rng.hpp"
#include "refgp/surrogate.hpp"
#include "refgp/threads.hpp"

namespace refgp {

// Result of a frequentist calibration run: fraction of replicates whose
// posterior CDF evaluated at the truth falls strictly inside the equal-tailed
// band ((1-alpha)/2, (1+alpha)/2).
struct CoverageReport {
  std::string parameter;
  double true_value = 0.0;
  double alpha = 0.95;  // credible level of the equal-tailed set
  int n_sims = 0;
  std::uint64_t seed = 0;
  int covered = 0;
  int excluded = 0;  // replicates dropped (fit failures)
  int warnings = 0;  // CDF evaluation failures, counted as non-covered
  double coverage = 0.0;  // covered / (n_sims - excluded)
};

inline bool covered_by_equal_tailed(double t, double alpha) {
  const double lo = 0.5 * (1.0 - alpha);
  return lo < t && t < 1.0 - lo;
}

// Generic harness: replicate r draws data via sampler(Rng(seed, r)) and
// evaluates cdf_at_true on it; the counting rule is strict, CDF failures
// (exceptions / non-finite values) count as non-covered warnings, and the
// result is a pure function of (seed, config) regardless of thread count.
template <typename Sampler, typename CdfAtTrue>
CoverageReport coverage_test(Sampler&& sampler, CdfAtTrue&& cdf_at_true,
                             std::string parameter, double true_value,
                             double alpha, int n_sims, std::uint64_t seed,
                             int threads = 1) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw config_error("alpha must be in (0, 1)");
  if (n_sims < 1) throw config_error("coverage test needs n_sims >= 1");
  std::vector<std::uint8_t> status(n_sims, 0);
  parallel_for(static_cast<std::size_t>(n_sims), threads, [&](std::size_t r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    auto data = sampler(rng);
    double t = std::numeric_limits<double>::quiet_NaN();
    try {
      t = cdf_at_true(data);
    } catch (const std::exception&) {
    }
    if (!std::isfinite(t))
      status[r] = 2;
    else
      status[r] = covered_by_equal_tailed(t, alpha) ? 1 : 0;
  });
  CoverageReport rep;
  rep.parameter = std::move(parameter);
  rep.true_value = true_value;
  rep.alpha = alpha;
  rep.n_sims = n_sims;
  rep.seed = seed;
  for (std::uint8_t s : status) {
    if (s == 1) ++rep.covered;
    if (s == 2) ++rep.warnings;
  }
  rep.coverage = static_cast<double>(rep.covered) / n_sims;
  return rep;
}

// ---- Closed-form normal-model posteriors (analytic oracles) ----------------

enum class NormalModel {
  mean_flat_known_variance,        // flat prior on mu, sigma^2 = 1 known
  variance_flat_known_mean,        // flat prior on sigma^2, mean 0 known
  variance_jeffreys_known_mean,    // prior 1/sigma^2, mean 0 known
  variance_jeffreys_unknown_mean,  // joint Jeffeys-rule prior sigma^-3
  variance_reference_unknown_mean  // reference prior 1/sigma^2
};

std::string normal_model_name(NormalModel model);

// Posterior CDF of the model's parameter (mu for the first, sigma^2 for the
// rest) at t, given observations y.
double normal_posterior_cdf(NormalModel model, const Eigen::VectorXd& y,
                            double t);

// Draws n observations at the given true parameter (mean models: N(true, 1);
// variance models: N(0, true)).
Eigen::VectorXd sample_normal_model(NormalModel model, int n_obs,
                                    double true_value, Rng& rng);

CoverageReport normal_model_coverage(NormalModel model, int n_obs,
                                     double true_value, double alpha,
                                     int n_sims, std::uint64_t seed,
                                     int threads = 1);

// ---- Gaussian-process parameter coverage ------------------------------------

// Fit options for simulation studies: a loose sparse-grid tolerance keeps a
// single replicate's surrogate cheap without moving coverage materially.
inline FitOptions coarse_fit_options() {
  FitOptions opts;
  opts.tol = 1e-2;
  return opts;
}

struct GpCoverageConfig {
  double ell_true = 0.5;
  double eta_true = 0.1;
  double sigma2_true = 1.0;
  double gamma = 1.0;            // exponential kernel
  int grid_nx = 10;              // locations: nx x nx even grid on [0,1]^2
  bool quadratic_design = false; // false: constant regressor (beta = 1);
                                 // true: (1, u, v, u^2, uv, v^2) regressors
  double alpha = 0.95;
  int n_sims = 50;
  std::uint64_t seed = 1;
  int threads = 1;
  FitOptions fit = coarse_fit_options();
};

struct GpCellReport {
  double ell_true = 0.0;
  double eta_true = 0.0;
  int n_sims = 0;
  int fit_failures = 0;
  // Reports in order: ell, eta, sigma2, beta1..betap.
  std::vector<CoverageReport> params;
};

GpCellReport gp_coverage_cell(const GpCoverageConfig& config);
std::vector<GpCellReport> gp_coverage_suite(const GpCoverageConfig& base,
                                            const std::vector<double>& ells,
                                            const std::vector<double>& etas);

// ---- Prediction coverage: Bayes mixture vs ML plug-in ----------------------

struct PredictionCoverageConfig {
  double ell_true = 0.2;
  double eta_true = 0.1;
  double sigma2_true = 1.0;
  double gamma = 2.0;  // squared-exponential kernel
  int n_train = 20;    // evenly spaced on [0,1]; held-out point is uniform
  double alpha = 0.95;
  int n_sims = 50;
  std::uint64_t seed = 1;
  int threads = 1;
  FitOptions fit = coarse_fit_options();
};

struct PredictionCellReport {
  double ell_true = 0.0;
  double eta_true = 0.0;
  CoverageReport bayes;
  CoverageReport ml;
};

PredictionCellReport prediction_coverage_cell(
    const PredictionCoverageConfig& config);
std::vector<PredictionCellReport> prediction_coverage_suite(
    const PredictionCoverageConfig& base, const std::vector<double>& ells,
    const std::vector<double>& etas);

}  // namespace refgp
