// Command-line front end: data ingestion, fitting, marginals, prediction,
// maximum likelihood, coverage simulations, and synthetic data generation.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure.
// Outputs are deterministic for a fixed configuration: JSON for structured
// results, CSV for tables, no timestamps.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "refgp/csv.hpp"
#include "refgp/dataset.hpp"
#include "refgp/errors.hpp"
#include "refgp/kernel.hpp"
#include "refgp/marginals.hpp"
#include "refgp/ml.hpp"
#include "refgp/prediction.hpp"
#include "refgp/rng.hpp"
#include "refgp/simulation.hpp"
#include "refgp/surrogate.hpp"

using json = nlohmann::ordered_json;
using namespace refgp;

namespace {

struct CommonOptions {
  std::string input;
  double gamma = 1.0;
  double tol = 1e-4;
  double eps = 1e-5;
  double alpha = 0.95;
  std::uint64_t seed = 0;
  int n_sims = -1;  // -1: suite-specific default
  int threads = 0;  // 0: all hardware threads
  std::string out;
  std::string grid_out;
};

void add_model_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--gamma", opt.gamma, "Kernel exponent (1 or 2)")
      ->check(CLI::IsMember({1.0, 2.0}));
  cmd->add_option("--tol", opt.tol, "Sparse-grid tolerance (default 1e-4)");
  cmd->add_option("--eps", opt.eps,
                  "Density ratio bounding the bracketed region (default 1e-5)");
}

void add_output_flag(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--out", opt.out, "Output path (default: stdout)");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw config_error("cannot open output file: " + path);
  f << text;
  if (!f) throw config_error("failed writing output file: " + path);
}

void write_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string format_number(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw numeric_error("number formatting failed");
  return std::string(buf, ptr);
}

FitOptions fit_options(const CommonOptions& opt) {
  FitOptions f;
  f.tol = opt.tol;
  f.eps = opt.eps;
  return f;
}

void check_common(const CommonOptions& opt) {
  if (!(opt.tol > 0.0)) throw config_error("--tol must be positive");
  if (!(opt.eps > 0.0 && opt.eps < 1.0))
    throw config_error("--eps must be in (0, 1)");
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0))
    throw config_error("--alpha must be in (0, 1)");
}

json config_json(const CommonOptions& opt, const char* command) {
  json j;
  j["command"] = command;
  if (!opt.input.empty()) j["input"] = opt.input;
  j["gamma"] = opt.gamma;
  return j;
}

json marginal_percentiles(const MixtureMarginal& m,
                          const std::vector<double>& levels) {
  json arr = json::array();
  for (double q : levels) arr.push_back(m.quantile(q));
  return arr;
}

json credible_interval(const MixtureMarginal& m, double alpha) {
  return json::array({m.quantile(0.5 * (1.0 - alpha)),
                      m.quantile(0.5 * (1.0 + alpha))});
}

// ---- fit --------------------------------------------------------------------

void write_grid_dump(const std::string& path, const PosteriorSurrogate& s,
                     const CommonOptions& opt) {
  json j;
  j["tol"] = opt.tol;
  j["eps"] = opt.eps;
  j["evaluations"] = s.grid().node_count();
  j["normalization"] = s.normalization();
  json nodes = json::array();
  const QuadratureRule& rule = s.rule();
  std::size_t k = 0;
  for (const Subgrid& sg : s.grid().subgrids()) {
    for (const GridNode& nd : sg.nodes) {
      json rec;
      rec["level"] = {sg.level[0], sg.level[1]};
      rec["index"] = {nd.index[0], nd.index[1]};
      rec["x"] = {nd.x[0], nd.x[1]};
      const Eigen::Vector2d& u = s.node_u()[k];
      rec["ell"] = std::exp(u[0]);
      rec["eta"] = std::exp(u[1]);
      rec["value"] = nd.value;
      rec["surplus"] = nd.surplus;
      rec["mass"] = rule.mass[k];
      nodes.push_back(std::move(rec));
      ++k;
    }
  }
  j["nodes"] = std::move(nodes);
  write_json(path, j);
}

int run_fit(const CommonOptions& opt) {
  check_common(opt);
  Dataset data = dataset_from_csv(opt.input);
  PosteriorSurrogate s(data, opt.gamma, fit_options(opt));

  json j = config_json(opt, "fit");
  j["tol"] = opt.tol;
  j["eps"] = opt.eps;
  j["alpha"] = opt.alpha;
  j["n"] = data.n();
  j["p"] = data.p();

  const GlsStats map_gls = s.posterior().gls(s.u_map());
  json map;
  map["ell"] = std::exp(s.u_map()[0]);
  map["eta"] = std::exp(s.u_map()[1]);
  map["u"] = {s.u_map()[0], s.u_map()[1]};
  map["objective"] = s.f_map();
  map["hessian_eigenvalues"] = {s.hess_eigenvalues()[0],
                                s.hess_eigenvalues()[1]};
  map["sigma2"] = map_gls.S2 / (data.n() - data.p());
  json betas = json::array();
  for (int k = 0; k < data.p(); ++k) betas.push_back(map_gls.beta[k]);
  map["beta"] = std::move(betas);
  j["map"] = std::move(map);

  j["brackets"] = {{s.brackets()[0].lo, s.brackets()[0].hi},
                   {s.brackets()[1].lo, s.brackets()[1].hi}};
  json grid;
  grid["nodes"] = static_cast<int>(s.rule().size());
  grid["evaluations"] = s.grid().node_count();
  grid["final_error"] = s.grid().final_error();
  grid["normalization"] = s.normalization();
  j["grid"] = std::move(grid);

  const std::vector<double> levels = {0.05, 0.25, 0.5, 0.75, 0.95};
  json pct;
  pct["levels"] = levels;
  json cred;
  cred["alpha"] = opt.alpha;
  {
    MixtureMarginal m = length_marginal(s);
    pct["ell"] = marginal_percentiles(m, levels);
    cred["ell"] = credible_interval(m, opt.alpha);
  }
  {
    MixtureMarginal m = noise_marginal(s);
    pct["eta"] = marginal_percentiles(m, levels);
    cred["eta"] = credible_interval(m, opt.alpha);
  }
  {
    MixtureMarginal m = sigma2_marginal(s);
    pct["sigma2"] = marginal_percentiles(m, levels);
    cred["sigma2"] = credible_interval(m, opt.alpha);
  }
  for (int k = 1; k <= data.p(); ++k) {
    MixtureMarginal m = beta_marginal(s, k);
    const std::string name = "beta" + std::to_string(k);
    pct[name] = marginal_percentiles(m, levels);
    cred[name] = credible_interval(m, opt.alpha);
  }
  j["percentiles"] = std::move(pct);
  j["credible"] = std::move(cred);

  if (!opt.grid_out.empty()) write_grid_dump(opt.grid_out, s, opt);
  write_json(opt.out, j);
  return 0;
}

// ---- predict ----------------------------------------------------------------

int run_predict(const CommonOptions& opt, const std::string& locations_path) {
  check_common(opt);
  Dataset data = dataset_from_csv(opt.input);
  const Eigen::MatrixXd new_locations = locations_from_csv(locations_path);
  const int m = static_cast<int>(new_locations.rows());

  json j = config_json(opt, "predict");
  j["tol"] = opt.tol;
  j["eps"] = opt.eps;
  j["alpha"] = opt.alpha;
  j["locations"] = locations_path;
  json preds = json::array();
  if (m > 0) {
    PosteriorSurrogate s(data, opt.gamma, fit_options(opt));
    // Prediction regressors mirror ingestion: intercept plus any regressor
    // columns; location files carry coordinates only, so designs beyond the
    // intercept are not predictable from a locations CSV.
    if (data.p() != 1)
      throw config_error(
          "predict supports intercept-only designs; the locations file "
          "carries no regressor columns");
    const Eigen::MatrixXd new_X = Eigen::MatrixXd::Ones(m, 1);
    PredictiveDistribution pred = predict(s, new_locations, new_X);
    const Eigen::VectorXd mean = pred.mean();
    const Eigen::VectorXd var = pred.variance();
    for (int i = 0; i < m; ++i) {
      json rec;
      json loc = json::array();
      for (int c = 0; c < new_locations.cols(); ++c)
        loc.push_back(new_locations(i, c));
      rec["location"] = std::move(loc);
      rec["mean"] = mean[i];
      rec["sd"] = std::sqrt(var[i]);
      const MixtureMarginal& mm = pred.marginals()[i];
      rec["median"] = mm.quantile(0.5);
      rec["lower"] = mm.quantile(0.5 * (1.0 - opt.alpha));
      rec["upper"] = mm.quantile(0.5 * (1.0 + opt.alpha));
      preds.push_back(std::move(rec));
    }
  }
  j["predictions"] = std::move(preds);
  write_json(opt.out, j);
  return 0;
}

// ---- marginal ---------------------------------------------------------------

int run_marginal(const CommonOptions& opt, const std::string& param,
                 int points) {
  check_common(opt);
  if (points < 2) throw config_error("--points must be at least 2");
  Dataset data = dataset_from_csv(opt.input);
  PosteriorSurrogate s(data, opt.gamma, fit_options(opt));

  MixtureMarginal m = [&]() -> MixtureMarginal {
    if (param == "ell") return length_marginal(s);
    if (param == "eta") return noise_marginal(s);
    if (param == "sigma2") return sigma2_marginal(s);
    if (param.rfind("beta", 0) == 0) {
      const std::string digits = param.substr(4);
      int idx = 0;
      try {
        idx = std::stoi(digits);
      } catch (const std::exception&) {
        throw config_error("unknown marginal parameter: " + param);
      }
      return beta_marginal(s, idx);
    }
    throw config_error("unknown marginal parameter: " + param +
                       " (expected ell, eta, sigma2, or beta<j>)");
  }();

  // Log-spaced sample grid for positive scale parameters, linear for
  // regression coefficients, spanning the central 99.8% of the marginal.
  const double lo = m.quantile(0.001);
  const double hi = m.quantile(0.999);
  const bool log_spaced = param == "ell" || param == "eta" || param == "sigma2";
  std::ostringstream os;
  os << "value,density,cdf\n";
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    const double v = log_spaced
                         ? std::exp(std::log(lo) + f * (std::log(hi) -
                                                        std::log(lo)))
                         : lo + f * (hi - lo);
    os << format_number(v) << ',' << format_number(m.pdf(v)) << ','
       << format_number(m.cdf(v)) << '\n';
  }
  write_text(opt.out, os.str());
  return 0;
}

// ---- ml ---------------------------------------------------------------------

int run_ml(const CommonOptions& opt) {
  Dataset data = dataset_from_csv(opt.input);
  const MlFit fit = ml_fit(data, opt.gamma);
  json j = config_json(opt, "ml");
  j["n"] = data.n();
  j["p"] = data.p();
  j["ell"] = fit.ell;
  j["eta"] = fit.eta;
  j["sigma2"] = fit.sigma2;
  json betas = json::array();
  for (int k = 0; k < fit.beta.size(); ++k) betas.push_back(fit.beta[k]);
  j["beta"] = std::move(betas);
  j["u"] = {fit.u[0], fit.u[1]};
  j["objective"] = fit.objective;
  j["gradient"] = {fit.grad[0], fit.grad[1]};
  j["iterations"] = fit.iterations;
  write_json(opt.out, j);
  return 0;
}

// ---- coverage ---------------------------------------------------------------

std::string cell_label(double eta, double ell) {
  std::ostringstream os;
  os << "eta=" << eta << " ell=" << ell;
  return os.str();
}

void write_table(const std::string& path,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (std::size_t c = 0; c < header.size(); ++c)
    os << (c ? "," : "") << header[c];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << '\n';
  }
  write_text(path, os.str());
}

std::string format_coverage(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

int run_coverage_normal(const CommonOptions& opt) {
  const int n_sims = opt.n_sims > 0 ? opt.n_sims : 10000;
  struct Row {
    NormalModel model;
    int n_obs;
    double truth;
  };
  const Row table[] = {
      {NormalModel::mean_flat_known_variance, 10, 1.0},
      {NormalModel::variance_flat_known_mean, 5, 1.0},
      {NormalModel::variance_jeffreys_known_mean, 5, 1.0},
      {NormalModel::variance_jeffreys_unknown_mean, 5, 1.0},
      {NormalModel::variance_reference_unknown_mean, 5, 1.0},
  };
  std::vector<std::vector<std::string>> rows;
  for (const Row& r : table) {
    const CoverageReport rep = normal_model_coverage(
        r.model, r.n_obs, r.truth, opt.alpha, n_sims, opt.seed, opt.threads);
    rows.push_back({rep.parameter, std::to_string(r.n_obs),
                    format_number(rep.true_value), format_number(rep.alpha),
                    std::to_string(rep.n_sims), format_coverage(rep.coverage),
                    std::to_string(rep.covered), std::to_string(rep.warnings)});
  }
  write_table(opt.out,
              {"model", "n_obs", "true_value", "alpha", "n_sims", "coverage",
               "covered", "warnings"},
              rows);
  return 0;
}

int run_coverage_gp(const CommonOptions& opt, bool full, bool quadratic) {
  GpCoverageConfig config;
  config.gamma = opt.gamma;
  config.alpha = opt.alpha;
  config.n_sims = opt.n_sims > 0 ? opt.n_sims : 50;
  config.seed = opt.seed;
  config.threads = opt.threads;
  config.quadratic_design = quadratic;
  if (opt.tol != 1e-4) config.fit.tol = opt.tol;  // default stays coarse

  std::vector<GpCellReport> cells;
  if (full) {
    cells = gp_coverage_suite(config, {0.2, 0.5, 1.0},
                              {0.01, 0.05, 0.1, 0.2});
  } else {
    cells.push_back(gp_coverage_cell(config));
  }

  // Rows = quantity, columns = (eta, ell) cells.
  std::vector<std::string> header = {"quantity"};
  for (const GpCellReport& c : cells)
    header.push_back(cell_label(c.eta_true, c.ell_true));
  std::vector<std::vector<std::string>> rows;
  const std::size_t n_params = cells.front().params.size();
  for (std::size_t k = 0; k < n_params; ++k) {
    std::vector<std::string> row = {cells.front().params[k].parameter +
                                    " coverage"};
    for (const GpCellReport& c : cells)
      row.push_back(format_coverage(c.params[k].coverage));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> fails = {"fit failures"};
  std::vector<std::string> sims = {"n_sims"};
  for (const GpCellReport& c : cells) {
    fails.push_back(std::to_string(c.fit_failures));
    sims.push_back(std::to_string(c.n_sims));
  }
  rows.push_back(std::move(sims));
  rows.push_back(std::move(fails));
  write_table(opt.out, header, rows);
  return 0;
}

int run_coverage_prediction(const CommonOptions& opt, bool full) {
  PredictionCoverageConfig config;
  config.gamma = opt.gamma;
  config.alpha = opt.alpha;
  config.n_sims = opt.n_sims > 0 ? opt.n_sims : 50;
  config.seed = opt.seed;
  config.threads = opt.threads;
  if (opt.tol != 1e-4) config.fit.tol = opt.tol;

  std::vector<PredictionCellReport> cells;
  if (full) {
    cells = prediction_coverage_suite(config, {0.1, 0.2, 0.5},
                                      {0.001, 0.01, 0.1, 0.2});
  } else {
    cells.push_back(prediction_coverage_cell(config));
  }

  std::vector<std::string> header = {"quantity"};
  for (const PredictionCellReport& c : cells)
    header.push_back(cell_label(c.eta_true, c.ell_true));
  std::vector<std::vector<std::string>> rows(5);
  rows[0] = {"bayes coverage"};
  rows[1] = {"ml coverage"};
  rows[2] = {"bayes excluded"};
  rows[3] = {"ml excluded"};
  rows[4] = {"n_sims"};
  for (const PredictionCellReport& c : cells) {
    rows[0].push_back(format_coverage(c.bayes.coverage));
    rows[1].push_back(format_coverage(c.ml.coverage));
    rows[2].push_back(std::to_string(c.bayes.excluded));
    rows[3].push_back(std::to_string(c.ml.excluded));
    rows[4].push_back(std::to_string(c.bayes.n_sims));
  }
  write_table(opt.out, header, rows);
  return 0;
}

// ---- sample -----------------------------------------------------------------

int run_sample(const CommonOptions& opt, int n, int dim, double ell,
               double eta, double sigma2, double beta) {
  check_gamma(opt.gamma);
  if (n < 2) throw config_error("--n must be at least 2");
  if (dim < 1 || dim > 3) throw config_error("--dim must be 1, 2, or 3");
  if (!(ell > 0.0) || !(eta > 0.0) || !(sigma2 > 0.0))
    throw config_error("--ell, --eta, --sigma2 must be positive");

  Rng rng(opt.seed, 0);
  Eigen::MatrixXd locations(n, dim);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < dim; ++c) locations(i, c) = rng.next_double();
  Eigen::MatrixXd C =
      kernel_matrix(pairwise_distances(locations), ell, opt.gamma);
  C.diagonal().array() += eta;
  Eigen::LLT<Eigen::MatrixXd> llt(C);
  if (llt.info() != Eigen::Success)
    throw numeric_error("sampling covariance is not positive definite");
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z[i] = rng.next_normal();
  const Eigen::VectorXd y =
      Eigen::VectorXd::Constant(n, beta) +
      std::sqrt(sigma2) * (Eigen::MatrixXd(llt.matrixL()) * z);

  std::vector<std::string> header;
  for (int c = 0; c < dim; ++c) header.push_back("x" + std::to_string(c + 1));
  header.push_back("y");
  std::ostringstream os;
  for (std::size_t c = 0; c < header.size(); ++c)
    os << (c ? "," : "") << header[c];
  os << '\n';
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < dim; ++c) os << format_number(locations(i, c)) << ',';
    os << format_number(y[i]) << '\n';
  }
  write_text(opt.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Deterministic Bayesian inference for spatial Gaussian-process models "
      "under a reference prior"};
  app.require_subcommand(1);
  CommonOptions opt;

  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Fit the hyperparameter posterior surrogate");
  fit_cmd->add_option("--input", opt.input, "Dataset CSV")->required();
  add_model_flags(fit_cmd, opt);
  fit_cmd->add_option("--alpha", opt.alpha,
                      "Credible level for interval output (default 0.95)");
  fit_cmd->add_option("--threads", opt.threads, "Worker threads (0 = auto)");
  fit_cmd->add_option("--grid-out", opt.grid_out,
                      "Write sparse-grid nodes as JSON to this path");
  add_output_flag(fit_cmd, opt);

  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Posterior predictive at new locations");
  std::string locations_path;
  predict_cmd->add_option("--input", opt.input, "Dataset CSV")->required();
  predict_cmd
      ->add_option("--locations", locations_path, "New locations CSV")
      ->required();
  add_model_flags(predict_cmd, opt);
  predict_cmd->add_option("--alpha", opt.alpha,
                          "Credible level for bounds (default 0.95)");
  predict_cmd->add_option("--threads", opt.threads,
                          "Worker threads (0 = auto)");
  add_output_flag(predict_cmd, opt);

  CLI::App* marginal_cmd = app.add_subcommand(
      "marginal", "Density/CDF samples of one posterior marginal");
  std::string param;
  int points = 201;
  marginal_cmd->add_option("--input", opt.input, "Dataset CSV")->required();
  marginal_cmd
      ->add_option("--param", param, "ell | eta | sigma2 | beta<j>")
      ->required();
  marginal_cmd->add_option("--points", points,
                           "Number of sample points (default 201)");
  add_model_flags(marginal_cmd, opt);
  marginal_cmd->add_option("--threads", opt.threads,
                           "Worker threads (0 = auto)");
  add_output_flag(marginal_cmd, opt);

  CLI::App* ml_cmd =
      app.add_subcommand("ml", "Profile maximum-likelihood estimates");
  ml_cmd->add_option("--input", opt.input, "Dataset CSV")->required();
  ml_cmd->add_option("--gamma", opt.gamma, "Kernel exponent (1 or 2)")
      ->check(CLI::IsMember({1.0, 2.0}));
  add_output_flag(ml_cmd, opt);

  CLI::App* coverage_cmd =
      app.add_subcommand("coverage", "Frequentist coverage simulations");
  std::string suite = "normal";
  bool full = false;
  bool quadratic = false;
  coverage_cmd
      ->add_option("--suite", suite,
                   "normal: closed-form posteriors; gp: hyperparameter "
                   "coverage; prediction: Bayes vs ML predictive coverage")
      ->check(CLI::IsMember({"normal", "gp", "prediction"}));
  coverage_cmd->add_flag(
      "--full", full,
      "Run the full (eta, ell) sweep instead of the single default cell");
  coverage_cmd->add_flag("--quadratic", quadratic,
                         "gp suite: quadratic regression design");
  coverage_cmd->add_option("--gamma", opt.gamma, "Kernel exponent (1 or 2)")
      ->check(CLI::IsMember({1.0, 2.0}));
  coverage_cmd->add_option("--tol", opt.tol,
                           "Sparse-grid tolerance for per-replicate fits");
  coverage_cmd->add_option("--alpha", opt.alpha,
                           "Credible level (default 0.95)");
  coverage_cmd->add_option("--seed", opt.seed, "Simulation seed");
  coverage_cmd->add_option(
      "--n-sims", opt.n_sims,
      "Replicates (default: 10000 for normal, 50 for gp/prediction)");
  coverage_cmd->add_option("--threads", opt.threads,
                           "Worker threads (0 = auto)");
  add_output_flag(coverage_cmd, opt);

  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Draw a synthetic dataset CSV");
  int sample_n = 36;
  int sample_dim = 2;
  double sample_ell = 0.5, sample_eta = 0.1, sample_sigma2 = 1.0,
         sample_beta = 1.0;
  sample_cmd->add_option("--n", sample_n, "Observations (default 36)");
  sample_cmd->add_option("--dim", sample_dim,
                         "Coordinate dimension (default 2)");
  sample_cmd->add_option("--ell", sample_ell, "True range (default 0.5)");
  sample_cmd->add_option("--eta", sample_eta,
                         "True noise ratio (default 0.1)");
  sample_cmd->add_option("--sigma2", sample_sigma2,
                         "True signal variance (default 1)");
  sample_cmd->add_option("--beta", sample_beta,
                         "Constant mean coefficient (default 1)");
  sample_cmd->add_option("--gamma", opt.gamma, "Kernel exponent (1 or 2)")
      ->check(CLI::IsMember({1.0, 2.0}));
  sample_cmd->add_option("--seed", opt.seed, "Sampling seed");
  add_output_flag(sample_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(opt);
    if (predict_cmd->parsed()) return run_predict(opt, locations_path);
    if (marginal_cmd->parsed()) return run_marginal(opt, param, points);
    if (ml_cmd->parsed()) return run_ml(opt);
    if (coverage_cmd->parsed()) {
      check_common(opt);
      if (suite == "normal") return run_coverage_normal(opt);
      if (suite == "gp") return run_coverage_gp(opt, full, quadratic);
      return run_coverage_prediction(opt, full);
    }
    if (sample_cmd->parsed())
      return run_sample(opt, sample_n, sample_dim, sample_ell, sample_eta,
                        sample_sigma2, sample_beta);
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
