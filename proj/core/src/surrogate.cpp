#include "refgp/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "refgp/errors.hpp"

namespace refgp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

PosteriorSurrogate::PosteriorSurrogate(const Dataset& data, double gamma,
                                       const FitOptions& opts)
    : post_(data, gamma), opts_(opts) {
  if (!(opts.tol > 0.0)) throw config_error("fit tolerance must be > 0");
  if (!(opts.eps > 0.0 && opts.eps < 1.0))
    throw config_error("bracket eps must be in (0, 1)");

  // Step 1: multi-start trust-region MAP.
  Objective2d objective = [this](const Eigen::Vector2d& u, double& f,
                                 Eigen::Vector2d& g, Eigen::Matrix2d& h) {
    post_.value_grad_hess(u, f, g, h);
  };
  const TrustRegionResult map =
      minimize_multistart(objective, default_starts(), opts.trust_region);
  u_map_ = map.u;
  f_map_ = map.f;

  // Step 2: eigen-structure of the Hessian at the mode, ordered by
  // descending eigenvalue, columns sign-normalized.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(map.hess);
  eigval_ = es.eigenvalues().reverse();
  eigvec_.col(0) = es.eigenvectors().col(1);
  eigvec_.col(1) = es.eigenvectors().col(0);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      if (eigvec_(i, k) != 0.0) {
        if (eigvec_(i, k) < 0.0) eigvec_.col(k) = -eigvec_.col(k);
        break;
      }
    }
  }

  // Step 3: bracket each eigen-direction at the eps density ratio and fit
  // monotone warps of [0,1] onto the brackets.
  const double target = std::log(1.0 / opts.eps);
  for (int k = 0; k < 2; ++k) {
    const Eigen::Vector2d v = eigvec_.col(k);
    auto drop = [&](double t) -> double {
      try {
        return post_.value(u_map_ + t * v) - f_map_;
      } catch (const numeric_error&) {
        return kInf;
      }
    };
    brackets_[k] = bracket_direction(drop, target, opts.bracket_tmax,
                                     opts.bracket_tol);
    warps_[k] = MonotoneCubic({0.0, 0.5, 1.0},
                              {brackets_[k].lo, 0.0, brackets_[k].hi});
  }

  // Relative density on the unit square.
  auto g_unit = [this](const std::array<double, 2>& x) -> double {
    try {
      return std::exp(-(post_.value(u_from_unit(x)) - f_map_));
    } catch (const numeric_error&) {
      return 0.0;
    }
  };

  // Axis slices through the mode (descriptive separable factors h1, h2).
  const double slice_tol = std::min(opts.tol, opts.eps / 3.0);
  axis_factors_[0] = Cheb1D::fit_adaptive(
      0.0, 1.0, [&](double x) { return g_unit({x, 0.5}); }, slice_tol);
  axis_factors_[1] = Cheb1D::fit_adaptive(
      0.0, 1.0, [&](double x) { return g_unit({0.5, x}); }, slice_tol);

  // Step 4: adaptive sparse grid on g and the induced quadrature rule with
  // the warp derivatives as axis weights (change of variables t = w(x)).
  SparseGrid::Options gopts;
  gopts.tol = opts.tol;
  gopts.budget = opts.budget;
  grid_.build(g_unit, gopts);

  std::array<AxisWeight, 2> axis;
  for (int k = 0; k < 2; ++k) {
    const MonotoneCubic& w = warps_[k];
    axis[k].omega = [w](double x) { return w.derivative(x); };
    axis[k].degree = 3;
    axis[k].pieces = {{0.0, 0.5}, {0.5, 1.0}};
  }
  rule_ = build_quadrature(grid_, axis);

  // Conditional GLS statistics at every rule node.  Nodes where the model
  // cannot be evaluated carry zero density (g_unit mapped the failure to 0),
  // hence exactly zero mass; drop them so downstream mixtures only see
  // evaluable nodes.  Any non-zero-mass node must evaluate.
  node_u_.reserve(rule_.size());
  node_gls_.reserve(rule_.size());
  std::size_t kept = 0;
  for (std::size_t b = 0; b < rule_.size(); ++b) {
    const Eigen::Vector2d u = u_from_unit(rule_.x[b]);
    GlsStats stats;
    try {
      stats = post_.gls(u);
    } catch (const numeric_error&) {
      if (rule_.mass[b] != 0.0) throw;
      continue;
    }
    if (kept != b) {
      rule_.level[kept] = rule_.level[b];
      rule_.index[kept] = rule_.index[b];
      rule_.x[kept] = rule_.x[b];
      rule_.value[kept] = rule_.value[b];
      rule_.value_weight[kept] = rule_.value_weight[b];
      rule_.mass[kept] = rule_.mass[b];
    }
    ++kept;
    node_u_.push_back(u);
    node_gls_.push_back(std::move(stats));
  }
  rule_.level.resize(kept);
  rule_.index.resize(kept);
  rule_.x.resize(kept);
  rule_.value.resize(kept);
  rule_.value_weight.resize(kept);
  rule_.mass.resize(kept);
}

Eigen::Vector2d PosteriorSurrogate::u_from_unit(
    const std::array<double, 2>& x) const {
  return u_from_t({warps_[0](x[0]), warps_[1](x[1])});
}

Eigen::Vector2d PosteriorSurrogate::u_from_t(const Eigen::Vector2d& t) const {
  return u_map_ + t[0] * eigvec_.col(0) + t[1] * eigvec_.col(1);
}

Eigen::Vector2d PosteriorSurrogate::t_from_u(const Eigen::Vector2d& u) const {
  return eigvec_.transpose() * (u - u_map_);
}

double PosteriorSurrogate::density_unit(const std::array<double, 2>& x) const {
  return grid_.evaluate(x);
}

double PosteriorSurrogate::density_t(const Eigen::Vector2d& t) const {
  for (int k = 0; k < 2; ++k)
    if (t[k] < brackets_[k].lo || t[k] > brackets_[k].hi) return 0.0;
  return grid_.evaluate({warps_[0].inverse(t[0]), warps_[1].inverse(t[1])});
}

double PosteriorSurrogate::density_u(const Eigen::Vector2d& u) const {
  return density_t(t_from_u(u));
}

double PosteriorSurrogate::expect(
    const std::function<double(double, double)>& fn) const {
  double acc = 0.0;
  for (std::size_t b = 0; b < rule_.size(); ++b)
    acc += rule_.mass[b] * fn(std::exp(node_u_[b][0]), std::exp(node_u_[b][1]));
  return acc;
}

PosteriorSurrogate fit(const Dataset& data, double gamma,
                       const FitOptions& opts) {
  return PosteriorSurrogate(data, gamma, opts);
}

double posterior_expect(const PosteriorSurrogate& s,
                        const std::function<double(double, double)>& fn) {
  return s.expect(fn);
}

}  // namespace refgp
