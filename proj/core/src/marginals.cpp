#include "refgp/marginals.hpp"

#include <algorithm>
#include <boost/math/distributions/inverse_gamma.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "refgp/errors.hpp"
#include "refgp/gauss_legendre.hpp"

namespace refgp {

using boost::math::inverse_gamma_distribution;
using boost::math::students_t_distribution;

MixtureMarginal MixtureMarginal::student_t(std::vector<double> weights,
                                           std::vector<double> df,
                                           std::vector<double> location,
                                           std::vector<double> scale) {
  if (weights.size() != df.size() || weights.size() != location.size() ||
      weights.size() != scale.size() || weights.empty())
    throw numeric_error("mixture components are inconsistent");
  MixtureMarginal m;
  m.kind_ = Kind::student_t;
  m.w_ = std::move(weights);
  m.a_ = std::move(df);
  m.b_ = std::move(location);
  m.c_ = std::move(scale);
  for (std::size_t k = 0; k < m.w_.size(); ++k)
    if (!(m.a_[k] > 0.0) || !(m.c_[k] > 0.0))
      throw numeric_error("invalid t-mixture component parameters");
  return m;
}

MixtureMarginal MixtureMarginal::inverse_gamma(std::vector<double> weights,
                                               std::vector<double> shape,
                                               std::vector<double> scale) {
  if (weights.size() != shape.size() || weights.size() != scale.size() ||
      weights.empty())
    throw numeric_error("mixture components are inconsistent");
  MixtureMarginal m;
  m.kind_ = Kind::inverse_gamma;
  m.w_ = std::move(weights);
  m.a_ = std::move(shape);
  m.b_ = std::move(scale);
  for (std::size_t k = 0; k < m.w_.size(); ++k)
    if (!(m.a_[k] > 0.0) || !(m.b_[k] > 0.0))
      throw numeric_error("invalid inverse-gamma component parameters");
  return m;
}

MixtureMarginal MixtureMarginal::log_grid(Cheb1D density, double total) {
  if (!(total > 0.0) || !std::isfinite(total))
    throw numeric_error("marginal density does not integrate to a positive "
                        "value");
  MixtureMarginal m;
  m.kind_ = Kind::grid;
  m.density_ = std::move(density);
  m.total_ = total;
  return m;
}

double MixtureMarginal::pdf(double x) const {
  switch (kind_) {
    case Kind::student_t: {
      double acc = 0.0;
      for (std::size_t k = 0; k < w_.size(); ++k) {
        const double z = (x - b_[k]) / c_[k];
        acc += w_[k] *
               boost::math::pdf(students_t_distribution<double>(a_[k]), z) /
               c_[k];
      }
      return acc;
    }
    case Kind::inverse_gamma: {
      if (x <= 0.0) return 0.0;
      double acc = 0.0;
      for (std::size_t k = 0; k < w_.size(); ++k)
        acc += w_[k] * boost::math::pdf(
                           inverse_gamma_distribution<double>(a_[k], b_[k]), x);
      return acc;
    }
    case Kind::grid: {
      if (x <= 0.0) return 0.0;
      const double u = std::log(x);
      if (u < density_.lo() || u > density_.hi()) return 0.0;
      return std::max(0.0, density_(u)) / (total_ * x);
    }
  }
  return 0.0;
}

double MixtureMarginal::cdf(double x) const {
  double acc = 0.0;
  switch (kind_) {
    case Kind::student_t:
      for (std::size_t k = 0; k < w_.size(); ++k) {
        const double z = (x - b_[k]) / c_[k];
        acc += w_[k] *
               boost::math::cdf(students_t_distribution<double>(a_[k]), z);
      }
      break;
    case Kind::inverse_gamma:
      if (x <= 0.0) return 0.0;
      for (std::size_t k = 0; k < w_.size(); ++k)
        acc += w_[k] * boost::math::cdf(
                           inverse_gamma_distribution<double>(a_[k], b_[k]), x);
      break;
    case Kind::grid: {
      if (x <= 0.0) return 0.0;
      const double u = std::log(x);
      if (u <= density_.lo()) return 0.0;
      if (u >= density_.hi()) return 1.0;
      acc = density_.integral_upto(u) / total_;
      break;
    }
  }
  return std::clamp(acc, 0.0, 1.0);
}

double MixtureMarginal::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw config_error("quantile probability must be in (0, 1)");
  double lo, hi;
  if (kind_ == Kind::grid) {
    lo = density_.lo();
    hi = density_.hi();
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (density_.integral_upto(mid) / total_ < p)
        lo = mid;
      else
        hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
  }

  // Bracket from the component quantiles, then widen defensively (tiny
  // negative weights can perturb the mixture CDF near the tails).
  lo = std::numeric_limits<double>::infinity();
  hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w_.size(); ++k) {
    if (w_[k] <= 0.0) continue;
    double q;
    if (kind_ == Kind::student_t) {
      q = b_[k] +
          c_[k] *
              boost::math::quantile(students_t_distribution<double>(a_[k]), p);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    } else {
      q = boost::math::quantile(inverse_gamma_distribution<double>(a_[k], b_[k]),
                                p);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw numeric_error("mixture quantile bracket failed");
  double width = std::max(hi - lo, std::max(std::abs(lo), 1.0) * 1e-6);
  for (int it = 0; it < 200 && cdf(lo) >= p; ++it) {
    lo -= width;
    width *= 2.0;
    if (kind_ == Kind::inverse_gamma && lo <= 0.0) {
      lo = std::min(1e-300, hi * 1e-12);
      break;
    }
  }
  width = std::max(hi - lo, std::max(std::abs(hi), 1.0) * 1e-6);
  for (int it = 0; it < 200 && cdf(hi) <= p; ++it) {
    hi += width;
    width *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double MixtureMarginal::mean() const {
  if (kind_ == Kind::grid)
    throw config_error(
        "moments are not exposed for length-scale/noise marginals");
  double acc = 0.0;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    if (kind_ == Kind::student_t) {
      if (a_[k] <= 1.0) throw numeric_error("t mixture mean needs df > 1");
      acc += w_[k] * b_[k];
    } else {
      if (a_[k] <= 1.0)
        throw numeric_error("inverse-gamma mean needs shape > 1");
      acc += w_[k] * b_[k] / (a_[k] - 1.0);
    }
  }
  return acc;
}

double MixtureMarginal::variance() const {
  if (kind_ == Kind::grid)
    throw config_error(
        "moments are not exposed for length-scale/noise marginals");
  const double mu = mean();
  double acc = 0.0;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    double mk, vk;
    if (kind_ == Kind::student_t) {
      if (a_[k] <= 2.0) throw numeric_error("t mixture variance needs df > 2");
      mk = b_[k];
      vk = c_[k] * c_[k] * a_[k] / (a_[k] - 2.0);
    } else {
      if (a_[k] <= 2.0)
        throw numeric_error("inverse-gamma variance needs shape > 2");
      mk = b_[k] / (a_[k] - 1.0);
      vk = mk * mk / (a_[k] - 2.0);
    }
    acc += w_[k] * (vk + mk * mk);
  }
  return acc - mu * mu;
}

double MixtureMarginal::support_lo() const {
  if (kind_ == Kind::grid) return std::exp(density_.lo());
  return kind_ == Kind::inverse_gamma
             ? 0.0
             : -std::numeric_limits<double>::infinity();
}

double MixtureMarginal::support_hi() const {
  if (kind_ == Kind::grid) return std::exp(density_.hi());
  return std::numeric_limits<double>::infinity();
}

MixtureMarginal sigma2_marginal(const PosteriorSurrogate& s) {
  const auto& rule = s.rule();
  const int n = s.posterior().n();
  const int p = s.posterior().p();
  std::vector<double> w(rule.mass.begin(), rule.mass.end());
  std::vector<double> shape(rule.size(), 0.5 * (n - p));
  std::vector<double> scale(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k)
    scale[k] = 0.5 * s.node_gls()[k].S2;
  return MixtureMarginal::inverse_gamma(std::move(w), std::move(shape),
                                        std::move(scale));
}

MixtureMarginal beta_marginal(const PosteriorSurrogate& s, int j) {
  const int p = s.posterior().p();
  if (j < 1 || j > p)
    throw config_error("beta index out of range 1..p");
  const auto& rule = s.rule();
  const int n = s.posterior().n();
  const double df = n - p;
  std::vector<double> w(rule.mass.begin(), rule.mass.end());
  std::vector<double> dfv(rule.size(), df);
  std::vector<double> loc(rule.size()), scale(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const GlsStats& g = s.node_gls()[k];
    loc[k] = g.beta[j - 1];
    scale[k] = std::sqrt(g.A_inv(j - 1, j - 1) * g.S2 / df);
  }
  return MixtureMarginal::student_t(std::move(w), std::move(dfv),
                                    std::move(loc), std::move(scale));
}

namespace {

// Clip the line p + s*d to the rectangle [lo0,hi0]x[lo1,hi1] (Liang-Barsky);
// returns false when the line misses the rectangle.
bool clip_line(const Eigen::Vector2d& p, const Eigen::Vector2d& d,
               const Eigen::Vector2d& lo, const Eigen::Vector2d& hi,
               double& s0, double& s1) {
  s0 = -std::numeric_limits<double>::infinity();
  s1 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2; ++k) {
    if (std::abs(d[k]) < 1e-300) {
      if (p[k] < lo[k] || p[k] > hi[k]) return false;
      continue;
    }
    double ta = (lo[k] - p[k]) / d[k];
    double tb = (hi[k] - p[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    s0 = std::max(s0, ta);
    s1 = std::min(s1, tb);
  }
  return s0 < s1;
}

MixtureMarginal log_coordinate_marginal(const PosteriorSurrogate& s, int dim) {
  const Eigen::Matrix2d& V = s.hess_eigenvectors();
  const Eigen::Vector2d lo(s.brackets()[0].lo, s.brackets()[1].lo);
  const Eigen::Vector2d hi(s.brackets()[0].hi, s.brackets()[1].hi);
  const double u0 = s.u_map()[dim];

  // Range of u_dim over the bracket box corners.
  double ulo = std::numeric_limits<double>::infinity();
  double uhi = -std::numeric_limits<double>::infinity();
  for (double t0 : {lo[0], hi[0]})
    for (double t1 : {lo[1], hi[1]}) {
      const double uc = u0 + t0 * V(dim, 0) + t1 * V(dim, 1);
      ulo = std::min(ulo, uc);
      uhi = std::max(uhi, uc);
    }

  // {u : u_dim = c} is the line grad.t = c - u0 in eigen coordinates; grad is
  // a row of the orthonormal V, so the orthogonal direction has unit length
  // and the line integral needs no Jacobian factor.
  const Eigen::Vector2d grad(V(dim, 0), V(dim, 1));
  const Eigen::Vector2d dir(-grad[1], grad[0]);
  // Composite quadrature: the density ridge occupies a small fraction of the
  // clipped segment, so equal subsegments resolve it far better than a single
  // high-order rule of the same total cost.
  constexpr int kSegments = 16;
  const GlRule& gl = gauss_legendre(16);

  auto density = [&](double uval) -> double {
    const Eigen::Vector2d p = grad * (uval - u0);
    double s0, s1;
    if (!clip_line(p, dir, lo, hi, s0, s1)) return 0.0;
    const double step = (s1 - s0) / kSegments;
    double acc = 0.0;
    for (int seg = 0; seg < kSegments; ++seg) {
      const double mid = s0 + (seg + 0.5) * step;
      const double half = 0.5 * step;
      for (int q = 0; q < static_cast<int>(gl.nodes.size()); ++q) {
        const Eigen::Vector2d t = p + (mid + half * gl.nodes[q]) * dir;
        acc += half * gl.weights[q] * s.density_t(t);
      }
    }
    return acc;
  };

  // Chebyshev fit over the attainable range; node count doubles when the
  // interpolant misses fresh points by more than the threshold.  The
  // threshold is floored below the grid tolerance so the 1-D machinery never
  // dominates the surrogate's own error.
  Cheb1D probe = Cheb1D::fit(ulo, uhi, density, 33);
  const double peak = probe.values().cwiseAbs().maxCoeff();
  const double tol_abs = std::max(std::min(s.options().tol, 1e-4) * peak,
                                  1e-14 * std::max(peak, 1.0));
  Cheb1D dens = Cheb1D::fit_adaptive(ulo, uhi, density, tol_abs, 33, 257);
  const double total = dens.integral();
  return MixtureMarginal::log_grid(std::move(dens), total);
}

}  // namespace

MixtureMarginal length_marginal(const PosteriorSurrogate& s) {
  return log_coordinate_marginal(s, 0);
}

MixtureMarginal noise_marginal(const PosteriorSurrogate& s) {
  return log_coordinate_marginal(s, 1);
}

}  // namespace refgp
