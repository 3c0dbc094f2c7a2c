#pragma once

#include <vector>

#include "refgp/chebyshev.hpp"
#include "refgp/surrogate.hpp"

namespace refgp {

// One-dimensional posterior marginal exposed as PDF/CDF/quantile.  Three
// kinds: a mixture of scalar t components, a mixture of inverse-gamma
// components (weights from the quadrature rule), or a gridded density in a
// log-transformed coordinate (used for the length-scale and noise ratio,
// whose moments are deliberately not exposed).
class MixtureMarginal {
 public:
  enum class Kind { student_t, inverse_gamma, grid };

  static MixtureMarginal student_t(std::vector<double> weights,
                                   std::vector<double> df,
                                   std::vector<double> location,
                                   std::vector<double> scale);
  static MixtureMarginal inverse_gamma(std::vector<double> weights,
                                       std::vector<double> shape,
                                       std::vector<double> scale);
  // density: interpolant of the (unnormalized) marginal density of u over its
  // support; the marginal variable is exp(u).  total = integral of density.
  static MixtureMarginal log_grid(Cheb1D density, double total);

  Kind kind() const { return kind_; }

  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;

  // Throw for the grid kind (endpoint behavior makes moments unreliable).
  double mean() const;
  double variance() const;

  // Support hints for tabulation (finite only for the grid kind).
  double support_lo() const;
  double support_hi() const;

 private:
  MixtureMarginal() = default;

  Kind kind_ = Kind::student_t;
  std::vector<double> w_, a_, b_, c_;  // component weights and parameters
  Cheb1D density_;                     // grid kind
  double total_ = 0.0;
};

// Marginal of sigma^2: inverse-gamma((n-p)/2, S^2/2) mixed over rule nodes.
MixtureMarginal sigma2_marginal(const PosteriorSurrogate& s);

// Marginal of beta_j (1-based j, 1 <= j <= p): scalar t with df = n-p,
// location beta_hat_j, scale sqrt((A^{-1})_jj S^2/(n-p)), mixed over nodes.
MixtureMarginal beta_marginal(const PosteriorSurrogate& s, int j);

// Marginals of ell = exp(u_1) and eta = exp(u_2): the 1-D density of u_dim is
// the exact line integral of the surrogate density over {u : u_dim = const}
// within the bracket box (Gauss-Legendre along the line), interpolated at
// Chebyshev nodes over the attainable range and integrated exactly.
MixtureMarginal length_marginal(const PosteriorSurrogate& s);
MixtureMarginal noise_marginal(const PosteriorSurrogate& s);

}  // namespace refgp
