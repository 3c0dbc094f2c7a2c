#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

namespace refgp {

// Chebyshev-Gauss-Lobatto points on [0, 1], ascending:
// x_j = (1 - cos(pi j / (m-1))) / 2, j = 0..m-1.  Nested for m -> 2(m-1)+1.
Eigen::VectorXd cgl_points(int m);

// Polynomial interpolant through values at CGL points mapped to [lo, hi],
// evaluated by the barycentric formula, with exact integration of the
// interpolating polynomial via its Chebyshev series.
class Cheb1D {
 public:
  Cheb1D() = default;
  Cheb1D(double lo, double hi, Eigen::VectorXd values);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int size() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXd& nodes() const { return x_; }

  double operator()(double x) const;

  // Integral of the interpolant over [lo, x] (exact, via the antiderivative
  // of the Chebyshev series), and over the whole interval.
  double integral_upto(double x) const;
  double integral() const { return integral_upto(hi_); }

  template <typename Fn>
  static Cheb1D fit(double lo, double hi, Fn&& fn, int m) {
    const Eigen::VectorXd t = cgl_points(m);
    Eigen::VectorXd v(m);
    for (int j = 0; j < m; ++j) v[j] = fn(lo + (hi - lo) * t[j]);
    return Cheb1D(lo, hi, std::move(v));
  }

  // Doubles the node count until the interpolant reproduces fn at the next
  // refinement's new points within tol (or m exceeds mmax).
  template <typename Fn>
  static Cheb1D fit_adaptive(double lo, double hi, Fn&& fn, double tol,
                             int m0 = 33, int mmax = 1025) {
    int m = m0;
    Cheb1D cur = fit(lo, hi, fn, m);
    while (m < mmax) {
      const int m2 = 2 * (m - 1) + 1;
      const Eigen::VectorXd t = cgl_points(m2);
      double max_err = 0.0;
      for (int j = 1; j < m2; j += 2) {  // points new to the refined grid
        const double x = lo + (hi - lo) * t[j];
        max_err = std::max(max_err, std::abs(fn(x) - cur(x)));
      }
      if (max_err <= tol) break;
      m = m2;
      cur = fit(lo, hi, fn, m);
    }
    return cur;
  }

 private:
  void build_antiderivative();
  double series_antiderivative_at(double z) const;

  double lo_ = 0.0, hi_ = 1.0;
  Eigen::VectorXd values_;
  Eigen::VectorXd x_;     // nodes in [lo, hi]
  Eigen::VectorXd w_;     // barycentric weights
  Eigen::VectorXd anti_;  // Chebyshev coefficients of the antiderivative
};

}  // namespace refgp
