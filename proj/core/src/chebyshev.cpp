#include "refgp/chebyshev.hpp"

#include <numbers>

#include "refgp/errors.hpp"

namespace refgp {

Eigen::VectorXd cgl_points(int m) {
  if (m < 1) throw numeric_error("Chebyshev node count must be >= 1");
  Eigen::VectorXd x(m);
  if (m == 1) {
    x[0] = 0.5;
    return x;
  }
  for (int j = 0; j < m; ++j) {
    x[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * j / (m - 1)));
  }
  return x;
}

Cheb1D::Cheb1D(double lo, double hi, Eigen::VectorXd values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
  const int m = static_cast<int>(values_.size());
  if (m < 2) throw numeric_error("Cheb1D needs at least 2 nodes");
  const Eigen::VectorXd t = cgl_points(m);
  x_ = lo_ + (hi_ - lo_) * t.array();
  w_.resize(m);
  for (int j = 0; j < m; ++j) {
    double wj = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == m - 1) wj *= 0.5;
    w_[j] = wj;
  }
  build_antiderivative();
}

double Cheb1D::operator()(double x) const {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < size(); ++j) {
    const double dx = x - x_[j];
    if (dx == 0.0) return values_[j];
    const double q = w_[j] / dx;
    num += q * values_[j];
    den += q;
  }
  return num / den;
}

void Cheb1D::build_antiderivative() {
  const int m = size();
  const int N = m - 1;
  // Chebyshev series of the interpolant: with theta_j = pi j / N and node
  // ordering z_j = -cos(theta_j), the type-I cosine transform gives
  // v(z) = sum_k alpha_k cos(k theta) and c_k = (-1)^k alpha_k for T_k(z).
  Eigen::VectorXd c(m);
  for (int k = 0; k <= N; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= N; ++j) {
      double term = values_[j] * std::cos(std::numbers::pi * j * k / N);
      if (j == 0 || j == N) term *= 0.5;
      acc += term;
    }
    double alpha = 2.0 * acc / N;
    if (k == 0 || k == N) alpha *= 0.5;
    c[k] = (k % 2 == 0) ? alpha : -alpha;
  }
  // Antiderivative series B with F' = v: B_k = (c~_{k-1} - c_{k+1}) / (2k)
  // for k >= 1 (c~_0 = 2 c_0, entries past N are zero); B_0 fixed by F(-1)=0.
  anti_ = Eigen::VectorXd::Zero(m + 1);
  auto cc = [&](int k) -> double {
    if (k < 0 || k > N) return 0.0;
    return (k == 0) ? 2.0 * c[0] : c[k];
  };
  for (int k = 1; k <= N + 1; ++k) {
    anti_[k] = (cc(k - 1) - cc(k + 1)) / (2.0 * k);
  }
  double f_neg1 = 0.0;
  for (int k = 1; k <= N + 1; ++k) {
    f_neg1 += anti_[k] * ((k % 2 == 0) ? 1.0 : -1.0);
  }
  anti_[0] = -f_neg1;  // stored as full T_0 coefficient
}

double Cheb1D::series_antiderivative_at(double z) const {
  // Clenshaw recurrence for sum_k anti_k T_k(z), anti_0 a full coefficient.
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(anti_.size()) - 1; k >= 1; --k) {
    const double b0 = anti_[k] + 2.0 * z * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return anti_[0] + z * b1 - b2;
}

double Cheb1D::integral_upto(double x) const {
  const double half = 0.5 * (hi_ - lo_);
  const double z = (x - lo_) / half - 1.0;
  return half * series_antiderivative_at(z);
}

}  // namespace refgp
