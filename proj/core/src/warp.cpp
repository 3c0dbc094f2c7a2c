#include "refgp/warp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "refgp/errors.hpp"

namespace refgp {

namespace {

double find_crossing(const std::function<double(double)>& drop, double target,
                     double sign, double tmax, double tol) {
  double lo = 0.0;   // drop(lo) < target
  double t = sign;
  while (std::abs(t) <= tmax) {
    const double d = drop(t);
    if (d >= target) break;
    lo = t;
    t *= 2.0;
  }
  if (std::abs(t) > tmax) {
    t = sign * tmax;
    if (drop(t) < target) return t;  // never reaches the target: clamp
  }
  double hi = t;  // drop(hi) >= target
  while (std::abs(hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (drop(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Bracket bracket_direction(const std::function<double(double)>& drop,
                          double target, double tmax, double tol) {
  if (!(target > 0.0)) throw numeric_error("bracket target must be positive");
  Bracket b;
  b.hi = find_crossing(drop, target, 1.0, tmax, tol);
  b.lo = find_crossing(drop, target, -1.0, tmax, tol);
  return b;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw numeric_error("monotone cubic needs at least two knots");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i]) || !(y_[i + 1] > y_[i]))
      throw numeric_error("monotone cubic knots must be strictly increasing");
  }

  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

  m_.assign(n, 0.0);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) m_[i] = 0.5 * (d[i - 1] + d[i]);

  // Fritsch-Carlson limiter keeps every segment monotone.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double alpha = m_[i] / d[i];
    const double beta = m_[i + 1] / d[i];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m_[i] = tau * alpha * d[i];
      m_[i + 1] = tau * beta * d[i];
    }
  }
}

int MonotoneCubic::segment(double t) const {
  const int n = static_cast<int>(x_.size());
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(i, 0, n - 2);
}

double MonotoneCubic::operator()(double t) const {
  t = std::clamp(t, x_.front(), x_.back());
  const int i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return y_[i] * h00 + h * m_[i] * h10 + y_[i + 1] * h01 + h * m_[i + 1] * h11;
}

double MonotoneCubic::derivative(double t) const {
  t = std::clamp(t, x_.front(), x_.back());
  const int i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double dh00 = 6.0 * s2 - 6.0 * s;
  const double dh10 = 3.0 * s2 - 4.0 * s + 1.0;
  const double dh01 = -6.0 * s2 + 6.0 * s;
  const double dh11 = 3.0 * s2 - 2.0 * s;
  return (y_[i] * dh00 + h * m_[i] * dh10 + y_[i + 1] * dh01 +
          h * m_[i + 1] * dh11) /
         h;
}

double MonotoneCubic::inverse(double v) const {
  v = std::clamp(v, y_.front(), y_.back());
  double lo = x_.front();
  double hi = x_.back();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if ((*this)(mid) < v)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace refgp
