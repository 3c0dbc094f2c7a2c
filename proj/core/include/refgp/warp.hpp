#pragma once

#include <functional>
#include <vector>

namespace refgp {

// Interval [lo, hi] with lo < 0 < hi along a ray through the optimum.
struct Bracket {
  double lo;
  double hi;
};

// Finds where `drop` (the objective increase relative to its minimum along a
// ray, so drop(0) = 0) first reaches `target` on each side of 0.  Steps are
// doubled from +/-1 until the target is passed or |t| exceeds tmax (in which
// case the bound is clamped to +/-tmax), then the crossing is bisected to
// `tol`.  `drop` may return +infinity where the objective is undefined.
Bracket bracket_direction(const std::function<double(double)>& drop,
                          double target, double tmax = 50.0,
                          double tol = 1e-8);

// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson tangents)
// through strictly increasing knots.  Used to map the unit interval onto a
// bracketed ray so that the transformed objective is well scaled.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  // x strictly increasing, y strictly increasing, sizes equal and >= 2.
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const;
  double derivative(double t) const;
  double inverse(double v) const;

  const std::vector<double>& knots_x() const { return x_; }
  const std::vector<double>& knots_y() const { return y_; }
  const std::vector<double>& tangents() const { return m_; }

 private:
  int segment(double t) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace refgp
