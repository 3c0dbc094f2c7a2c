#pragma once

#include <Eigen/Dense>

namespace refgp {

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
struct GlRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Cached rule of order n (computed once via the Golub-Welsch eigenproblem).
const GlRule& gauss_legendre(int n);

// Integrates fn over [a, b] with the order-n rule.
template <typename Fn>
double gl_integrate(Fn&& fn, double a, double b, int n) {
  const GlRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double total = 0.0;
  for (Eigen::Index i = 0; i < r.nodes.size(); ++i) {
    total += r.weights[i] * fn(mid + half * r.nodes[i]);
  }
  return half * total;
}

}  // namespace refgp
