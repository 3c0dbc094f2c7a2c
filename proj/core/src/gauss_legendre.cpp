#include "refgp/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "refgp/errors.hpp"

namespace refgp {

namespace {

GlRule compute_rule(int n) {
  if (n < 1) throw numeric_error("Gauss-Legendre order must be >= 1");
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
  // 2 * (first component of each normalized eigenvector)^2.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GlRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = 2.0 * v0 * v0;
  }
  return rule;
}

}  // namespace

const GlRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GlRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

}  // namespace refgp
