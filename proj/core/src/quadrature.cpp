#include "refgp/quadrature.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "refgp/errors.hpp"
#include "refgp/gauss_legendre.hpp"

namespace refgp {

namespace {

// Exact integral over [0,1] of (cardinal basis at level/index) * omega.
double basis_weight_integral(int level, int index, const AxisWeight& axis) {
  const int deg_basis = level == 0 ? 0 : (1 << level);
  const int ngl = (deg_basis + axis.degree) / 2 + 2;
  const GlRule& rule = gauss_legendre(ngl);
  double total = 0.0;
  for (const auto& [p0, p1] : axis.pieces) {
    const double mid = 0.5 * (p0 + p1);
    const double half = 0.5 * (p1 - p0);
    double piece = 0.0;
    for (int q = 0; q < ngl; ++q) {
      const double xq = mid + half * rule.nodes[q];
      piece += rule.weights[q] * cardinal_basis(level, index, xq) *
               axis.omega(xq);
    }
    total += half * piece;
  }
  return total;
}

}  // namespace

QuadratureRule build_quadrature(const SparseGrid& grid,
                                const std::array<AxisWeight, 2>& axis) {
  QuadratureRule rule;
  for (const Subgrid& sg : grid.subgrids()) {
    for (const GridNode& nd : sg.nodes) {
      rule.level.push_back(sg.level);
      rule.index.push_back(nd.index);
      rule.x.push_back(nd.x);
      rule.value.push_back(nd.value);
    }
  }
  const int n = static_cast<int>(rule.value.size());
  if (n == 0) throw numeric_error("quadrature rule over an empty grid");

  // Surplus weights: per-axis exact integrals of basis * omega.
  std::map<std::tuple<int, int, int>, double> cache;
  std::vector<double> surplus_weight(n);
  for (int b = 0; b < n; ++b) {
    double W = 1.0;
    for (int k = 0; k < 2; ++k) {
      const std::tuple<int, int, int> key(k, rule.level[b][k],
                                          rule.index[b][k]);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache
                 .emplace(key, basis_weight_integral(rule.level[b][k],
                                                     rule.index[b][k], axis[k]))
                 .first;
      W *= it->second;
    }
    surplus_weight[b] = W;
  }

  // Convert weights on surpluses into weights on node values.  The map from
  // values to surpluses is triangular in acceptance order, so its transpose
  // is solved by back-substitution from the last node to the first; a node b
  // only interacts with later nodes whose subgrid level dominates b's.
  std::vector<double>& w = rule.value_weight;
  w.assign(n, 0.0);
  for (int b = n - 1; b >= 0; --b) {
    double acc = surplus_weight[b];
    for (int c = b + 1; c < n; ++c) {
      if (w[c] == 0.0) continue;
      if (rule.level[b][0] > rule.level[c][0] ||
          rule.level[b][1] > rule.level[c][1])
        continue;
      double psi = cardinal_basis(rule.level[b][0], rule.index[b][0],
                                  rule.x[c][0]);
      if (psi == 0.0) continue;
      psi *= cardinal_basis(rule.level[b][1], rule.index[b][1], rule.x[c][1]);
      if (psi == 0.0) continue;
      acc -= psi * w[c];
    }
    w[b] = acc;
  }

  rule.integral = 0.0;
  for (int b = 0; b < n; ++b) rule.integral += w[b] * rule.value[b];
  if (!(rule.integral > 0.0) || !std::isfinite(rule.integral))
    throw numeric_error("surrogate normalization integral is not positive");
  rule.mass.resize(n);
  for (int b = 0; b < n; ++b) rule.mass[b] = w[b] * rule.value[b] / rule.integral;
  return rule;
}

}  // namespace refgp
