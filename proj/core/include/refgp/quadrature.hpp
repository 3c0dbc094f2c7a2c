#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "refgp/sparse_grid.hpp"

namespace refgp {

// Integration weight function for one axis, polynomial of known degree on
// each piece of [0,1] (the pieces let Gauss-Legendre integrate it exactly).
struct AxisWeight {
  std::function<double(double)> omega;
  int degree = 3;
  std::vector<std::pair<double, double>> pieces = {{0.0, 0.5}, {0.5, 1.0}};
};

// Point rule on the grid nodes such that
//   sum_b value_weight[b] * f(x_b)  =  integral over [0,1]^2 of
//                                      (grid interpolant of f) * omega0 * omega1.
// Entries follow the grid's subgrid acceptance order, nodes in storage order.
struct QuadratureRule {
  std::vector<std::array<int, 2>> level;
  std::vector<std::array<int, 2>> index;
  std::vector<std::array<double, 2>> x;  // unit-square node coordinates
  std::vector<double> value;             // grid node values
  std::vector<double> value_weight;      // integration weights on values
  std::vector<double> mass;              // value_weight*value / integral; sums to 1
  double integral = 0.0;                 // sum_b value_weight[b]*value[b]

  std::size_t size() const { return value.size(); }
};

// Builds the rule for the given grid.  Throws numeric_error when the
// resulting integral is not strictly positive (mass normalization needs it).
QuadratureRule build_quadrature(const SparseGrid& grid,
                                const std::array<AxisWeight, 2>& axis);

}  // namespace refgp
