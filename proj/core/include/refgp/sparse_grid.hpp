#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

namespace refgp {

// ---- Nested one-dimensional levels on [0, 1] -------------------------------
//
// Level 0 is the single point {1/2}; level i >= 1 holds 2^i + 1 points
// x_j = (1 - cos(pi j / 2^i)) / 2.  Levels are nested: every point of level i
// appears in level i+1 with doubled index (bit-identical in floating point).

int level_size(int level);
double level_point(int level, int index);
const std::vector<double>& level_points(int level);

// Indices (within the full level point set) of the points that are new at
// this level relative to the previous one.
const std::vector<int>& hierarchical_indices(int level);

// Lagrange cardinal polynomial on the level-i point set, evaluated
// barycentrically; exact 0/1 at the points themselves.
double cardinal_basis(int level, int index, double x);

// All level-i cardinal polynomials at x in one barycentric pass.
std::vector<double> cardinal_row(int level, double x);

// ---- Adaptive two-dimensional sparse grid ----------------------------------

struct GridNode {
  std::array<int, 2> index;  // full per-dimension indices within the level
  std::array<double, 2> x;   // coordinates in [0,1]^2
  double value;              // f at the node
  double surplus;            // f minus the interpolant of the grid so far
  double error;              // |surplus| at insertion time
};

struct Subgrid {
  std::array<int, 2> level;
  std::vector<GridNode> nodes;
  double max_error() const;
};

// Dimension-adaptive interpolation of f over the unit square.  Subgrids are
// accepted greedily by largest node error; a subgrid becomes a refinement
// candidate once all its backward neighbors are accepted, and only nodes
// adjacent to a high-error parent node are evaluated.
class SparseGrid {
 public:
  using Func2d = std::function<double(const std::array<double, 2>&)>;

  struct Options {
    double tol = 1e-4;        // accept subgrids until the worst error is below
    double refine_tau = -1.0; // node-activation threshold (defaults to tol)
    int budget = 20000;       // hard cap on function evaluations
  };

  void build(const Func2d& f, const Options& options);

  double evaluate(const std::array<double, 2>& x) const;
  double operator()(double x0, double x1) const { return evaluate({x0, x1}); }

  // Accepted subgrids in acceptance order (the order quadrature weights use).
  const std::vector<Subgrid>& subgrids() const { return accepted_; }
  int node_count() const { return n_evals_; }
  bool budget_reached() const { return budget_hit_; }
  // Largest unresolved-candidate error when refinement stopped.
  double final_error() const { return final_error_; }

 private:
  bool is_point_neighbor(const std::array<int, 2>& backward_level,
                         const std::array<int, 2>& backward_index,
                         const std::array<int, 2>& level,
                         const std::array<int, 2>& index, int k) const;
  bool is_active(const std::array<int, 2>& level,
                 const std::array<int, 2>& index, double tau) const;
  void expand(const std::array<int, 2>& level, const Func2d& f, double tau,
              int budget);

  std::vector<Subgrid> accepted_;
  std::map<std::array<int, 2>, int> index_of_;
  std::map<std::array<int, 2>, Subgrid> fringe_;
  int n_evals_ = 0;
  bool budget_hit_ = false;
  double final_error_ = 0.0;
  double capped_error_ = 0.0;
};

}  // namespace refgp
