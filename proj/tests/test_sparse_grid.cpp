#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "refgp/errors.hpp"
#include "refgp/rng.hpp"
#include "refgp/sparse_grid.hpp"

using namespace refgp;

TEST_CASE("level point sets are nested and sized 2^i + 1") {
  CHECK(level_size(0) == 1);
  CHECK(level_points(0)[0] == 0.5);
  for (int i = 1; i <= 6; ++i) {
    CHECK(level_size(i) == (1 << i) + 1);
    const auto& fine = level_points(i);
    CHECK(fine.front() == 0.0);
    CHECK(fine.back() == 1.0);
    if (i >= 2) {
      const auto& coarse = level_points(i - 1);
      for (int j = 0; j < level_size(i - 1); ++j)
        CHECK(coarse[j] == fine[2 * j]);  // bitwise nesting
    }
  }
}

TEST_CASE("cardinal polynomials are exact 0/1 at the points") {
  for (int level : {1, 3, 5}) {
    const int m = level_size(level);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        CHECK(cardinal_basis(level, i, level_point(level, j)) ==
              (i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("cardinal_row agrees with per-index evaluation") {
  Rng rng(3, 0);
  for (int level : {0, 1, 2, 4, 6}) {
    for (int rep = 0; rep < 10; ++rep) {
      const double x = rng.next_double();
      const std::vector<double> row = cardinal_row(level, x);
      REQUIRE(static_cast<int>(row.size()) == level_size(level));
      for (int j = 0; j < level_size(level); ++j)
        CHECK(row[j] == doctest::Approx(cardinal_basis(level, j, x))
                            .epsilon(1e-13));
    }
  }
}

TEST_CASE("adaptive grid reproduces polynomials to 1e-12") {
  auto poly = [](const std::array<double, 2>& x) {
    const double a = 2.0 * x[0] - 1.0, b = 2.0 * x[1] - 1.0;
    return a * a * a - 0.7 * a * b * b + 0.25 * b - 0.1 * a * a * b * b + 1.0;
  };
  SparseGrid grid;
  SparseGrid::Options opts;
  opts.tol = 1e-13;
  grid.build(poly, opts);

  Rng rng(17, 0);
  double max_err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::array<double, 2> x = {rng.next_double(), rng.next_double()};
    max_err = std::max(max_err, std::abs(grid.evaluate(x) - poly(x)));
  }
  CHECK(max_err < 1e-12);
}

TEST_CASE("interpolation is exact at accepted nodes") {
  auto f = [](const std::array<double, 2>& x) {
    return std::exp(-3.0 * (x[0] - 0.4) * (x[0] - 0.4) -
                    5.0 * (x[1] - 0.6) * (x[1] - 0.6));
  };
  SparseGrid grid;
  SparseGrid::Options opts;
  opts.tol = 1e-4;
  grid.build(f, opts);
  CHECK(grid.subgrids().size() > 3);
  for (const Subgrid& sg : grid.subgrids())
    for (const GridNode& nd : sg.nodes)
      CHECK(std::abs(grid.evaluate(nd.x) - nd.value) < 1e-10);
}

TEST_CASE("refinement terminates below tol on smooth functions") {
  auto f = [](const std::array<double, 2>& x) {
    return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]);
  };
  SparseGrid grid;
  SparseGrid::Options opts;
  opts.tol = 1e-6;
  grid.build(f, opts);
  CHECK_FALSE(grid.budget_reached());
  CHECK(grid.final_error() < 1e-6);

  Rng rng(23, 0);
  for (int i = 0; i < 100; ++i) {
    const std::array<double, 2> x = {rng.next_double(), rng.next_double()};
    CHECK(std::abs(grid.evaluate(x) - f(x)) < 1e-4);
  }
}

TEST_CASE("evaluation budget is honored") {
  auto f = [](const std::array<double, 2>& x) {
    return std::sin(40.0 * x[0]) * std::sin(37.0 * x[1]);
  };
  SparseGrid grid;
  SparseGrid::Options opts;
  opts.tol = 1e-10;
  opts.budget = 150;
  grid.build(f, opts);
  CHECK(grid.budget_reached());
  CHECK(grid.node_count() <= 150);
}

TEST_CASE("near-discontinuities cap at the deepest level instead of failing") {
  // A step off any dyadic point forces refinement forever along one axis;
  // the build must terminate gracefully and report the unresolved residual.
  auto f = [](const std::array<double, 2>& x) {
    return x[0] < 0.3701 ? 1.0 : 0.05;
  };
  SparseGrid grid;
  SparseGrid::Options opts;
  opts.tol = 1e-6;
  opts.budget = 20000;
  CHECK_NOTHROW(grid.build(f, opts));
  CHECK(grid.node_count() <= 20000);
  CHECK(grid.final_error() > 1e-6);  // honestly reported as unresolved
}

TEST_CASE("builds are deterministic") {
  auto f = [](const std::array<double, 2>& x) {
    return 1.0 / (1.0 + 25.0 * (x[0] - 0.5) * (x[0] - 0.5) +
                  9.0 * (x[1] - 0.3) * (x[1] - 0.3));
  };
  SparseGrid::Options opts;
  opts.tol = 1e-5;
  SparseGrid a, b;
  a.build(f, opts);
  b.build(f, opts);
  REQUIRE(a.subgrids().size() == b.subgrids().size());
  CHECK(a.node_count() == b.node_count());
  for (std::size_t s = 0; s < a.subgrids().size(); ++s) {
    const Subgrid& sa = a.subgrids()[s];
    const Subgrid& sb = b.subgrids()[s];
    REQUIRE(sa.nodes.size() == sb.nodes.size());
    CHECK(sa.level == sb.level);
    for (std::size_t i = 0; i < sa.nodes.size(); ++i) {
      CHECK(sa.nodes[i].index == sb.nodes[i].index);
      CHECK(sa.nodes[i].value == sb.nodes[i].value);
      CHECK(sa.nodes[i].surplus == sb.nodes[i].surplus);
    }
  }
}

TEST_CASE("options are validated") {
  SparseGrid grid;
  SparseGrid::Options bad;
  bad.tol = 0.0;
  auto f = [](const std::array<double, 2>&) { return 1.0; };
  CHECK_THROWS_AS(grid.build(f, bad), config_error);
  bad.tol = 1e-4;
  bad.budget = 0;
  CHECK_THROWS_AS(grid.build(f, bad), config_error);
}
