#include <benchmark/benchmark.h>

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "refgp/dataset.hpp"
#include "refgp/posterior.hpp"
#include "refgp/rng.hpp"
#include "refgp/sparse_grid.hpp"
#include "refgp/surrogate.hpp"

namespace {

refgp::Dataset make_dataset(int n, int d, unsigned seed) {
  refgp::Rng rng(seed, 0);
  Eigen::MatrixXd loc(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) loc(i, k) = rng.next_double();
  Eigen::MatrixXd X = Eigen::MatrixXd::Ones(n, 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = std::sin(6.0 * loc(i, 0)) + 0.3 * rng.next_normal();
  return refgp::Dataset{loc, y, X};
}

void bm_posterior_value(benchmark::State& state) {
  const refgp::Dataset data = make_dataset(static_cast<int>(state.range(0)), 2, 12);
  const refgp::Posterior post(data, 1.0);
  const Eigen::Vector2d u(-0.7, -1.3);
  for (auto _ : state) benchmark::DoNotOptimize(post.value(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_posterior_value)->Arg(25)->Arg(50)->Arg(100)->Arg(200)->Complexity();

void bm_posterior_value_grad_hess(benchmark::State& state) {
  const refgp::Dataset data = make_dataset(static_cast<int>(state.range(0)), 2, 12);
  const refgp::Posterior post(data, 1.0);
  const Eigen::Vector2d u(-0.7, -1.3);
  double f;
  Eigen::Vector2d g;
  Eigen::Matrix2d h;
  for (auto _ : state) {
    post.value_grad_hess(u, f, g, h);
    benchmark::DoNotOptimize(f);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_posterior_value_grad_hess)->Arg(25)->Arg(50)->Arg(100)->Arg(200)->Complexity();

void bm_sparse_grid_build(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  auto f = [](const std::array<double, 2>& x) {
    const double a = x[0] - 0.42, b = x[1] - 0.58;
    return std::exp(-30.0 * a * a - 45.0 * b * b - 20.0 * a * b);
  };
  for (auto _ : state) {
    refgp::SparseGrid grid;
    refgp::SparseGrid::Options opts;
    opts.tol = tol;
    grid.build(f, opts);
    benchmark::DoNotOptimize(grid.node_count());
  }
}
BENCHMARK(bm_sparse_grid_build)->Arg(3)->Arg(5)->Arg(7);

void bm_surrogate_fit(benchmark::State& state) {
  const refgp::Dataset data = make_dataset(20, 1, 3);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    refgp::FitOptions opts;
    opts.tol = tol;
    const refgp::PosteriorSurrogate s(data, 2.0, opts);
    benchmark::DoNotOptimize(s.rule().size());
  }
}
BENCHMARK(bm_surrogate_fit)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
