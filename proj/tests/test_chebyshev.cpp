#include <doctest.h>

#include <cmath>

#include "refgp/chebyshev.hpp"
#include "refgp/gauss_legendre.hpp"

using namespace refgp;

TEST_CASE("CGL points are ascending, nested, and span [0,1]") {
  const Eigen::VectorXd a = cgl_points(9);
  CHECK(a[0] == 0.0);
  CHECK(a[8] == 1.0);
  for (int i = 1; i < 9; ++i) CHECK(a[i] > a[i - 1]);
  const Eigen::VectorXd b = cgl_points(17);
  for (int i = 0; i < 9; ++i) CHECK(a[i] == b[2 * i]);
}

TEST_CASE("Chebyshev interpolant reproduces and integrates polynomials "
          "exactly") {
  auto poly = [](double x) { return ((2.0 * x - 3.0) * x + 0.5) * x - 0.25; };
  const Cheb1D c = Cheb1D::fit(-1.0, 2.0, poly, 9);
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.9, 2.0})
    CHECK(c(x) == doctest::Approx(poly(x)).epsilon(1e-13));
  // antiderivative: x^4/2 - x^3 + x^2/4 - x/4
  auto prim = [](double x) {
    return 0.5 * x * x * x * x - x * x * x + 0.25 * x * x - 0.25 * x;
  };
  CHECK(c.integral() == doctest::Approx(prim(2.0) - prim(-1.0)).epsilon(1e-13));
  CHECK(c.integral_upto(0.5) ==
        doctest::Approx(prim(0.5) - prim(-1.0)).epsilon(1e-12));
}

TEST_CASE("adaptive Chebyshev fit reaches the requested accuracy") {
  auto fn = [](double x) { return std::exp(-8.0 * x * x) + 0.1 * std::sin(5.0 * x); };
  const Cheb1D c = Cheb1D::fit_adaptive(-1.0, 1.5, fn, 1e-10);
  double max_err = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double x = -1.0 + 2.5 * i / 500.0;
    max_err = std::max(max_err, std::abs(c(x) - fn(x)));
  }
  CHECK(max_err < 1e-8);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1") {
  for (int n : {2, 5, 16, 64}) {
    const GlRule& r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == n);
    CHECK(r.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    // odd monomials integrate to 0, x^(2k) to 2/(2k+1), up to degree 2n-1
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
      CHECK(acc == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  CHECK(gl_integrate([](double x) { return x * x; }, 0.0, 3.0, 8) ==
        doctest::Approx(9.0).epsilon(1e-13));
}
