#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "refgp/rng.hpp"
#include "refgp/warp.hpp"

using namespace refgp;

TEST_CASE("monotone cubic interpolates its knots and stays monotone") {
  Rng rng(5, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 3 + static_cast<int>(rng.next_double() * 6);  // 3..8 knots
    std::vector<double> x(k), y(k);
    double xa = 0.0, ya = -5.0 * rng.next_double();
    for (int i = 0; i < k; ++i) {
      x[i] = xa;
      y[i] = ya;
      xa += 0.1 + rng.next_double();
      ya += 0.01 + 4.0 * rng.next_double();  // strictly increasing
    }
    const MonotoneCubic w(x, y);

    for (int i = 0; i < k; ++i)
      CHECK(w(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));

    // 10^4-point monotonicity scan across the knot span
    double prev = -std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (int j = 0; j <= 10000; ++j) {
      const double t = x.front() + (x.back() - x.front()) * j / 10000.0;
      const double v = w(t);
      if (v < prev) monotone = false;
      prev = v;
    }
    CHECK(monotone);

    // derivative matches finite differences and is nonnegative
    for (int j = 1; j < 50; ++j) {
      const double t = x.front() + (x.back() - x.front()) * j / 50.0;
      const double h = 1e-6 * (x.back() - x.front());
      const double fd = (w(t + h) - w(t - h)) / (2.0 * h);
      CHECK(w.derivative(t) == doctest::Approx(fd).epsilon(1e-5));
      CHECK(w.derivative(t) >= 0.0);
    }

    // inverse round-trips
    for (int j = 0; j <= 20; ++j) {
      const double t = x.front() + (x.back() - x.front()) * j / 20.0;
      CHECK(w.inverse(w(t)) == doctest::Approx(t).epsilon(1e-9));
    }
  }
}

TEST_CASE("the three-knot bracket warp hits the mode exactly") {
  const MonotoneCubic w({0.0, 0.5, 1.0}, {-3.25, 0.0, 7.5});
  CHECK(w(0.0) == doctest::Approx(-3.25));
  CHECK(w(0.5) == 0.0);
  CHECK(w(1.0) == doctest::Approx(7.5));
  CHECK(w.derivative(0.5) > 0.0);
}

TEST_CASE("bracket search finds the drop-target crossings") {
  // drop(t) = t^2, target 9: crossings at -3 and 3.
  const Bracket b =
      bracket_direction([](double t) { return t * t; }, 9.0);
  CHECK(b.lo == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(b.hi == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(b.lo < 0.0);
  CHECK(b.hi > 0.0);
}

TEST_CASE("bracket search clamps at tmax when the target is unreachable") {
  const Bracket b = bracket_direction([](double t) { return std::abs(t); },
                                      1e6, /*tmax=*/3.0);
  CHECK(b.lo == doctest::Approx(-3.0));
  CHECK(b.hi == doctest::Approx(3.0));
}

TEST_CASE("bracket search treats unevaluable regions as passed targets") {
  // Evaluations fail beyond |t| = 2 (the objective returns +inf); the
  // boundary becomes the bracket endpoint even though drop(2) < target.
  auto drop = [](double t) {
    if (std::abs(t) > 2.0) return std::numeric_limits<double>::infinity();
    return t * t;
  };
  const Bracket b = bracket_direction(drop, 9.0);
  CHECK(b.hi == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(b.lo == doctest::Approx(-2.0).epsilon(1e-6));
}
