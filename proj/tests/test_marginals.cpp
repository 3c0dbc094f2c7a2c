#include <doctest.h>

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "refgp/csv.hpp"
#include "refgp/gauss_legendre.hpp"
#include "refgp/marginals.hpp"
#include "test_util.hpp"

using namespace refgp;
using refgp_test::data_path;

TEST_CASE("single-component t marginal matches the scalar t distribution") {
  const double df = 5.0, loc = 2.0, scale = 3.0;
  const MixtureMarginal m =
      MixtureMarginal::student_t({1.0}, {df}, {loc}, {scale});
  boost::math::students_t dist(df);
  for (double x : {-4.0, 0.0, 2.0, 3.5, 11.0}) {
    const double z = (x - loc) / scale;
    CHECK(m.cdf(x) == doctest::Approx(boost::math::cdf(dist, z)).epsilon(1e-10));
    CHECK(m.pdf(x) ==
          doctest::Approx(boost::math::pdf(dist, z) / scale).epsilon(1e-10));
  }
  CHECK(m.quantile(0.5) == doctest::Approx(loc).epsilon(1e-10));
  CHECK(m.mean() == doctest::Approx(loc).epsilon(1e-12));
  CHECK(m.variance() == doctest::Approx(scale * scale * df / (df - 2.0))
                            .epsilon(1e-10));
}

TEST_CASE("two-component mixtures combine linearly and invert correctly") {
  const MixtureMarginal m = MixtureMarginal::student_t(
      {0.3, 0.7}, {4.0, 12.0}, {-1.0, 2.0}, {0.5, 1.5});
  boost::math::students_t d1(4.0), d2(12.0);
  for (double x : {-2.0, 0.0, 1.0, 4.0}) {
    const double expect = 0.3 * boost::math::cdf(d1, (x + 1.0) / 0.5) +
                          0.7 * boost::math::cdf(d2, (x - 2.0) / 1.5);
    CHECK(m.cdf(x) == doctest::Approx(expect).epsilon(1e-10));
  }
  for (double p : {0.01, 0.2, 0.5, 0.8, 0.99})
    CHECK(m.cdf(m.quantile(p)) == doctest::Approx(p).epsilon(1e-9));
  // pdf integrates to ~1 (wide composite GL capture of the mixture)
  double total = 0.0;
  for (int seg = 0; seg < 80; ++seg) {
    const double a = -40.0 + seg, b = a + 1.0;
    total += gl_integrate([&](double x) { return m.pdf(x); }, a, b, 32);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("inverse-gamma marginal matches numeric integration of its density") {
  const double shape = 3.5, scale = 2.0;
  const MixtureMarginal m =
      MixtureMarginal::inverse_gamma({1.0}, {shape}, {scale});
  // density: scale^shape / Gamma(shape) t^-(shape+1) exp(-scale/t)
  auto pdf = [&](double t) {
    return std::exp(shape * std::log(scale) - std::lgamma(shape) -
                    (shape + 1.0) * std::log(t) - scale / t);
  };
  for (double t : {0.3, 0.8, 2.0, 6.0}) {
    double num = 0.0;
    for (int seg = 0; seg < 400; ++seg) {
      const double a = t * seg / 400.0, b = t * (seg + 1) / 400.0;
      if (b > 1e-12) num += gl_integrate(pdf, std::max(a, 1e-12), b, 16);
    }
    CHECK(m.cdf(t) == doctest::Approx(num).epsilon(1e-8));
    CHECK(m.pdf(t) == doctest::Approx(pdf(t)).epsilon(1e-10));
  }
  CHECK(m.cdf(-1.0) == 0.0);
  CHECK(m.mean() == doctest::Approx(scale / (shape - 1.0)).epsilon(1e-10));
  CHECK(m.quantile(0.25) < m.quantile(0.75));
}

TEST_CASE("posterior marginals from a fitted surrogate are proper") {
  const Dataset data = dataset_from_csv(data_path("synth1d.csv"));
  FitOptions opts;
  opts.tol = 1e-2;
  const PosteriorSurrogate s(data, 2.0, opts);

  SUBCASE("length-scale and noise marginals (gridded kind)") {
    for (const MixtureMarginal& m : {length_marginal(s), noise_marginal(s)}) {
      CHECK(m.kind() == MixtureMarginal::Kind::grid);
      CHECK(m.support_lo() > 0.0);
      CHECK(m.support_lo() < m.support_hi());
      // CDF is monotone from 0 to 1 across the support
      double prev = -1.0;
      for (int i = 0; i <= 200; ++i) {
        const double x = m.support_lo() * std::pow(m.support_hi() /
                                                       m.support_lo(),
                                                   i / 200.0);
        const double c = m.cdf(x);
        CHECK(c >= prev - 1e-12);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
        prev = c;
      }
      CHECK(m.cdf(m.support_lo()) == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(m.cdf(m.support_hi()) == doctest::Approx(1.0).epsilon(1e-9));
      // quantile inverts the CDF
      for (double p : {0.05, 0.5, 0.95})
        CHECK(m.cdf(m.quantile(p)) == doctest::Approx(p).epsilon(1e-7));
      // the density integrates to one over the support
      double total = 0.0;
      const int segs = 200;
      for (int i = 0; i < segs; ++i) {
        const double a = m.support_lo() +
                         (m.support_hi() - m.support_lo()) * i / segs;
        const double b = m.support_lo() +
                         (m.support_hi() - m.support_lo()) * (i + 1) / segs;
        total += gl_integrate([&](double x) { return m.pdf(x); }, a, b, 16);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
      // moments are deliberately unavailable for the gridded kind
      CHECK_THROWS_AS(m.mean(), config_error);
      CHECK_THROWS_AS(m.variance(), config_error);
    }
  }

  SUBCASE("signal variance marginal") {
    const MixtureMarginal m = sigma2_marginal(s);
    CHECK(m.kind() == MixtureMarginal::Kind::inverse_gamma);
    for (double p : {0.1, 0.5, 0.9})
      CHECK(m.cdf(m.quantile(p)) == doctest::Approx(p).epsilon(1e-8));
    CHECK(m.quantile(0.1) > 0.0);
  }

  SUBCASE("regression coefficient marginal") {
    const MixtureMarginal m = beta_marginal(s, 1);
    CHECK(m.kind() == MixtureMarginal::Kind::student_t);
    for (double p : {0.1, 0.5, 0.9})
      CHECK(m.cdf(m.quantile(p)) == doctest::Approx(p).epsilon(1e-8));
    CHECK(std::isfinite(m.mean()));
    CHECK_THROWS_AS(beta_marginal(s, 0), config_error);
    CHECK_THROWS_AS(beta_marginal(s, 2), config_error);
  }

  SUBCASE("quantile argument validation") {
    const MixtureMarginal m = sigma2_marginal(s);
    CHECK_THROWS_AS(m.quantile(0.0), config_error);
    CHECK_THROWS_AS(m.quantile(1.0), config_error);
  }
}
