#include <doctest.h>

#include <cmath>

#include "nomahet/math.hpp"
#include "nomahet/rng.hpp"

using namespace nomahet;

TEST_CASE("regularized lower incomplete gamma against closed forms") {
  for (double x : {0.1, 0.7, 1.0, 2.5, 6.0, 15.0}) {
    CHECK(reg_lower_gamma(1.0, x) ==
          doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    CHECK(reg_lower_gamma(2.0, x) ==
          doctest::Approx(1.0 - std::exp(-x) * (1.0 + x)).epsilon(1e-12));
    CHECK(reg_lower_gamma(0.5, x) ==
          doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-10));
  }
  CHECK(reg_lower_gamma(3.0, 0.0) == 0.0);
}

TEST_CASE("noncentral chi-square CDF: central special case") {
  for (double x : {0.2, 1.0, 3.0, 10.0}) {
    CHECK(ncx2_cdf(x, 0.0) ==
          doctest::Approx(1.0 - std::exp(-0.5 * x)).epsilon(1e-12));
  }
  CHECK(ncx2_cdf(0.0, 5.0) == 0.0);
  CHECK(ncx2_cdf(-1.0, 5.0) == 0.0);
}

TEST_CASE("noncentral chi-square CDF against Monte Carlo") {
  RandomStream rng(31337);
  for (double lambda : {0.5, 5.0, 40.0, 2000.0, 2.0e6}) {
    const int n = 400000;
    const double delta = std::sqrt(lambda);
    // probe around the bulk of the distribution
    const double qs[3] = {lambda * 0.5 + 1.0, lambda + 2.0,
                          lambda + 2.0 + 2.0 * std::sqrt(2.0 * (2.0 + 2.0 * lambda))};
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
      const double a = delta + rng.normal();
      const double b = rng.normal();
      const double v = a * a + b * b;
      for (int j = 0; j < 3; ++j) counts[j] += v <= qs[j] ? 1 : 0;
    }
    for (int j = 0; j < 3; ++j) {
      const double mc = static_cast<double>(counts[j]) / n;
      CHECK(ncx2_cdf(qs[j], lambda) == doctest::Approx(mc).epsilon(0.02).scale(1.0));
    }
  }
}

TEST_CASE("quantile inverts the CDF") {
  for (double lambda : {0.0, 0.3, 2.0, 40.0, 500.0}) {
    for (double p : {0.01, 0.1, 0.5, 0.9, 0.99}) {
      const double q = ncx2_quantile(p, lambda);
      CHECK(ncx2_cdf(q, lambda) == doctest::Approx(p).epsilon(1e-6));
    }
  }
  CHECK(ncx2_quantile(0.25, 0.0) ==
        doctest::Approx(-2.0 * std::log1p(-0.25)).epsilon(1e-9));
}
