#include <doctest.h>

#include <cmath>
#include <vector>

#include "levyfront/errors.hpp"
#include "levyfront/numerics.hpp"

using namespace levyfront;

TEST_CASE("gauss-legendre integrates polynomials to machine precision") {
  const auto& rule = GaussLegendre::order(4);
  const double value = rule.integrate([](double x) { return x * x * x * x * x * x * x; }, 0.0, 1.0);
  CHECK(value == doctest::Approx(0.125).epsilon(1e-14));

  const auto& rule16 = GaussLegendre::order(16);
  const double expv = rule16.integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(expv == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("gauss-legendre nodes are symmetric and weights positive") {
  for (int n : {2, 3, 8, 16, 32}) {
    const auto& rule = GaussLegendre::order(n);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(rule.weights()[static_cast<std::size_t>(i)] > 0.0);
      CHECK(rule.nodes()[static_cast<std::size_t>(i)] ==
            doctest::Approx(-rule.nodes()[static_cast<std::size_t>(n - 1 - i)]).epsilon(1e-15));
      wsum += rule.weights()[static_cast<std::size_t>(i)];
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("integral_power matches antiderivatives and stays stable near p = -1") {
  CHECK(integral_power(2.0, 1.0, 3.0) == doctest::Approx((27.0 - 1.0) / 3.0).epsilon(1e-15));
  CHECK(integral_power(-1.0, 0.5, 2.0) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(integral_power(-0.5, 0.0, 4.0) == doctest::Approx(4.0).epsilon(1e-15));

  const double near = integral_power(-1.0 + 1e-13, 0.5, 2.0);
  CHECK(near == doctest::Approx(std::log(4.0)).epsilon(1e-10));

  CHECK_THROWS_AS(integral_power(-1.5, 0.0, 1.0), RangeError);
  CHECK_THROWS_AS(integral_power(1.0, 2.0, 1.0), RangeError);
}

TEST_CASE("kahan summation keeps long sums of small terms accurate") {
  KahanSum sum;
  for (int i = 0; i < 10000000; ++i) sum.add(0.1);
  CHECK(std::abs(sum.value() - 1e6) < 1e-9);
}

TEST_CASE("periodic_frac wraps into the unit interval") {
  CHECK(periodic_frac(2.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(periodic_frac(-0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(periodic_frac(-3.0) == 0.0);
  const double huge = periodic_frac(1e300);
  CHECK(huge >= 0.0);
  CHECK(huge < 1.0);
}

TEST_CASE("fit_line recovers an exact affine relation") {
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(0.3 * i);
    y.push_back(3.0 * x.back() + 1.0);
  }
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.slope_stderr < 1e-6);
}

TEST_CASE("fit_line flags degenerate input") {
  CHECK_THROWS_AS(fit_line({1.0, 2.0}, {1.0, 2.0}), FitError);
  CHECK_THROWS_AS(fit_line({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), FitError);
}
