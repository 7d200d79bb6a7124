#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfbm/fractional_series.hpp"
#include "mfbm/gamma.hpp"
#include "mfbm/quadrature.hpp"
#include "mfbm/root_solve.hpp"

using namespace mfbm::numcore;
namespace num = std::numbers;

TEST_CASE("log_gamma anchors and recursion") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(num::pi))).epsilon(1e-14));
  // Gamma(2.5) by product recursion from Gamma(1/2).
  const double g25 = 1.5 * 0.5 * std::sqrt(num::pi);
  CHECK(gamma_fn(2.5) == doctest::Approx(g25).epsilon(1e-13));
  CHECK(g25 == doctest::Approx(1.3293403882).epsilon(1e-9));
  for (double x : {0.1, 0.37, 1.9, 7.3, 15.0, 29.5}) {
    CHECK(log_gamma(x + 1.0) == doctest::Approx(std::log(x) + log_gamma(x)).epsilon(1e-12));
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-2.0), std::domain_error);
}

TEST_CASE("improper quadrature closed forms") {
  QuadratureSpec spec;
  spec.tail_decay = 4.0;
  CHECK(integrate_improper([](double t) { return 1.0 / ((t * t + 1) * (t * t + 1)); }, 0.0, spec) ==
        doctest::Approx(num::pi / 4).epsilon(1e-10));
  spec.tail_decay = 2.0;
  CHECK(integrate_improper([](double t) { return 1.0 / (t * t + 1); }, 0.0, spec) ==
        doctest::Approx(num::pi / 2).epsilon(1e-10));
  spec.tail_decay = 2.5;
  CHECK(integrate_improper([](double t) { return std::pow(t, -0.5) / (t * t + 1); }, 0.0, spec) ==
        doctest::Approx(num::pi / num::sqrt2).epsilon(1e-9));
}

TEST_CASE("quadrature error reporting") {
  QuadratureSpec tight;
  tight.max_intervals = 4;
  tight.tail_decay = 1.5;
  // Slowly decaying oscillation cannot meet the tolerance in four panels.
  CHECK_THROWS_AS(integrate_improper(
                      [](double t) { return std::cos(40.0 * t) / (1.0 + std::pow(t, 1.5)); }, 0.0,
                      tight),
                  QuadratureError);
  QuadratureSpec bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate([](double t) { return t; }, 0.0, 1.0, bad), std::invalid_argument);
  CHECK_THROWS_AS(integrate_improper([](double t) { return t; }, -1.0, QuadratureSpec{}),
                  std::invalid_argument);
}

TEST_CASE("solve_monotone basics") {
  CHECK(solve_monotone([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-13) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(solve_monotone([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-13) ==
        doctest::Approx(num::sqrt2).epsilon(1e-12));
  // Tilt equation for one unit eigenvalue: -u/(1+2u) + u r = 0 has the
  // positive root (1-r)/(2r).
  const double r = 0.1;
  const double root = solve_monotone(
      [r](double u) { return -u / (1.0 + 2.0 * u) + u * r; }, 0.5, 50.0, 1e-14);
  CHECK(root == doctest::Approx((1.0 - r) / (2.0 * r)).epsilon(1e-10));
  CHECK_THROWS_AS(solve_monotone([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                  RootSolveError);
  CHECK_THROWS_AS(solve_monotone([](double x) { return std::sqrt(x - 10.0); }, 0.0, 1.0, 1e-12),
                  RootSolveError);
}

TEST_CASE("fractional series arithmetic") {
  const FractionalSeries a(0.5, {1.0, 1.0, 0.0});
  const FractionalSeries b(0.5, {1.0, -1.0, 0.0});
  const auto prod = series_mul(a, b);
  CHECK(prod[0] == doctest::Approx(1.0));
  CHECK(prod[1] == doctest::Approx(0.0));
  CHECK(prod[2] == doctest::Approx(-1.0));

  const auto inv_sq = series_pow(a, -2.0);
  CHECK(inv_sq[0] == doctest::Approx(1.0));
  CHECK(inv_sq[1] == doctest::Approx(-2.0));
  CHECK(inv_sq[2] == doctest::Approx(3.0));

  // Coefficient of the first power of (y0 + y1 rho)^(2H-2).
  const double H = 0.7, y0 = 1.8, y1 = 0.35;
  const auto pw = series_pow(FractionalSeries(2 * H - 1, {y0, y1, 0.0}), 2 * H - 2.0);
  CHECK(pw[1] == doctest::Approx((2 * H - 2.0) * std::pow(y0, 2 * H - 3.0) * y1).epsilon(1e-14));

  const FractionalSeries other_step(0.3, {1.0, 1.0, 0.0});
  CHECK_THROWS_AS(series_mul(a, other_step), std::invalid_argument);
  const FractionalSeries neg(0.5, {-1.0, 1.0, 0.0});
  CHECK_THROWS_AS(series_pow(neg, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FractionalSeries(0.0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(FractionalSeries(0.5, {}), std::invalid_argument);
}

TEST_CASE("series pow roundtrip property") {
  const FractionalSeries a(0.4, {2.0, 0.3, -0.15, 0.07, 0.02});
  for (double p : {-2.0, -1.0, 0.5, -0.6}) {
    const auto back = series_pow(series_pow(a, p), 1.0 / p);
    for (std::size_t j = 0; j <= a.order(); ++j)
      CHECK(back[j] == doctest::Approx(a[j]).epsilon(1e-12));
  }
}

TEST_CASE("series eval uses truncated sum") {
  const FractionalSeries s(0.5, {1.0, 2.0, 3.0});
  const double r = 0.25;  // rho = r^0.5 = 0.5
  CHECK(s.eval(r) == doctest::Approx(1.0 + 2.0 * 0.5 + 3.0 * 0.25));
}
