#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfbm/spectrum.hpp"

using namespace mfbm;
using namespace mfbm::spectrum;
namespace num = std::numbers;

TEST_CASE("HurstParam validation and regimes") {
  CHECK_THROWS_AS(HurstParam(0.0), std::domain_error);
  CHECK_THROWS_AS(HurstParam(1.0), std::domain_error);
  CHECK_THROWS_AS(HurstParam(-0.3), std::domain_error);
  CHECK(HurstParam(0.3).regime() == HurstRegime::subhalf);
  CHECK(HurstParam(0.5).regime() == HurstRegime::half);
  CHECK(HurstParam(0.7).regime() == HurstRegime::superhalf);
  CHECK(HurstParam(0.25).alpha() == doctest::Approx(1.5));
  CHECK(HurstParam(0.5).kappa() == 1.0);  // Gamma(2) sin(pi/2), short-circuited
  // kappa = Gamma(2H+1) sin(pi H) against the standard library.
  for (double h : {0.2, 0.45, 0.8}) {
    CHECK(HurstParam(h).kappa() ==
          doctest::Approx(std::tgamma(2 * h + 1) * std::sin(num::pi * h)).epsilon(1e-13));
  }
}

TEST_CASE("fBm frequencies") {
  CHECK(nu_fbm(HurstParam(0.5), 1) == doctest::Approx(num::pi / 2).epsilon(1e-15));
  CHECK(nu_fbm(HurstParam(0.25), 1) == doctest::Approx(11.0 * num::pi / 24.0).epsilon(1e-14));
  CHECK(nu_fbm(HurstParam(0.75), 3) ==
        doctest::Approx(5.0 * num::pi / 2.0 - num::pi / 40.0).epsilon(1e-14));
  // strictly increasing in n
  const HurstParam h(0.35);
  for (int n = 1; n < 30; ++n) CHECK(nu_fbm(h, n + 1) > nu_fbm(h, n));
  CHECK_THROWS_AS(nu_fbm(h, 0), std::domain_error);
}

TEST_CASE("fBm and BM eigenvalues") {
  CHECK(lambda_bm(1) == doctest::Approx(4.0 / (num::pi * num::pi)).epsilon(1e-15));
  CHECK(lambda_bm(2) == doctest::Approx(4.0 / (9.0 * num::pi * num::pi)).epsilon(1e-15));
  CHECK(lambda_bm(10) == doctest::Approx(1.0 / (9.5 * 9.5 * num::pi * num::pi)).epsilon(1e-15));
  CHECK(lambda_fbm(HurstParam(0.5), 1) == doctest::Approx(lambda_bm(1)).epsilon(1e-14));
  for (int n : {1, 4, 9})
    CHECK(lambda_fbm(HurstParam(0.5), n) == doctest::Approx(lambda_bm(n)).epsilon(1e-14));
  // H=0.75, n=10 via an independent Gamma evaluation.
  const HurstParam h(0.75);
  const double nu10 = nu_fbm(h, 10);
  const double expected = std::sin(0.75 * num::pi) * std::exp(std::lgamma(2.5)) /
                          std::pow(nu10, 2.5);
  CHECK(lambda_fbm(h, 10) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("mixed frequencies and eigenvalues") {
  CHECK(nu_mixed(HurstParam(0.7), 2) == doctest::Approx(3.0 * num::pi / 2.0).epsilon(1e-15));
  CHECK(nu_mixed(HurstParam(0.3), 1) == doctest::Approx(0.475 * num::pi).epsilon(1e-14));
  CHECK(nu_mixed(HurstParam(0.5), 5) == doctest::Approx(4.5 * num::pi).epsilon(1e-15));

  // H = 1/2 short-circuits to the doubled Brownian spectrum, exactly.
  for (int n : {1, 2, 7, 50})
    CHECK(lambda_mixed(HurstParam(0.5), n).lambda == 2.0 * lambda_bm(n));
  CHECK(lambda_mixed(HurstParam(0.5), 1).lambda == doctest::Approx(0.8105695).epsilon(1e-7));

  // H=0.7, n=1: direct evaluation of 1/nu^2 + kappa nu^-(2H+1).
  const HurstParam h(0.7);
  const double nu = num::pi / 2.0;
  const double direct = 1.0 / (nu * nu) + std::sin(0.7 * num::pi) *
                                              std::exp(std::lgamma(2.4)) * std::pow(nu, -2.4);
  CHECK(lambda_mixed(h, 1).lambda == doctest::Approx(direct).epsilon(1e-13));

  // Mixed eigenvalues dominate the Brownian ones and decrease strictly.
  for (double hv : {0.2, 0.5, 0.85}) {
    const HurstParam hh(hv);
    double prev = 1e300;
    for (int n = 1; n <= 200; ++n) {
      const auto e = lambda_mixed(hh, n);
      CHECK(e.lambda > lambda_bm(n));
      CHECK(e.lambda < prev);
      CHECK(e.nu > 0.0);
      prev = e.lambda;
    }
  }
}

TEST_CASE("lambda_to_nu inverts the dispersion relation") {
  for (double hv : {0.3, 0.5, 0.7}) {
    const HurstParam h(hv);
    for (int n : {1, 3, 10, 100}) {
      const auto e = lambda_mixed(h, n);
      CHECK(lambda_to_nu(h, e.lambda) == doctest::Approx(e.nu).epsilon(1e-10));
    }
  }
  // lambda -> infinity pushes nu -> 0+, monotonically.
  const HurstParam h(0.7);
  double prev = lambda_to_nu(h, 1.0);
  for (double lam : {10.0, 1e3, 1e6}) {
    const double nu = lambda_to_nu(h, lam);
    CHECK(nu < prev);
    prev = nu;
  }
  CHECK(prev < 1e-2);
  CHECK_THROWS_AS(lambda_to_nu(h, 0.0), std::domain_error);
  CHECK_THROWS_AS(lambda_to_nu(h, -1.0), std::domain_error);
}

TEST_CASE("fourth-order expansion coefficients") {
  const HurstParam h(0.75);
  const auto e = mixed_expansion_coeffs(h);
  CHECK(e.a1 == doctest::Approx(1.0 / (num::pi * num::pi)).epsilon(1e-15));
  CHECK(e.a3 == doctest::Approx(0.1013212).epsilon(1e-6));
  const double a2 = std::exp(std::lgamma(2.5)) * std::sin(0.75 * num::pi) / std::pow(num::pi, 2.5);
  CHECK(e.a2 == doctest::Approx(a2).epsilon(1e-13));
  CHECK(e.a4 == doctest::Approx(a2 * 2.5 / 2.0).epsilon(1e-13));
  // Residual shrinks much faster than the last kept order.
  const double r10 = std::fabs(lambda_mixed(h, 10).lambda - e.eval(10, 0.75));
  const double r100 = std::fabs(lambda_mixed(h, 100).lambda - e.eval(100, 0.75));
  CHECK(r100 < r10 * std::pow(10.0, -(2 * 0.75 + 2.0)));
  CHECK_THROWS_AS(mixed_expansion_coeffs(HurstParam(0.3)), std::domain_error);
}

TEST_CASE("theta phase properties") {
  // alpha = 1 (H = 1/2): the phase vanishes identically.
  const HurstParam half(0.5);
  for (double t : {0.1, 1.0, 57.0}) CHECK(theta(t, 10.0, half) == 0.0);
  // Vanishes at infinity, carries the sign of sin((1-alpha) pi / 2).
  const HurstParam sup(0.75);   // alpha = 0.5 -> positive
  const HurstParam sub(0.25);   // alpha = 1.5 -> negative
  CHECK(theta(1e9, 100.0, sup) == doctest::Approx(0.0).epsilon(1e-12));
  for (double t : {0.3, 5.0, 300.0}) {
    CHECK(theta(t, 100.0, sup) > 0.0);
    CHECK(theta(t, 100.0, sub) < 0.0);
  }
  // Direct substitution at t = nu (t/nu = 1), alpha = 0.5.
  const double nu = 100.0;
  const double kappa = HurstParam(0.75).kappa();
  const double den = std::pow(nu, 0.5) / kappa * 2.0 + 1.0 + std::cos(0.25 * num::pi);
  CHECK(theta(nu, nu, sup) == doctest::Approx(std::atan(std::sin(0.25 * num::pi) / den)).epsilon(1e-13));
}

TEST_CASE("b_alpha integral and its limit") {
  const HurstParam half(0.5);
  CHECK(b_alpha_nu(5.0, half) == 0.0);
  CHECK_THROWS_AS(b_alpha_limit(HurstParam(0.75)), std::domain_error);
  CHECK(b_alpha_limit(half) == 0.0);

  // alpha = 1.5: limit constant sin(-pi/6)/sin(2 pi/3).
  const HurstParam sub(0.25);
  const double expected = std::sin(-num::pi / 6.0) / std::sin(2.0 * num::pi / 3.0);
  CHECK(b_alpha_limit(sub) == doctest::Approx(expected).epsilon(1e-14));
  // At nu = 1e4 the integral is within its proven O(nu^(1-alpha)) distance.
  const double b = b_alpha_nu(1e4, sub);
  CHECK(std::fabs(b - expected) <= 10.0 * std::pow(1e4, -0.5));
  // Super-half: b_alpha(nu) -> 0 at rate nu^(alpha-1).
  const HurstParam sup(0.75);
  CHECK(std::fabs(b_alpha_nu(1e4, sup)) <= 10.0 * std::pow(1e4, -0.5));
}
