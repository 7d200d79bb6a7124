#include "mfbm/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mfbm/gamma.hpp"
#include "mfbm/root_solve.hpp"

namespace mfbm::spectrum {

namespace {

constexpr double kPi = std::numbers::pi;

void require_index(int n) {
  if (n < 1) throw std::domain_error("eigen index must be >= 1, got " + std::to_string(n));
}

double nu_fbm_raw(double h, int n) {
  const double corr = (h - 0.5) * (h - 0.5) / (h + 0.5);
  return (n - 0.5) * kPi - corr * kPi / 2.0;
}

}  // namespace

double nu_fbm(const HurstParam& h, int n) {
  require_index(n);
  return nu_fbm_raw(h.h(), n);
}

double lambda_fbm(const HurstParam& h, int n) {
  require_index(n);
  return h.kappa() * std::pow(nu_fbm(h, n), -(2.0 * h.h() + 1.0));
}

double lambda_bm(int n) {
  require_index(n);
  const double nu = (n - 0.5) * kPi;
  return 1.0 / (nu * nu);
}

double nu_mixed(const HurstParam& h, int n) {
  require_index(n);
  return nu_fbm_raw(std::min(h.h(), 0.5), n);
}

MixedEigenResult lambda_mixed(const HurstParam& h, int n) {
  const double nu = nu_mixed(h, n);
  if (h.is_half()) {
    // B + B^(1/2) has the law of sqrt(2) B: exactly the doubled Brownian
    // spectrum, kept bit-identical to 2 lambda_bm.
    return MixedEigenResult{n, nu, 2.0 * lambda_bm(n)};
  }
  const double lambda = 1.0 / (nu * nu) + h.kappa() * std::pow(nu, -(2.0 * h.h() + 1.0));
  return MixedEigenResult{n, nu, lambda};
}

double lambda_to_nu(const HurstParam& h, double lambda, double tol) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda_to_nu: lambda must be positive");
  const double kappa = h.kappa();
  const double expo = h.alpha() - 3.0;  // = -(2H+1)
  auto dispersion = [&](double nu) {
    return 1.0 / (nu * nu) + kappa * std::pow(nu, expo) - lambda;
  };
  // dispersion decreases from +inf to -lambda; grow a bracket geometrically.
  double lo = 1.0, hi = 1.0;
  while (dispersion(lo) < 0.0) lo *= 0.25;
  while (dispersion(hi) > 0.0) hi *= 4.0;
  // The residual tolerance must scale with lambda itself, otherwise the flat
  // dispersion curve at large nu turns an absolute residual into a large
  // frequency error.
  return numcore::solve_monotone(dispersion, lo, hi, tol * lambda);
}

double MixedExpansion::eval(double n, double h) const {
  return a1 * std::pow(n, -2.0) + a2 * std::pow(n, -(2.0 * h + 1.0)) +
         a3 * std::pow(n, -3.0) + a4 * std::pow(n, -(2.0 * h + 2.0));
}

MixedExpansion mixed_expansion_coeffs(const HurstParam& h) {
  if (!(h.h() > 0.5))
    throw std::domain_error("mixed_expansion_coeffs: requires H > 1/2");
  const double alpha = h.alpha();
  const double kappa = h.kappa();
  const double pi_pow = std::pow(kPi, 3.0 - alpha);
  MixedExpansion e;
  e.a1 = 1.0 / (kPi * kPi);
  e.a2 = kappa / pi_pow;
  e.a3 = 1.0 / (kPi * kPi);
  e.a4 = kappa * (3.0 - alpha) / (2.0 * pi_pow);
  return e;
}

double theta(double t, double nu, const HurstParam& h) {
  if (!(t > 0.0) || !(nu > 0.0)) throw std::domain_error("theta: requires t > 0 and nu > 0");
  const double alpha = h.alpha();
  const double half_angle = 0.5 * (1.0 - alpha) * kPi;
  const double s = t / nu;
  const double den = std::pow(nu, 1.0 - alpha) / h.kappa() *
                         (std::pow(s, 3.0 - alpha) + std::pow(s, 1.0 - alpha)) +
                     std::pow(s, 3.0 - alpha) + std::cos(half_angle);
  // den > 0 for all alpha in (0,2), so the principal branch of arctan is the
  // continuous branch that vanishes as t -> infinity.
  return std::atan2(std::sin(half_angle), den);
}

double b_alpha_nu(double nu, const HurstParam& h, const numcore::QuadratureSpec& spec) {
  if (!(nu > 0.0)) throw std::domain_error("b_alpha_nu: requires nu > 0");
  if (h.is_half()) return 0.0;
  numcore::QuadratureSpec s = spec;
  s.tail_decay = 3.0 - h.alpha();  // theta(nu tau) ~ tau^-(3-alpha)
  auto integrand = [&](double tau) { return theta(nu * tau, nu, h); };
  return numcore::integrate_improper(integrand, 0.0, s) / kPi;
}

double b_alpha_limit(const HurstParam& h) {
  const double alpha = h.alpha();
  if (h.h() > 0.5)
    throw std::domain_error("b_alpha_limit: defined for H <= 1/2 (alpha >= 1)");
  if (h.is_half()) return 0.0;
  return std::sin(kPi / (3.0 - alpha) * 0.5 * (1.0 - alpha)) / std::sin(kPi / (3.0 - alpha));
}

}  // namespace mfbm::spectrum
