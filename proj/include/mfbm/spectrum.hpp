#pragma once

#include "mfbm/hurst.hpp"
#include "mfbm/quadrature.hpp"

namespace mfbm::spectrum {

/// One mixed-process eigenpair approximation: the frequency nu solving the
/// dispersion relation and the eigenvalue it induces.
struct MixedEigenResult {
  int index;      // n >= 1
  double nu;      // frequency, > 0, increasing in n
  double lambda;  // eigenvalue, > 0, decreasing in n
};

/// Second-order fBm frequency: nu_n(H) = (n - 1/2) pi - (H - 1/2)^2 / (H + 1/2) * pi/2,
/// dropping the O(1/n) residual.
double nu_fbm(const HurstParam& h, int n);

/// fBm eigenvalue through the frequency relation
/// lambda_n(H) = sin(pi H) Gamma(2H+1) / nu_n(H)^(2H+1).
double lambda_fbm(const HurstParam& h, int n);

/// Exact Brownian eigenvalue 1 / ((n - 1/2)^2 pi^2).
double lambda_bm(int n);

/// Mixed-process frequency nu_n(min(H, 1/2)); the O(n^-|2H-1|) residual is dropped.
double nu_mixed(const HurstParam& h, int n);

/// Mixed-process eigenvalue lambda = 1/nu^2 + kappa * nu^-(2H+1) at nu = nu_mixed.
MixedEigenResult lambda_mixed(const HurstParam& h, int n);

/// Inverse of the dispersion relation lambda = 1/nu^2 + kappa nu^(alpha-3):
/// the unique nu > 0 for a given lambda > 0 (monotone bracketing).  `tol` is
/// the dispersion residual tolerance relative to lambda.
double lambda_to_nu(const HurstParam& h, double lambda, double tol = 1e-15);

/// Coefficients (a1, a2, a3, a4) of the fourth-order eigenvalue expansion
/// lambda_n ~ a1 n^-2 + a2 n^-(2H+1) + a3 n^-3 + a4 n^-(2H+2), valid for H > 1/2.
struct MixedExpansion {
  double a1, a2, a3, a4;
  double eval(double n, double h) const;
};
MixedExpansion mixed_expansion_coeffs(const HurstParam& h);

/// Boundary phase theta(t); continuous in t, vanishing as t -> infinity,
/// with the sign of sin((1-alpha) pi / 2).
double theta(double t, double nu, const HurstParam& h);

/// b_alpha(nu) = (1/pi) * integral of theta(nu tau) over tau in (0, inf).
double b_alpha_nu(double nu, const HurstParam& h,
                  const numcore::QuadratureSpec& spec = {});

/// Large-nu limit of b_alpha(nu) for alpha in (1,2) (H < 1/2):
/// sin(pi/(3-alpha) * (1-alpha)/2) / sin(pi/(3-alpha)).  Zero at alpha = 1.
double b_alpha_limit(const HurstParam& h);

}  // namespace mfbm::spectrum
