#pragma once

#include <vector>

#include "mfbm/eigen_sequence.hpp"
#include "mfbm/fractional_series.hpp"
#include "mfbm/hurst.hpp"
#include "mfbm/quadrature.hpp"

namespace mfbm::smallball {

/// Power-law eigenvalue model phi(t) = sum_j c_j t^-d_j with c_j > 0 and
/// d_1 < d_2 < ... (each d_j > 1).  The mixed-process regimes use three
/// terms; the Brownian cross-check path uses one.
class PowerLawWeight {
 public:
  struct Term {
    double c;
    double d;
  };

  explicit PowerLawWeight(std::vector<Term> terms);

  std::size_t size() const { return terms_.size(); }
  /// 1-based accessors matching the formulas.
  double c(std::size_t j) const { return terms_.at(j - 1).c; }
  double d(std::size_t j) const { return terms_.at(j - 1).d; }
  double delta(std::size_t j) const { return d(j) - d(1); }

  double eval(double t) const;

 private:
  std::vector<Term> terms_;
};

/// Second-order frequency shift coefficient for H < 1/2, written in alpha:
/// q_alpha = 1 + (1-alpha)^2 / (2 (3-alpha)).
double q_alpha(const HurstParam& h);

/// Regime weight constants: for H > 1/2 the triple (1/pi^2, 2),
/// (kappa/pi^(3-a), 3-a), (1/pi^2, 3); for H < 1/2 the triple
/// (kappa/pi^(3-a), 3-a), (1/pi^2, 2), (c_1 (3-a) q_a / 2, 4-a).
/// H = 1/2 is rejected (single-term Brownian weight is a separate path).
PowerLawWeight weight_constants(const HurstParam& h);

/// Single-term Brownian weight (1/pi^2) t^-2 for the H = 1/2 cross-check path.
PowerLawWeight bm_weight();

/// Log-Laplace functionals of the weight model:
///   I0(u) = -1/2 int_1^inf log(1 + 2 u phi(t)) dt        (< 0)
///   I1(u) = -int_1^inf u phi / (1 + 2 u phi) dt          (< 0)
///   I2(u) = 2 int_1^inf (u phi / (1 + 2 u phi))^2 dt     (> 0)
struct IFunctions {
  double i0, i1, i2;
};

IFunctions weight_I(double u, const PowerLawWeight& w,
                    const numcore::QuadratureSpec& spec = {});

/// Discrete counterpart of the I functionals: sums over the stored
/// eigenvalues plus, when a tail model is attached, the integral of the same
/// integrand over (size + 1/2, inf).  The tail contributions are reported
/// separately.
struct DiscreteI {
  double i0, i1, i2;
  double tail_i0, tail_i1, tail_i2;
};

DiscreteI discrete_I(double u, const EigenSequence& eigs,
                     const numcore::QuadratureSpec& spec = {});

/// Evaluation of P(sum_n lambda_n Z_n <= r), Z_n iid chi^2_1.
/// The tilt u(r) solves I1(u) + u r = 0 (monotone bracketing); the
/// cumulative probability at the tilt is evaluated with the Lugannani-Rice
/// formula including the second-order cumulant correction, computed in log
/// space so it stays finite deep in the small-ball regime.  In the central
/// range (probability above ~1e-8, at least eight eigenvalues) the value is
/// refined to near machine accuracy by exact inversion of the
/// characteristic function; `method` records which path produced the value.
struct SaddlepointResult {
  double probability;      // clamped to (0, 1]
  double log_probability;  // log of the (unclamped) approximation
  double tilt;             // u(r)
  bool clamped;            // true when the raw value exceeded 1
  const char* method;      // "lugannani-rice" or "cf-inversion"
};

SaddlepointResult saddlepoint_probability(double r, const EigenSequence& eigs,
                                          const numcore::QuadratureSpec& spec = {});

/// gamma(H) = (5/4 - H + H^2) / (2H).
double gamma_exponent(const HurstParam& h);

/// Leading small-ball exponent: 1/8 for H >= 1/2; for H < 1/2 the fBm-type
/// constant H (kappa / ((2H+1)^(2H+1) sin(pi/(2H+1))^(2H+1)))^(1/(2H)).
double beta0(const HurstParam& h);

/// Closed gamma-function forms of the structural integrals
///   chi0(k) = int_0^inf t^(-k delta2) (t^d1 + 1)^-k dt        (k >= 1)
///   chi1(k) = int_0^inf t^(-k delta2) (t^d1 + 1)^-(k+1) dt    (k >= 0)
///   chi31   = int_0^inf (t^d1 + 1)^-2 dt
/// Requires k delta2 < 1; chi0 is NaN for k = 0.
struct ChiConstants {
  double chi0, chi1, chi31;
};

ChiConstants chi_constants(int k, const PowerLawWeight& w);

/// Series coefficients h_k, g_k built from the chi constants:
///   h_k = 1/2 (-c2/c1)^k (chi1_k - chi0_k) (2 c1)^((1 - k delta2)/d1)
///   g_k = 1/2 (-c2/c1)^k (d2 chi0_k - d1 chi1_k) (2 c1)^((1 - k delta2)/d1)
struct HgCoefficients {
  double hk, gk;
};

HgCoefficients hg_coefficients(int k, const PowerLawWeight& w);

/// Number of strata L: the largest integer with L |2H-1| < 1.  Equals
/// floor(1/|2H-1|) except when 1/|2H-1| is an integer m (within 1e-12), in
/// which case the boundary H belongs to the stratum with fewer terms and
/// L = m - 1.
int strata_count(const HurstParam& h);

/// Upper limit of the sum in the tilt root equation: the largest integer
/// with k |2H-1| < 1/2, with the same boundary convention.
int inner_term_count(const HurstParam& h);

/// Root y(r) of  y/y0 + sum_{k=1..K} h_k r^(k dr) y^(k dr + 1) = 1  as a
/// truncated series y0 + sum_j y_j r^(j dr), dr = |2H-1| / (d1 - 1).
/// Coefficients are obtained by matching powers; substituting the result
/// back into the equation leaves no residual through the requested order.
numcore::FractionalSeries y_series(const HurstParam& h, int order);

/// Full small-ball asymptotics record:
///   P(||B~||_2 <= eps) ~ eps^(gamma v 1) exp(-sum_k beta_k eps^(e_k)),
///   e_k = (k |2H-1| - 1) / (H ^ 1/2),  k = 0..L.
struct SmallBallAsymptotics {
  double h;
  double gamma;         // gamma(H)
  double prefactor;     // gamma(H) v 1
  int strata;           // L
  std::vector<double> betas;      // beta_0..beta_L
  std::vector<double> exponents;  // e_0..e_L (all negative)
};

SmallBallAsymptotics beta_sequence(const HurstParam& h);
SmallBallAsymptotics beta_sequence(const HurstParam& h, int strata);

/// (gamma v 1) log(eps) - sum_k beta_k eps^(e_k).  The multiplicative
/// constant hidden in "~" is not included.  H = 1/2 uses the scaled
/// Brownian cross-check path: log(eps) - (1/4) eps^-2.
double asymptotic_log_probability(const HurstParam& h, double eps);

/// Eigenvalue model for the mixed process suitable for discrete_I /
/// saddlepoint evaluation: optional numeric head, closed-form eigenvalues up
/// to `analytic_count` (default 10^4), and the power-law weight model as the
/// integrable tail beyond.
EigenSequence mixed_eigen_model(const HurstParam& h, std::size_t analytic_count = 10000,
                                const EigenSequence* numeric_head = nullptr);

}  // namespace mfbm::smallball
