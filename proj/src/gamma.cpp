#include "mfbm/gamma.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mfbm::numcore {

namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's table).
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// log Gamma(x) for x >= 0.5 via the Lanczos sum.
double log_gamma_lanczos(double x) {
  const double z = x - 1.0;
  double sum = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) sum += kLanczosCoef[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;  // log(2*pi)/2
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  if (x >= 0.5) return log_gamma_lanczos(x);
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).  For x in (0, 1/2)
  // the sine factor is positive, so the logarithm is well defined.
  const double pi = std::numbers::pi;
  return std::log(pi / std::sin(pi * x)) - log_gamma_lanczos(1.0 - x);
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

}  // namespace mfbm::numcore
