#pragma once

namespace mfbm::numcore {

/// Natural logarithm of the gamma function for x > 0.
///
/// Lanczos approximation (g = 7, 9 terms), combined with the reflection
/// formula below x = 1/2.  Relative accuracy of exp(log_gamma(x)) against
/// Gamma(x) is better than 1e-13 on [0.1, 30].
///
/// Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Gamma(x) = exp(log_gamma(x)), x > 0.
double gamma_fn(double x);

}  // namespace mfbm::numcore
