#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace mfbm::numcore {

/// Tolerances and limits for the adaptive quadrature routines.
///
/// `tail_decay` is the algebraic decay exponent d of the integrand as
/// tau -> infinity (|f(tau)| ~ tau^-d, d > 1).  It selects the change of
/// variables that flattens the tail of improper integrals; it does not
/// have to be exact, only a reasonable estimate.
struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 40000;
  double tail_decay = 2.0;

  void validate() const;
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval [a, b].
/// Throws QuadratureError when the interval budget is exhausted before the
/// requested tolerance is met.
double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Improper integral of f over [lower, infinity), lower >= 0, for integrands
/// with algebraic decay.  The range is split at max(1, lower) and the tail is
/// mapped to (0, 1] by tau = T * w^(-1/(d-1)) with d = spec.tail_decay, which
/// turns an exact power tail into a constant integrand.  Non-convergence is
/// reported via QuadratureError, never silently truncated.
double integrate_improper(const Integrand& f, double lower, const QuadratureSpec& spec = {});

}  // namespace mfbm::numcore
