#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace mfbm::numcore {

class RootSolveError : public std::runtime_error {
 public:
  explicit RootSolveError(const std::string& what) : std::runtime_error(what) {}
};

/// Root of a continuous, strictly monotone g on [lo, hi] with a sign change
/// at the endpoints.  Safeguarded bisection/secant hybrid: every iterate is
/// kept inside the current bracket, so convergence is guaranteed.
///
/// Stops when |g(x)| <= tol or the bracket has shrunk to machine resolution.
/// Throws RootSolveError when there is no sign change or g evaluates to a
/// non-finite value.
double solve_monotone(const std::function<double(double)>& g, double lo, double hi,
                      double tol = 1e-12);

}  // namespace mfbm::numcore
