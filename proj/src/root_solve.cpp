#include "mfbm/root_solve.hpp"

#include <cmath>
#include <limits>

namespace mfbm::numcore {

namespace {

double checked_eval(const std::function<double(double)>& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v))
    throw RootSolveError("solve_monotone: non-finite evaluation at x=" + std::to_string(x));
  return v;
}

}  // namespace

double solve_monotone(const std::function<double(double)>& g, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_monotone: tol must be positive");
  if (!(lo < hi)) throw std::invalid_argument("solve_monotone: empty bracket");
  double flo = checked_eval(g, lo);
  double fhi = checked_eval(g, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw RootSolveError("solve_monotone: no sign change on bracket [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");

  double x = lo, fx = flo;
  const int max_iter = 200;
  for (int it = 0; it < max_iter; ++it) {
    // Secant proposal from the bracket endpoints, bisection fallback.
    double mid = 0.5 * (lo + hi);
    double cand = mid;
    const double denom = fhi - flo;
    if (denom != 0.0) {
      double sec = lo - flo * (hi - lo) / denom;
      const double margin = 0.01 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin) cand = sec;
    }
    x = cand;
    fx = checked_eval(g, x);
    if (std::fabs(fx) <= tol) return x;
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() * (std::fabs(lo) + std::fabs(hi)))
      break;
  }
  // Bracket is at machine resolution; return the endpoint with smaller residual.
  return std::fabs(flo) < std::fabs(fhi) ? lo : hi;
}

}  // namespace mfbm::numcore
