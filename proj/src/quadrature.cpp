#include "mfbm/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace mfbm::numcore {

namespace {

// Gauss-Kronrod 7-15 nodes on [0,1] (abscissae are symmetric about 0).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

// 7-point Gauss weights paired with the odd Kronrod abscissae.
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double result_kronrod = kWgk[7] * fv[7];
  double result_gauss = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    result_kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) result_gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = result_kronrod * h;
  double err = std::fabs((result_kronrod - result_gauss) * h);
  // QUADPACK-style rescaling of the raw error estimate.
  double resabs = 0.0;
  for (int i = 0; i < 7; ++i) resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
  resabs = (resabs + kWgk[7] * std::fabs(fv[7])) * std::fabs(h);
  double mean = result_kronrod * 0.5;
  double resasc = kWgk[7] * std::fabs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::fabs(fv[i] - mean) + std::fabs(fv[14 - i] - mean));
  resasc *= std::fabs(h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  p.error = err;
  if (!std::isfinite(p.value))
    throw QuadratureError("integrate: non-finite integrand value in [" + std::to_string(a) +
                          ", " + std::to_string(b) + "]");
  return p;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  if (max_intervals < 1) throw std::invalid_argument("QuadratureSpec: max_intervals must be >= 1");
}

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::priority_queue<Panel> panels;
  panels.push(gauss_kronrod(f, a, b));
  double total = panels.top().value;
  double total_err = panels.top().error;
  int used = 1;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
    if (used >= spec.max_intervals)
      throw QuadratureError("integrate: tolerance not reached after " +
                            std::to_string(used) + " subdivisions (err=" +
                            std::to_string(total_err) + ")");
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at machine resolution; accept its estimate and stop
      // counting its error against the budget.
      total_err -= worst.error;
      Panel p = worst;
      p.error = 0.0;
      panels.push(p);
      continue;
    }
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++used;
  }
  return sign * total;
}

double integrate_improper(const Integrand& f, double lower, const QuadratureSpec& spec) {
  spec.validate();
  if (!(lower >= 0.0)) throw std::invalid_argument("integrate_improper: lower must be >= 0");
  if (!(spec.tail_decay > 1.0))
    throw std::invalid_argument("integrate_improper: tail_decay hint must exceed 1");

  const double split = std::max(1.0, lower);
  double head = 0.0;
  if (lower < split) head = integrate(f, lower, split, spec);

  // Tail [split, inf): tau = split * w^(-p), p = 1/(d-1), so that an exact
  // tau^-d tail becomes a constant in w on (0, 1].
  const double p = 1.0 / (spec.tail_decay - 1.0);
  const double T = split;
  auto mapped = [&](double w) {
    const double tau = T * std::pow(w, -p);
    const double fv = f(tau);
    if (fv == 0.0) return 0.0;  // avoid 0 * inf when the Jacobian overflows
    return fv * T * p * std::pow(w, -p - 1.0);
  };
  double tail = integrate(mapped, 0.0, 1.0, spec);
  return head + tail;
}

}  // namespace mfbm::numcore
