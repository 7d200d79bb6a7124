#include "mfbm/validate.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "mfbm/gamma.hpp"
#include "mfbm/oracle.hpp"
#include "mfbm/quadrature.hpp"
#include "mfbm/root_solve.hpp"
#include "mfbm/sampler.hpp"
#include "mfbm/smallball.hpp"
#include "mfbm/spectrum.hpp"

namespace mfbm::validate {

namespace {

constexpr double kPi = std::numbers::pi;

// Least-squares slope of log(v) against log(n).
double loglog_slope(const std::vector<double>& n, const std::vector<double>& v) {
  const std::size_t m = n.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(n[i]);
    const double y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

// Full matrix spectra are expensive; share them between checks.
class OracleCache {
 public:
  const std::vector<double>& spectrum(double h, int n, oracle::KernelKind kind) {
    const auto key = std::make_tuple(h, n, static_cast<int>(kind));
    auto it = store_.find(key);
    if (it != store_.end()) return it->second;
    const HurstParam hp(h);
    const oracle::GridSpec grid(n);
    auto op = oracle::build_covariance(hp, grid, kind);
    auto ev = oracle::symmetric_eigenvalues_desc(op.matrix);
    return store_.emplace(key, std::move(ev)).first->second;
  }

  EigenSequence top(double h, int n, oracle::KernelKind kind, int count) {
    auto ev = spectrum(h, n, kind);
    ev.resize(count);
    return EigenSequence(std::move(ev));
  }

 private:
  std::map<std::tuple<double, int, int>, std::vector<double>> store_;
};

struct Ctx {
  Options opt;
  OracleCache cache;
  std::vector<CheckResult> results;

  double tol(double base) const { return base * opt.tol_scale; }

  void run(const std::string& name, const std::function<bool(std::ostringstream&)>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream details;
    bool pass = false;
    try {
      pass = fn(details);
    } catch (const std::exception& e) {
      details << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back({name, pass, details.str(), secs});
  }
};

// ---------------------------------------------------------------------------
// numcore

void check_numcore(Ctx& ctx) {
  using namespace numcore;

  ctx.run("numcore/log-gamma", [&](std::ostringstream& out) {
    const double sqrt_pi = std::sqrt(kPi);
    double worst = std::fabs(gamma_fn(1.0) - 1.0);
    worst = std::max(worst, std::fabs(gamma_fn(0.5) - sqrt_pi) / sqrt_pi);
    const double g25 = 1.5 * 0.5 * sqrt_pi;  // product recursion from Gamma(1/2)
    worst = std::max(worst, std::fabs(gamma_fn(2.5) - g25) / g25);
    // Recursion property Gamma(x+1) = x Gamma(x) across the working range.
    for (double x = 0.1; x < 30.0; x += 0.37) {
      const double lhs = log_gamma(x + 1.0);
      const double rhs = std::log(x) + log_gamma(x);
      worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
    }
    out << "worst rel err " << worst;
    return worst <= ctx.tol(1e-12);
  });

  ctx.run("numcore/quadrature-closed-forms", [&](std::ostringstream& out) {
    QuadratureSpec spec;
    spec.tail_decay = 4.0;
    const double a = integrate_improper([](double t) { return 1.0 / ((t * t + 1) * (t * t + 1)); }, 0.0, spec);
    spec.tail_decay = 2.0;
    const double b = integrate_improper([](double t) { return 1.0 / (t * t + 1); }, 0.0, spec);
    spec.tail_decay = 2.5;
    const double c = integrate_improper([](double t) { return std::pow(t, -0.5) / (t * t + 1); }, 0.0, spec);
    const double e1 = std::fabs(a - kPi / 4) / (kPi / 4);
    const double e2 = std::fabs(b - kPi / 2) / (kPi / 2);
    const double e3 = std::fabs(c - kPi / std::numbers::sqrt2) / (kPi / std::numbers::sqrt2);
    const double worst = std::max({e1, e2, e3});
    out << "rel errs " << e1 << " " << e2 << " " << e3;
    return worst <= ctx.tol(1e-8);
  });

  ctx.run("numcore/chi-gamma-forms", [&](std::ostringstream& out) {
    double worst = 0.0;
    for (auto [d1, delta2] : {std::pair{2.0, 0.5}, {2.5, 0.4}, {1.5, 0.45}}) {
      smallball::PowerLawWeight w({{1.0, d1}, {1.0, d1 + delta2}});
      for (int k = 1; k <= 2; ++k) {
        if (k * delta2 >= 1.0) continue;
        const auto chi = smallball::chi_constants(k, w);
        QuadratureSpec spec;
        spec.tail_decay = k * delta2 + (k + 1) * d1;
        const double q1 = integrate_improper(
            [&](double t) { return std::pow(t, -k * delta2) * std::pow(std::pow(t, d1) + 1.0, -(k + 1.0)); },
            0.0, spec);
        spec.tail_decay = k * delta2 + k * d1;
        const double q0 = integrate_improper(
            [&](double t) { return std::pow(t, -k * delta2) * std::pow(std::pow(t, d1) + 1.0, -static_cast<double>(k)); },
            0.0, spec);
        spec.tail_decay = 2 * d1;
        const double q31 = integrate_improper(
            [&](double t) { return std::pow(std::pow(t, d1) + 1.0, -2.0); }, 0.0, spec);
        worst = std::max(worst, std::fabs(chi.chi1 - q1) / q1);
        worst = std::max(worst, std::fabs(chi.chi0 - q0) / q0);
        worst = std::max(worst, std::fabs(chi.chi31 - q31) / q31);
      }
    }
    out << "worst rel err " << worst;
    return worst <= ctx.tol(1e-8);
  });

  ctx.run("numcore/series-roundtrip", [&](std::ostringstream& out) {
    const FractionalSeries a(0.4, {2.0, 0.3, -0.15, 0.07, 0.02});
    double worst = 0.0;
    for (double p : {-2.0, -1.0, 0.5, 2.0 * 0.7 - 2.0}) {
      const auto back = series_pow(series_pow(a, p), 1.0 / p);
      for (std::size_t j = 0; j <= a.order(); ++j)
        worst = std::max(worst, std::fabs(back[j] - a[j]));
    }
    // Spot checks: (1 + x)(1 - x) and the binomial series of (1 + x)^-2.
    const FractionalSeries one_plus(0.3, {1.0, 1.0, 0.0});
    const FractionalSeries one_minus(0.3, {1.0, -1.0, 0.0});
    const auto prod = series_mul(one_plus, one_minus);
    worst = std::max({worst, std::fabs(prod[0] - 1.0), std::fabs(prod[1]), std::fabs(prod[2] + 1.0)});
    const auto inv_sq = series_pow(one_plus, -2.0);
    worst = std::max({worst, std::fabs(inv_sq[0] - 1.0), std::fabs(inv_sq[1] + 2.0), std::fabs(inv_sq[2] - 3.0)});
    // Coefficient of the first power in (y0 + y1 rho)^(2H-2).
    const double h = 0.7, y0 = 2.1, y1 = -0.4;
    const auto pw = series_pow(FractionalSeries(2 * h - 1, {y0, y1, 0.0}), 2 * h - 2.0);
    worst = std::max(worst, std::fabs(pw[1] - (2 * h - 2.0) * std::pow(y0, 2 * h - 3.0) * y1));
    out << "worst coeff err " << worst;
    return worst <= ctx.tol(1e-12);
  });

  ctx.run("numcore/root-bracket-invariance", [&](std::ostringstream& out) {
    auto g = [](double x) { return x * x - 2.0; };
    const double r1 = solve_monotone(g, 1.0, 2.0, 1e-13);
    const double r2 = solve_monotone(g, 0.5, 10.0, 1e-13);
    const double r3 = solve_monotone(g, 1.2, 8.0, 1e-13);
    double worst = std::max(std::fabs(r1 - r2), std::fabs(r1 - r3));
    worst = std::max(worst, std::fabs(r1 - std::numbers::sqrt2));
    // Tilt equation for a single unit eigenvalue: root (1-r)/(2r) by hand.
    const double r = 0.1;
    auto tilt = [&](double u) { return -u / (1.0 + 2.0 * u) + u * r; };
    const double root = solve_monotone(tilt, 1.0, 100.0, 1e-14);
    worst = std::max(worst, std::fabs(root - (1.0 - r) / (2.0 * r)));
    out << "worst err " << worst;
    return worst <= ctx.tol(1e-9);
  });
}

// ---------------------------------------------------------------------------
// spectrum

void check_spectrum(Ctx& ctx) {
  using namespace spectrum;

  ctx.run("spectrum/eigenvalue-monotone", [&](std::ostringstream& out) {
    for (double hv : {0.3, 0.5, 0.7}) {
      const HurstParam h(hv);
      double prev = lambda_mixed(h, 1).lambda;
      for (int n = 2; n <= 10000; ++n) {
        const double cur = lambda_mixed(h, n).lambda;
        if (!(cur < prev)) {
          out << "not decreasing at H=" << hv << " n=" << n;
          return false;
        }
        prev = cur;
      }
    }
    out << "strictly decreasing for n <= 1e4";
    return true;
  });

  ctx.run("spectrum/lambda-nu-roundtrip", [&](std::ostringstream& out) {
    double worst = 0.0;
    for (double hv : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      const HurstParam h(hv);
      for (int n = 1; n <= 100; ++n) {
        const auto e = lambda_mixed(h, n);
        worst = std::max(worst, std::fabs(lambda_to_nu(h, e.lambda) - e.nu) / e.nu);
      }
    }
    out << "worst rel err " << worst;
    return worst <= ctx.tol(1e-10);
  });

  ctx.run("spectrum/half-reduction-exact", [&](std::ostringstream& out) {
    const HurstParam h(0.5);
    for (int n = 1; n <= 100; ++n) {
      if (lambda_mixed(h, n).lambda != 2.0 * lambda_bm(n)) {
        out << "mismatch at n=" << n;
        return false;
      }
    }
    out << "lambda_mixed == 2 lambda_bm exactly";
    return true;
  });

  ctx.run("spectrum/b-alpha-rates", [&](std::ostringstream& out) {
    const int jmax = ctx.opt.quick ? 7 : 10;
    // alpha = 1.5 (H = 0.25): |b(nu) - b_inf| nu^(alpha-1) bounded.
    const HurstParam h_sub(0.25);
    const double b_inf = b_alpha_limit(h_sub);
    std::vector<double> scaled_sub, scaled_sup;
    for (int j = 0; j <= jmax; ++j) {
      const double nu = 10.0 * std::pow(2.0, j);
      scaled_sub.push_back(std::fabs(b_alpha_nu(nu, h_sub) - b_inf) * std::pow(nu, 0.5));
    }
    // alpha = 0.5 (H = 0.75): b(nu) nu^(1-alpha) bounded, limit is zero.
    const HurstParam h_sup(0.75);
    for (int j = 0; j <= jmax; ++j) {
      const double nu = 10.0 * std::pow(2.0, j);
      scaled_sup.push_back(std::fabs(b_alpha_nu(nu, h_sup)) * std::pow(nu, 0.5));
    }
    const double r_sub = *std::max_element(scaled_sub.begin(), scaled_sub.end()) / median(scaled_sub);
    const double r_sup = *std::max_element(scaled_sup.begin(), scaled_sup.end()) / median(scaled_sup);
    out << "max/median sub=" << r_sub << " sup=" << r_sup;
    return r_sub <= ctx.tol(2.0) && r_sup <= ctx.tol(2.0);
  });

  ctx.run("spectrum/fourth-order-expansion", [&](std::ostringstream& out) {
    const HurstParam h(0.75);
    const auto exp4 = mixed_expansion_coeffs(h);
    std::vector<double> ns, res;
    for (int n = 10; n <= 200; n += 5) {
      const double lam = lambda_mixed(h, n).lambda;
      ns.push_back(n);
      res.push_back(std::fabs(lam - exp4.eval(n, h.h())));
    }
    const double slope = loglog_slope(ns, res);
    out << "residual log-log slope " << slope;
    return slope <= -(2.0 * h.h() + 2.0) + 0.2;
  });

  ctx.run("spectrum/residual-order", [&](std::ostringstream& out) {
    // The raw Nystrom error would mask the closed-form residual; extrapolate
    // the oracle to the continuum first (fine discretization).
    const int base = ctx.opt.quick ? 250 : 1000;
    bool ok = true;
    for (double hv : {0.3, 0.7}) {
      const HurstParam h(hv);
      const auto eigs = oracle::extrapolated_eigenvalues(h, base, oracle::KernelKind::mixed, 55);
      const double power = std::min(2.0 * hv + 1.0, 2.0) + std::fabs(2.0 * hv - 1.0);
      std::vector<double> ns, scaled;
      for (int n = 5; n <= 50; ++n) {
        const double diff = std::fabs(eigs.at(n) - lambda_mixed(h, n).lambda);
        ns.push_back(n);
        scaled.push_back(diff * std::pow(n, power));
      }
      const double slope = loglog_slope(ns, scaled);
      out << "H=" << hv << " scaled-residual slope " << slope << "; ";
      ok = ok && slope <= 0.3;  // bounded: no growth trend
    }
    return ok;
  });
}

// ---------------------------------------------------------------------------
// oracle

void check_oracle(Ctx& ctx) {
  using oracle::KernelKind;

  ctx.run("oracle/kernel-values", [&](std::ostringstream& out) {
    const HurstParam h(0.62);
    double worst = std::fabs(oracle::kernel_value(h, KernelKind::bm, 1.0, 1.0) - 1.0);
    worst = std::max(worst, std::fabs(oracle::kernel_value(h, KernelKind::mixed, 1.0, 1.0) - 2.0));
    const HurstParam half(0.5);
    for (double s : {0.2, 0.7})
      for (double t : {0.4, 0.9})
        worst = std::max(worst, std::fabs(oracle::kernel_value(half, KernelKind::mixed, s, t) -
                                          2.0 * std::min(s, t)));
    out << "worst err " << worst;
    return worst <= ctx.tol(1e-14);
  });

  ctx.run("oracle/closed-form-agreement", [&](std::ostringstream& out) {
    const int N = ctx.opt.quick ? 500 : 2000;
    // Brownian: exact formula.
    const auto bm = ctx.cache.top(0.5, N, KernelKind::bm, 10);
    const double e_bm = std::fabs(bm.at(1) - 4.0 / (kPi * kPi)) / (4.0 / (kPi * kPi));
    // Mixed at H = 1/2: doubled Brownian spectrum.
    const auto mixed_half = ctx.cache.top(0.5, N, KernelKind::mixed, 10);
    const double lam3 = 2.0 / (2.5 * 2.5 * kPi * kPi);
    const double e_mixed = std::fabs(mixed_half.at(3) - lam3) / lam3;
    // fBm at H = 0.75 against the second-order asymptotics, n = 5..20.
    const HurstParam h(0.75);
    const auto fbm = ctx.cache.top(0.75, N, KernelKind::fbm, 20);
    double e_fbm = 0.0;
    for (int n = 5; n <= 20; ++n)
      e_fbm = std::max(e_fbm, std::fabs(fbm.at(n) - spectrum::lambda_fbm(h, n)) / fbm.at(n));
    out << "bm " << e_bm << ", mixed(1/2) " << e_mixed << ", fbm sup " << e_fbm;
    return e_bm <= ctx.tol(1e-3) && e_mixed <= ctx.tol(1e-3) && e_fbm <= ctx.tol(1e-2);
  });

  ctx.run("oracle/grid-refinement", [&](std::ostringstream& out) {
    bool ok = true;
    for (double hv : {0.3, 0.7}) {
      for (int n : {1, 3}) {
        const double a = ctx.cache.spectrum(hv, 200, KernelKind::mixed)[n - 1];
        const double b = ctx.cache.spectrum(hv, 400, KernelKind::mixed)[n - 1];
        const double c = ctx.cache.spectrum(hv, 800, KernelKind::mixed)[n - 1];
        const double d1 = std::fabs(a - b), d2 = std::fabs(b - c);
        out << "H=" << hv << " n=" << n << " ratio " << d1 / d2 << "; ";
        ok = ok && d2 <= d1 / 1.9;
      }
    }
    return ok;
  });

  ctx.run("oracle/positivity", [&](std::ostringstream& out) {
    std::vector<std::pair<double, int>> cases = {{0.3, 500}, {0.7, 500}};
    if (!ctx.opt.quick) {
      cases.push_back({0.3, 2000});
      cases.push_back({0.7, 4000});
    }
    for (auto [hv, n] : cases) {
      const auto& ev = ctx.cache.spectrum(hv, n, KernelKind::mixed);
      const double smallest = ev.back();
      out << "H=" << hv << " N=" << n << " min " << smallest << "; ";
      if (!(smallest > 0.0)) return false;
    }
    return true;
  });

  ctx.run("oracle/weyl-top-eigenvalue", [&](std::ostringstream& out) {
    bool ok = true;
    for (double hv : {0.3, 0.7}) {
      const double mixed = ctx.cache.spectrum(hv, 500, KernelKind::mixed)[0];
      const double bm = ctx.cache.spectrum(hv, 500, KernelKind::bm)[0];
      const double fbm = ctx.cache.spectrum(hv, 500, KernelKind::fbm)[0];
      out << "H=" << hv << " " << mixed << " <= " << bm + fbm << "; ";
      ok = ok && mixed <= bm + fbm + 1e-12;
    }
    return ok;
  });

  ctx.run("oracle/li-distortion", [&](std::ostringstream& out) {
    std::vector<double> vals(10);
    for (int n = 1; n <= 10; ++n) vals[n - 1] = spectrum::lambda_bm(n);
    EigenSequence target(vals);
    for (double& v : vals) v *= 2.0;
    EigenSequence doubled(vals);
    const auto same = oracle::li_distortion(target, target);
    const auto twice = oracle::li_distortion(target, doubled);
    double worst = std::fabs(same.value - 1.0);
    worst = std::max(worst, std::fabs(twice.value - 1024.0) / 1024.0);
    // Mixed eigenvalues against the fourth-order expansion model.
    const HurstParam h(0.75);
    const auto exp4 = spectrum::mixed_expansion_coeffs(h);
    const int m = ctx.opt.quick ? 500 : 2000;
    std::vector<double> tv(m), mv(m);
    for (int n = 1; n <= m; ++n) {
      tv[n - 1] = spectrum::lambda_mixed(h, n).lambda;
      mv[n - 1] = exp4.eval(n, h.h());
    }
    const auto full = oracle::li_distortion(EigenSequence(tv), EigenSequence(mv));
    tv.resize(m / 2);
    mv.resize(m / 2);
    const auto half = oracle::li_distortion(EigenSequence(tv), EigenSequence(mv));
    const double cauchy = std::fabs(full.value - half.value) / full.value;
    out << "identity err " << worst << ", converged=" << full.converged << ", cauchy gap "
        << cauchy;
    return worst <= ctx.tol(1e-12) && full.converged && cauchy <= ctx.tol(2e-3);
  });
}

// ---------------------------------------------------------------------------
// smallball

void check_smallball(Ctx& ctx) {
  using namespace smallball;

  ctx.run("smallball/weight-constants", [&](std::ostringstream& out) {
    const auto w_sup = weight_constants(HurstParam(0.75));
    const auto w_sub = weight_constants(HurstParam(0.25));
    double worst = std::fabs(w_sup.d(1) - 2.0);
    worst = std::max(worst, std::fabs(w_sup.d(2) - 2.5));
    worst = std::max(worst, std::fabs(w_sup.d(3) - 3.0));
    worst = std::max(worst, std::fabs(w_sub.d(1) - 1.5));
    worst = std::max(worst, std::fabs(w_sub.d(2) - 2.0));
    worst = std::max(worst, std::fabs(w_sub.d(3) - 2.5));
    for (double hv : {0.2, 0.35, 0.6, 0.8, 0.95}) {
      const auto w = weight_constants(HurstParam(hv));
      worst = std::max(worst, std::fabs(w.d(3) - w.d(1) - 1.0));  // delta_3 = 1
    }
    out << "worst err " << worst;
    return worst <= ctx.tol(1e-14);
  });

  ctx.run("smallball/chi-crossval", [&](std::ostringstream& out) {
    double worst = 0.0;
    for (double hv : {0.25, 0.3, 0.7, 0.8}) {
      const HurstParam h(hv);
      const auto w = weight_constants(h);
      const double delta2 = w.delta(2);
      for (int k = 1; k <= 2; ++k) {
        if (k * delta2 >= 1.0) continue;
        const auto chi = chi_constants(k, w);
        numcore::QuadratureSpec spec;
        const double d1 = w.d(1);
        spec.tail_decay = k * delta2 + (k + 1) * d1;
        const double q1 = numcore::integrate_improper(
            [&](double t) { return std::pow(t, -k * delta2) * std::pow(std::pow(t, d1) + 1.0, -(k + 1.0)); },
            0.0, spec);
        spec.tail_decay = k * delta2 + k * d1;
        const double q0 = numcore::integrate_improper(
            [&](double t) { return std::pow(t, -k * delta2) * std::pow(std::pow(t, d1) + 1.0, -static_cast<double>(k)); },
            0.0, spec);
        spec.tail_decay = 2.0 * d1;
        const double q31 = numcore::integrate_improper(
            [&](double t) { return std::pow(std::pow(t, d1) + 1.0, -2.0); }, 0.0, spec);
        worst = std::max(worst, std::fabs(chi.chi1 - q1) / q1);
        worst = std::max(worst, std::fabs(chi.chi0 - q0) / q0);
        worst = std::max(worst, std::fabs(chi.chi31 - q31) / q31);
      }
    }
    out << "worst rel err " << worst;
    return worst <= ctx.tol(1e-8);
  });

  ctx.run("smallball/I-functions", [&](std::ostringstream& out) {
    bool ok = true;
    // Vanish as u -> 0+.
    for (const auto& w : {weight_constants(HurstParam(0.3)), weight_constants(HurstParam(0.7)), bm_weight()}) {
      const auto small = weight_I(1e-8, w);
      ok = ok && std::fabs(small.i0) < 1e-6 && std::fabs(small.i1) < 1e-6 && std::fabs(small.i2) < 1e-6;
      for (double u : {1.0, 100.0}) {
        const auto v = weight_I(u, w);
        ok = ok && v.i0 < 0.0 && v.i1 < 0.0 && v.i2 > 0.0;
      }
    }
    // Brownian leading order of I2.
    const auto bw = bm_weight();
    const double u_big = 1e6;
    const auto v = weight_I(u_big, bw);
    const auto chi = chi_constants(0, bw);
    const double lead = 0.5 * chi.chi31 * std::sqrt(2.0 * bw.c(1) * u_big);
    const double e_i2 = std::fabs(v.i2 - lead) / lead;
    // H = 3/4 weight: I1(u)/sqrt(u) -> -1/(2 sqrt(2)).
    const auto w34 = weight_constants(HurstParam(0.75));
    const auto v34 = weight_I(u_big, w34);
    const double lim = -1.0 / (2.0 * std::numbers::sqrt2);
    const double e_i1 = std::fabs(v34.i1 / std::sqrt(u_big) - lim) / std::fabs(lim);
    out << "I2 leading err " << e_i2 << ", I1 limit err " << e_i1;
    return ok && e_i2 <= 0.05 && e_i1 <= 0.05;
  });

  ctx.run("smallball/discrete-I", [&](std::ostringstream& out) {
    // Single eigenvalue: closed forms.
    EigenSequence one(std::vector<double>{1.0});
    double worst = 0.0;
    for (double u : {0.3, 1.0, 7.0}) {
      const auto v = discrete_I(u, one);
      worst = std::max(worst, std::fabs(v.i0 + 0.5 * std::log1p(2.0 * u)));
      worst = std::max(worst, std::fabs(v.i1 + u / (1.0 + 2.0 * u)));
      const double q = u / (1.0 + 2.0 * u);
      worst = std::max(worst, std::fabs(v.i2 - 2.0 * q * q));
    }
    // Scaling identity I_j(u; 2 lambda) = I_j(2u; lambda).
    std::vector<double> bmv(50);
    for (int n = 1; n <= 50; ++n) bmv[n - 1] = spectrum::lambda_bm(n);
    EigenSequence bm_seq(bmv);
    for (double& v : bmv) v *= 2.0;
    EigenSequence bm2(bmv);
    for (double u : {0.5, 3.0}) {
      const auto lhs = discrete_I(u, bm2);
      const auto rhs = discrete_I(2.0 * u, bm_seq);
      worst = std::max({worst, std::fabs(lhs.i0 - rhs.i0), std::fabs(lhs.i1 - rhs.i1),
                        std::fabs(lhs.i2 - rhs.i2)});
    }
    // Tail model correction: short and long truncations agree.
    auto make_bm = [](std::size_t m) {
      std::vector<double> v(m);
      for (std::size_t n = 1; n <= m; ++n) v[n - 1] = spectrum::lambda_bm(static_cast<int>(n));
      EigenSequence seq(v);
      seq.set_tail([](double t) {
        const double nu = (t - 0.5) * kPi;
        return 1.0 / (nu * nu);
      }, 2.0);
      return seq;
    };
    const auto short_seq = make_bm(100);
    const auto long_seq = make_bm(10000);
    double tail_gap = 0.0;
    for (double u : {1.0, 50.0}) {
      const auto a = discrete_I(u, short_seq);
      const auto b = discrete_I(u, long_seq);
      tail_gap = std::max({tail_gap, std::fabs(a.i0 - b.i0) / std::fabs(b.i0),
                           std::fabs(a.i1 - b.i1) / std::fabs(b.i1),
                           std::fabs(a.i2 - b.i2) / std::fabs(b.i2)});
    }
    out << "closed-form err " << worst << ", truncation gap " << tail_gap;
    return worst <= ctx.tol(1e-12) && tail_gap <= ctx.tol(1e-4);
  });

  ctx.run("smallball/series-self-consistency", [&](std::ostringstream& out) {
    double worst = 0.0;
    for (double hv : {0.55, 0.6, 0.7, 0.8, 0.9, 0.3, 0.35, 0.4, 0.45}) {
      const HurstParam h(hv);
      const int L = strata_count(h);
      const auto y = y_series(h, L);
      // Rebuild the root-equation residual from public pieces.
      auto res = y;
      res *= 1.0 / y[0];
      res[0] -= 1.0;
      const auto w = weight_constants(h);
      for (int k = 1; k <= inner_term_count(h); ++k) {
        if (static_cast<std::size_t>(k) > y.order()) break;
        const double hk = hg_coefficients(k, w).hk;
        auto term = numcore::series_pow(y, k * y.step() + 1.0);
        res += hk * numcore::series_shift(term, static_cast<std::size_t>(k));
      }
      for (std::size_t j = 0; j <= res.order(); ++j) worst = std::max(worst, std::fabs(res[j]));
    }
    out << "worst residual coeff " << worst;
    return worst <= ctx.tol(1e-12);
  });

  ctx.run("smallball/beta1-closed-form", [&](std::ostringstream& out) {
    double worst = 0.0;
    for (double hv : {0.76, 0.8, 0.85, 0.9, 0.95}) {
      const HurstParam h(hv);
      const auto seq = beta_sequence(h);
      const double closed = std::pow(2.0, 2.0 * hv - 4.0) * numcore::gamma_fn(2.0 * hv + 1.0);
      worst = std::max(worst, std::fabs(seq.betas.at(1) - closed));
    }
    out << "worst err " << worst;
    return worst <= ctx.tol(1e-10);
  });

  ctx.run("smallball/worked-example-strata2", [&](std::ostringstream& out) {
    // H in [2/3, 3/4): two strata; coefficients assembled by hand from the
    // y0, y1, y2 recursion and the eta/xi expansions.
    const HurstParam h(0.7);
    const auto w = weight_constants(h);
    const double h1 = hg_coefficients(1, w).hk;
    const double g1 = hg_coefficients(1, w).gk;
    const double g2 = hg_coefficients(2, w).gk;
    const double H = h.h();
    const double y0 = 2.0 * std::numbers::sqrt2;
    const double y1 = -h1 * std::pow(y0, 2.0 * H + 1.0);
    const double y2 = -2.0 * H * h1 * std::pow(y0, 2.0 * H) * y1;
    const auto ys = y_series(h, 2);
    double worst = std::max({std::fabs(ys[0] - y0), std::fabs(ys[1] - y1), std::fabs(ys[2] - y2)});

    const double xi1 = -2.0 * std::pow(y0, -3.0) * y1;
    const double xi2 = std::pow(y0, -3.0) * (3.0 * y1 * y1 / y0 - 2.0 * y2);
    const double eta01 = -std::pow(y0, -2.0) * y1;
    const double eta02 = std::pow(y0, -3.0) * y1 * y1 - std::pow(y0, -2.0) * y2;
    const double eta10 = std::pow(y0, 2.0 * H - 2.0);
    const double eta11 = (2.0 * H - 2.0) * std::pow(y0, 2.0 * H - 3.0) * y1;
    const double eta20 = std::pow(y0, 4.0 * H - 3.0);
    const double beta1 = eta01 / std::numbers::sqrt2 - g1 * eta10 - xi1;
    const double beta2 = eta02 / std::numbers::sqrt2 - g2 * eta20 - g1 * eta11 - xi2;
    const auto seq = beta_sequence(h);
    worst = std::max({worst, std::fabs(seq.betas.at(1) - beta1), std::fabs(seq.betas.at(2) - beta2)});
    out << "worst err " << worst << " (beta1 " << seq.betas.at(1) << ", beta2 "
        << seq.betas.at(2) << ")";
    return worst <= ctx.tol(1e-12);
  });

  ctx.run("smallball/beta0-consistency", [&](std::ostringstream& out) {
    double worst = 0.0;
    for (double hv : {0.25, 0.3, 0.4}) {
      const HurstParam h(hv);
      worst = std::max(worst, std::fabs(beta_sequence(h).betas.at(0) - beta0(h)));
    }
    out << "worst err " << worst;
    return worst <= ctx.tol(1e-10);
  });

  ctx.run("smallball/gamma-rule", [&](std::ostringstream& out) {
    double worst = std::fabs(gamma_exponent(HurstParam(0.5)) - 1.0);
    worst = std::max(worst, std::fabs(gamma_exponent(HurstParam(0.75)) - 17.0 / 24.0));
    worst = std::max(worst, std::fabs(gamma_exponent(HurstParam(0.25)) - 2.125));
    bool ok = worst <= ctx.tol(1e-14);
    for (double hv : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45}) {
      const HurstParam h(hv);
      ok = ok && gamma_exponent(h) > 1.0 && beta_sequence(h).prefactor == gamma_exponent(h);
    }
    for (double hv : {0.55, 0.7, 0.9}) ok = ok && beta_sequence(HurstParam(hv)).prefactor == 1.0;
    out << "gamma anchors err " << worst;
    return ok;
  });

  ctx.run("smallball/saddlepoint-chisq1", [&](std::ostringstream& out) {
    EigenSequence one(std::vector<double>{1.0});
    double worst = 0.0;
    for (double r = 0.01; r <= 0.5 + 1e-9; r += 0.01) {
      const double exact = std::erf(std::sqrt(r / 2.0));
      const auto sp = saddlepoint_probability(r, one);
      worst = std::max(worst, std::fabs(sp.probability - exact) / exact);
    }
    out << "worst rel err " << worst;
    return worst <= ctx.tol(0.10);
  });

  ctx.run("smallball/saddlepoint-bm-leading", [&](std::ostringstream& out) {
    const auto bm = mixed_eigen_model(HurstParam(0.5), ctx.opt.quick ? 2000 : 10000);
    // The model holds the doubled Brownian spectrum, so P(||B||_2 <= eps)
    // corresponds to r = 2 eps^2 by the scaling law P(r; c lambda) = P(r/c; lambda).
    double worst = 0.0;
    for (double eps : {0.1, 0.07, 0.05}) {
      const auto sp = saddlepoint_probability(2.0 * eps * eps, bm);
      const double centered = sp.log_probability + 1.0 / (8.0 * eps * eps) - std::log(eps);
      worst = std::max(worst, std::fabs(centered));
    }
    out << "worst |log P + eps^-2/8 - log eps| = " << worst;
    return worst <= 1.5;
  });

  ctx.run("smallball/saddlepoint-scaling", [&](std::ostringstream& out) {
    std::vector<double> vals(200);
    for (int n = 1; n <= 200; ++n) vals[n - 1] = spectrum::lambda_mixed(HurstParam(0.7), n).lambda;
    EigenSequence base(vals);
    for (double& v : vals) v *= 3.0;
    EigenSequence scaled(vals);
    double worst = 0.0;
    for (double r : {0.05, 0.2}) {
      const auto a = saddlepoint_probability(r, base);
      const auto b = saddlepoint_probability(3.0 * r, scaled);
      worst = std::max(worst, std::fabs(a.log_probability - b.log_probability));
    }
    out << "worst log-P gap " << worst;
    return worst <= ctx.tol(1e-9);
  });

  ctx.run("smallball/oracle-agreement", [&](std::ostringstream& out) {
    // Numeric head restricted to the index range where the Nystrom oracle is
    // itself accurate; the analytic model continues the spectrum beyond.
    const int N = ctx.opt.quick ? 600 : 2000;
    const int count = ctx.opt.quick ? 60 : 100;
    const std::size_t analytic = ctx.opt.quick ? 4000 : 10000;
    bool ok = true;
    for (double hv : {0.3, 0.7}) {
      const HurstParam h(hv);
      const auto head = ctx.cache.top(hv, N, oracle::KernelKind::mixed, count);
      const auto model = mixed_eigen_model(h, analytic, &head);
      double prev_gap = 1e100;
      double last_ratio = 0.0;
      out << "H=" << hv << " ratios";
      for (double eps : {0.2, 0.1, 0.07, 0.05}) {
        const auto sp = saddlepoint_probability(eps * eps, model);
        const double asym = asymptotic_log_probability(h, eps);
        last_ratio = asym / sp.log_probability;
        out << " " << last_ratio;
        const double gap = std::fabs(last_ratio - 1.0);
        ok = ok && gap <= prev_gap + 0.01;  // monotone trend toward 1
        prev_gap = gap;
      }
      out << "; ";
      ok = ok && std::fabs(last_ratio - 1.0) <= ctx.tol(0.05);
    }
    return ok;
  });
}

// ---------------------------------------------------------------------------
// sampler

void check_sampler(Ctx& ctx) {
  using namespace sampler;

  ctx.run("sampler/seed-determinism", [&](std::ostringstream& out) {
    std::vector<double> vals(64);
    for (int n = 1; n <= 64; ++n) vals[n - 1] = spectrum::lambda_mixed(HurstParam(0.7), n).lambda;
    EigenSequence eigs(vals);
    MCConfig cfg;
    cfg.samples = 2000;
    cfg.seed = 42;
    cfg.grid_n = 32;
    const auto a = chisq_smallball(eigs, 0.25, cfg);
    const auto b = chisq_smallball(eigs, 0.25, cfg);
    const auto pa = path_smallball(HurstParam(0.7), 0.5, cfg);
    const auto pb = path_smallball(HurstParam(0.7), 0.5, cfg);
    cfg.seed = 43;
    const auto c = chisq_smallball(eigs, 0.25, cfg);
    out << "chisq " << a.probability << " path " << pa.probability;
    return a.probability == b.probability && pa.probability == pb.probability &&
           a.probability != c.probability;
  });

  ctx.run("sampler/covariance-law", [&](std::ostringstream& out) {
    const HurstParam h(0.75);
    const int N = ctx.opt.quick ? 64 : 256;
    const std::int64_t samples = ctx.opt.quick ? 20000 : 100000;
    const oracle::GridSpec grid(N);
    CholeskyPathSampler smp(h, grid);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(N, N);
    std::vector<double> path;
    for (std::int64_t s = 0; s < samples; ++s) {
      smp.sample_path(20240801, static_cast<std::uint64_t>(s), path);
      Eigen::Map<const Eigen::VectorXd> x(path.data(), N);
      acc.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0);
    }
    acc = acc.selfadjointView<Eigen::Lower>();
    acc /= static_cast<double>(samples);
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j <= i; ++j) {
        const double k_ij = oracle::kernel_value(h, oracle::KernelKind::mixed, grid.nodes[i],
                                                 grid.nodes[j]);
        const double k_ii = oracle::kernel_value(h, oracle::KernelKind::mixed, grid.nodes[i],
                                                 grid.nodes[i]);
        const double k_jj = oracle::kernel_value(h, oracle::KernelKind::mixed, grid.nodes[j],
                                                 grid.nodes[j]);
        const double se = std::sqrt((k_ii * k_jj + k_ij * k_ij) / static_cast<double>(samples));
        worst = std::max(worst, std::fabs(acc(i, j) - k_ij) / se);
      }
    // Sample variance at t = 1-side node should approach K(1,1) = 2.
    out << "max |err|/se " << worst << ", var(t~1) " << acc(N - 1, N - 1);
    return worst < 5.0 && std::fabs(acc(N - 1, N - 1) - oracle::kernel_value(
                                                            h, oracle::KernelKind::mixed,
                                                            grid.nodes[N - 1], grid.nodes[N - 1])) <
                              5.0 * std::sqrt(3.0 * 4.0 / static_cast<double>(samples));
  });

  ctx.run("sampler/estimator-agreement", [&](std::ostringstream& out) {
    const int N = ctx.opt.quick ? 128 : 512;
    const std::int64_t samples = ctx.opt.quick ? 10000 : 100000;
    bool ok = true;
    for (double hv : {0.3, 0.5, 0.7}) {
      for (double eps : {0.3, 0.5}) {
        const HurstParam h(hv);
        const auto& full = ctx.cache.spectrum(hv, N, oracle::KernelKind::mixed);
        EigenSequence eigs{std::vector<double>(full.begin(), full.end())};
        MCConfig cfg;
        cfg.samples = samples;
        cfg.seed = 7;
        cfg.grid_n = N;
        const auto chisq = chisq_smallball(eigs, eps * eps, cfg);
        cfg.seed = 8;
        const auto path = path_smallball(h, eps, cfg);
        const double joint = std::sqrt(chisq.std_error * chisq.std_error +
                                       path.std_error * path.std_error);
        const double gap = std::fabs(chisq.probability - path.probability);
        out << "(" << hv << "," << eps << "): gap/se "
            << (joint > 0 ? gap / joint : 0.0) << "; ";
        ok = ok && gap <= 3.0 * joint + 1e-12;
      }
    }
    return ok;
  });

  ctx.run("sampler/kl-truncation-monotone", [&](std::ostringstream& out) {
    const HurstParam h(0.7);
    const int N = ctx.opt.quick ? 64 : 256;
    const std::int64_t samples = ctx.opt.quick ? 20000 : 100000;
    const auto& full = ctx.cache.spectrum(h.h(), N, oracle::KernelKind::mixed);
    EigenSequence eigs{std::vector<double>(full.begin(), full.end())};
    MCConfig cfg;
    cfg.samples = samples;
    cfg.seed = 11;
    cfg.grid_n = N;
    const double eps = 0.4;
    double prev = 2.0;
    std::vector<double> estimates;
    for (int modes = N / 8; modes <= N; modes *= 2) {
      cfg.modes = modes;
      const auto est = chisq_smallball(eigs, eps * eps, cfg);
      estimates.push_back(est.probability);
      // Common random numbers: dropping positive terms only enlarges the
      // event, so the estimate cannot increase as modes grow.
      if (est.probability > prev + 1e-15) {
        out << "not monotone at modes=" << modes;
        return false;
      }
      prev = est.probability;
    }
    cfg.modes = 0;
    cfg.seed = 12;
    const auto path = path_smallball(h, eps, cfg);
    const auto last_cfg_est = estimates.back();
    const double joint = 3.0 * std::sqrt(2.0 * path.std_error * path.std_error) + 1e-12;
    out << "estimates";
    for (double e : estimates) out << " " << e;
    out << "; path " << path.probability;
    return std::fabs(last_cfg_est - path.probability) <= joint;
  });
}

}  // namespace

std::vector<CheckResult> run_all(const Options& opt) {
  Ctx ctx{opt, {}, {}};
  check_numcore(ctx);
  check_spectrum(ctx);
  check_oracle(ctx);
  check_smallball(ctx);
  check_sampler(ctx);
  return std::move(ctx.results);
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

report::Json to_json(const std::vector<CheckResult>& results, const Options& opt) {
  report::Json j;
  j["tolerance_scale"] = opt.tol_scale;
  j["quick"] = opt.quick;
  j["passed"] = all_passed(results);
  report::Json checks = report::Json::array();
  for (const auto& r : results) {
    report::Json c;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["details"] = r.details;
    c["seconds"] = r.seconds;
    checks.push_back(c);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace mfbm::validate
