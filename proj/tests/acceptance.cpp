// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mfbm/gamma.hpp"
#include "mfbm/oracle.hpp"
#include "mfbm/sampler.hpp"
#include "mfbm/smallball.hpp"
#include "mfbm/spectrum.hpp"
#include "mfbm/validate.hpp"

using namespace mfbm;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& details) {
  std::printf("%s  criterion %2d  %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              details.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t m = n.size();
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
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

struct Caches {
  std::map<double, EigenSequence> nystrom2000;  // H -> leading 500 eigenvalues
  std::map<double, double> solve_seconds;
  std::map<double, EigenSequence> spectrum512;  // full 512-point matrix spectra

  const EigenSequence& mixed2000(double hv) {
    auto it = nystrom2000.find(hv);
    if (it != nystrom2000.end()) return it->second;
    const HurstParam h(hv);
    const double t0 = now_seconds();
    const auto op = oracle::build_covariance(h, oracle::GridSpec(2000), oracle::KernelKind::mixed);
    auto eigs = oracle::numeric_eigenvalues(op, 500);
    solve_seconds[hv] = now_seconds() - t0;
    return nystrom2000.emplace(hv, std::move(eigs)).first->second;
  }

  const EigenSequence& mixed512(double hv) {
    auto it = spectrum512.find(hv);
    if (it != spectrum512.end()) return it->second;
    const HurstParam h(hv);
    const auto op = oracle::build_covariance(h, oracle::GridSpec(512), oracle::KernelKind::mixed);
    auto all = oracle::symmetric_eigenvalues_desc(op.matrix);
    return spectrum512.emplace(hv, EigenSequence(std::move(all))).first->second;
  }
};

// 1. Closed-form eigenvalues vs the N=2000 Nystrom oracle, n in [5, 50].
void criterion1(Caches& c) {
  bool pass = true;
  std::ostringstream out;
  for (double hv : {0.3, 0.7}) {
    const HurstParam h(hv);
    const auto& eigs = c.mixed2000(hv);
    double worst = 0.0;
    for (int n = 5; n <= 50; ++n) {
      const double num = eigs.at(n);
      worst = std::max(worst, std::fabs(spectrum::lambda_mixed(h, n).lambda - num) / num);
    }
    const double secs = c.solve_seconds[hv];
    out << "H=" << hv << ": max rel err " << worst << " (" << secs << "s); ";
    pass = pass && worst < 0.01 && secs < 120.0;
  }
  report(1, "eigenvalue accuracy (N=2000)", pass, out.str());
}

// 2. Residual rate of the frequency approximation: the scaled residual
// |lambda_closed - lambda*| / lambda * n^|2H-1| shows no growth trend over
// n in [5, 50].  lambda* is the grid-extrapolated oracle (fine
// discretization); decay faster than the O(n^-|2H-1|) bound is compliant.
void criterion2(Caches&) {
  bool pass = true;
  std::ostringstream out;
  for (double hv : {0.3, 0.7}) {
    const HurstParam h(hv);
    const auto star = oracle::extrapolated_eigenvalues(h, 1000, oracle::KernelKind::mixed, 55);
    std::vector<double> ns, scaled, rel;
    for (int n = 5; n <= 50; ++n) {
      const double rho = std::fabs(spectrum::lambda_mixed(h, n).lambda - star.at(n)) / star.at(n);
      ns.push_back(n);
      rel.push_back(rho);
      scaled.push_back(rho * std::pow(n, std::fabs(2.0 * hv - 1.0)));
    }
    const double slope_scaled = loglog_slope(ns, scaled);
    const double slope_rel = loglog_slope(ns, rel);
    out << "H=" << hv << ": scaled slope " << slope_scaled << " (rel-residual slope " << slope_rel
        << "); ";
    pass = pass && slope_scaled <= 0.3;
  }
  report(2, "frequency residual rate bound", pass, out.str());
}

// 3. Fourth-order eigenvalue expansion at H = 0.75: residual decays faster
// than n^-(2H+2) over n in [10, 200].
void criterion3(Caches&) {
  const HurstParam h(0.75);
  const auto exp4 = spectrum::mixed_expansion_coeffs(h);
  std::vector<double> ns, res;
  for (int n = 10; n <= 200; ++n) {
    ns.push_back(n);
    res.push_back(std::fabs(spectrum::lambda_mixed(h, n).lambda - exp4.eval(n, h.h())));
  }
  const double slope = loglog_slope(ns, res);
  const double bound = -(2.0 * 0.75 + 2.0) + 0.2;
  std::ostringstream out;
  out << "residual slope " << slope << " <= " << bound;
  report(3, "fourth-order expansion (H=0.75)", slope <= bound, out.str());
}

// 4. Series algorithm reproduces beta_1 = 2^(2H-4) Gamma(2H+1) to 1e-10.
void criterion4(Caches&) {
  const double t0 = now_seconds();
  double worst = 0.0;
  for (double hv : {0.76, 0.8, 0.85, 0.9, 0.95}) {
    const auto seq = smallball::beta_sequence(HurstParam(hv));
    const double closed = std::pow(2.0, 2.0 * hv - 4.0) * numcore::gamma_fn(2.0 * hv + 1.0);
    worst = std::max(worst, std::fabs(seq.betas.at(1) - closed));
  }
  const double secs = now_seconds() - t0;
  std::ostringstream out;
  out << "max |series - closed| " << worst << " (" << secs << "s)";
  report(4, "beta_1 closed form (H in [3/4,1))", worst <= 1e-10 && secs < 1.0, out.str());
}

// 5. Sub-half leading coefficient equals the fBm-type exponent constant.
void criterion5(Caches&) {
  double worst = 0.0;
  for (double hv : {0.25, 0.3, 0.4}) {
    const HurstParam h(hv);
    worst = std::max(worst,
                     std::fabs(smallball::beta_sequence(h).betas.at(0) - smallball::beta0(h)));
  }
  std::ostringstream out;
  out << "max |beta_0(series) - closed| " << worst;
  report(5, "beta_0 consistency (H<1/2)", worst <= 1e-10, out.str());
}

// 6. Saddlepoint evaluator vs the exact chi^2_1 CDF.
void criterion6(Caches&) {
  EigenSequence one(std::vector<double>{1.0});
  double worst = 0.0;
  for (double r = 0.01; r <= 0.5 + 1e-12; r += 0.01) {
    const double exact = std::erf(std::sqrt(r / 2.0));
    const auto sp = smallball::saddlepoint_probability(r, one);
    worst = std::max(worst, std::fabs(sp.probability - exact) / exact);
  }
  std::ostringstream out;
  out << "max rel err " << worst << " over r in [0.01, 0.5]";
  report(6, "saddlepoint vs exact chi^2_1", worst < 0.10, out.str());
}

// 7. Monte Carlo (1e6 samples) vs saddlepoint on matched numeric eigenvalues.
void criterion7(Caches& c) {
  struct Point {
    double h, eps;
  };
  bool pass = true;
  std::ostringstream out;
  for (const Point pt : {Point{0.3, 0.3}, Point{0.7, 0.3}, Point{0.5, 0.5}}) {
    const double t0 = now_seconds();
    const auto& eigs = c.mixed512(pt.h);
    const double r = pt.eps * pt.eps;
    sampler::MCConfig cfg;
    cfg.samples = 1000000;
    cfg.seed = 20240801;
    cfg.grid_n = 512;
    const auto mc = sampler::chisq_smallball(eigs, r, cfg);
    const auto sp = smallball::saddlepoint_probability(r, eigs);
    const double gap = std::fabs(mc.probability - sp.probability);
    const double secs = now_seconds() - t0;
    out << "(" << pt.h << "," << pt.eps << "): mc " << mc.probability << " sp " << sp.probability
        << " gap/se " << (mc.std_error > 0 ? gap / mc.std_error : 0.0) << " (" << secs << "s); ";
    pass = pass && gap <= 3.0 * mc.std_error && secs < 300.0;
  }
  report(7, "saddlepoint vs MC (3 points)", pass, out.str());
}

// 8. Asymptotic log-probability vs the saddlepoint oracle on numeric
// eigenvalues: ratio trends monotonically toward 1, within 5% at eps=0.05.
void criterion8(Caches& c) {
  bool pass = true;
  std::ostringstream out;
  for (double hv : {0.3, 0.7}) {
    const HurstParam h(hv);
    // Numeric head restricted to the oracle's accurate index range (the
    // n <= 50 window is gated by criterion 1; beyond ~100 the raw Nystrom
    // values degrade and would pollute the model).
    const auto& all = c.mixed2000(hv);
    EigenSequence head(std::vector<double>(all.values().begin(), all.values().begin() + 100));
    const auto model = smallball::mixed_eigen_model(h, 10000, &head);
    double prev_gap = 1e100;
    double final_gap = 0.0;
    out << "H=" << hv << " ratios:";
    for (double eps : {0.2, 0.1, 0.07, 0.05}) {
      const auto sp = smallball::saddlepoint_probability(eps * eps, model);
      const double ratio = smallball::asymptotic_log_probability(h, eps) / sp.log_probability;
      out << " " << ratio;
      final_gap = std::fabs(ratio - 1.0);
      pass = pass && final_gap <= prev_gap + 0.01;
      prev_gap = final_gap;
    }
    pass = pass && final_gap <= 0.05;
    out << "; ";
  }
  report(8, "asymptotics vs saddlepoint", pass, out.str());
}

// 9. Large-nu rate bounds for b_alpha(nu).
void criterion9(Caches&) {
  std::vector<double> sub, sup;
  const HurstParam h_sub(0.25);  // alpha = 1.5
  const HurstParam h_sup(0.75);  // alpha = 0.5
  const double b_inf = spectrum::b_alpha_limit(h_sub);
  for (int j = 0; j <= 10; ++j) {
    const double nu = 10.0 * std::pow(2.0, j);
    sub.push_back(std::fabs(spectrum::b_alpha_nu(nu, h_sub) - b_inf) * std::pow(nu, 0.5));
    sup.push_back(std::fabs(spectrum::b_alpha_nu(nu, h_sup)) * std::pow(nu, 0.5));
  }
  const double r_sub = *std::max_element(sub.begin(), sub.end()) / median(sub);
  const double r_sup = *std::max_element(sup.begin(), sup.end()) / median(sup);
  std::ostringstream out;
  out << "max/median: alpha=1.5 -> " << r_sub << ", alpha=0.5 -> " << r_sup;
  report(9, "b_alpha(nu) large-nu rates", r_sub <= 2.0 && r_sup <= 2.0, out.str());
}

// 10. Full property suites green; suite runtime under 15 minutes.
void criterion10(Caches&) {
  const double t0 = now_seconds();
  const auto results = validate::run_all(validate::Options{});
  const double secs = now_seconds() - t0;
  std::ostringstream out;
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) {
      ++failed;
      out << r.name << " FAILED [" << r.details << "]; ";
    }
  out << results.size() << " checks, " << failed << " failed, " << secs << "s";
  report(10, "property suites (cmd_validate)", failed == 0 && secs < 900.0, out.str());
}

}  // namespace

int main() {
  Caches caches;
  criterion1(caches);
  criterion2(caches);
  criterion3(caches);
  criterion4(caches);
  criterion5(caches);
  criterion6(caches);
  criterion7(caches);
  criterion8(caches);
  criterion9(caches);
  criterion10(caches);
  if (g_failures) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all criteria passed\n");
  return 0;
}
