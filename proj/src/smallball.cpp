#include "mfbm/smallball.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mfbm/gamma.hpp"
#include "mfbm/root_solve.hpp"
#include "mfbm/spectrum.hpp"

namespace mfbm::smallball {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest integer k >= 0 with k * step < limit.  When limit/step lands on an
// integer (within 1e-12) the boundary is assigned to the stratum with fewer
// terms, matching the half-open H-ranges of the worked examples.  The count
// blows up as H -> 1/2; anything past 512 strata is outside the range where
// the expansion is numerically meaningful.
int count_strictly_below(double step, double limit) {
  const double x = limit / step;
  if (!(x < 1024.0))
    throw std::domain_error("strata count: H is too close to 1/2 for the stratified expansion");
  const double r = std::round(x);
  if (std::fabs(x - r) < 1e-12) return static_cast<int>(r) - 1;
  return static_cast<int>(std::floor(x));
}

void require_not_half(const HurstParam& h, const char* where) {
  if (h.is_half())
    throw std::domain_error(std::string(where) +
                            ": H = 1/2 is excluded; the stratified small-ball expansion "
                            "requires H != 1/2");
}

}  // namespace

PowerLawWeight::PowerLawWeight(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty() || terms_.size() > 3)
    throw std::invalid_argument("PowerLawWeight: expected 1..3 terms");
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (!(terms_[j].c > 0.0)) throw std::invalid_argument("PowerLawWeight: c_j must be positive");
    if (!(terms_[j].d > 1.0)) throw std::invalid_argument("PowerLawWeight: d_j must exceed 1");
    if (j > 0 && !(terms_[j].d > terms_[j - 1].d))
      throw std::invalid_argument("PowerLawWeight: exponents must be strictly increasing");
  }
}

double PowerLawWeight::eval(double t) const {
  double acc = 0.0;
  for (const Term& term : terms_) acc += term.c * std::pow(t, -term.d);
  return acc;
}

double q_alpha(const HurstParam& h) {
  const double a = h.alpha();
  return 1.0 + (1.0 - a) * (1.0 - a) / (2.0 * (3.0 - a));
}

PowerLawWeight weight_constants(const HurstParam& h) {
  require_not_half(h, "weight_constants");
  const double a = h.alpha();
  const double kappa = h.kappa();
  const double c_frac = kappa / std::pow(kPi, 3.0 - a);
  const double c_bm = 1.0 / (kPi * kPi);
  if (h.regime() == HurstRegime::superhalf) {
    return PowerLawWeight({{c_bm, 2.0}, {c_frac, 3.0 - a}, {c_bm, 3.0}});
  }
  const double c3 = c_frac * (3.0 - a) / 2.0 * q_alpha(h);
  return PowerLawWeight({{c_frac, 3.0 - a}, {c_bm, 2.0}, {c3, 4.0 - a}});
}

PowerLawWeight bm_weight() { return PowerLawWeight({{1.0 / (kPi * kPi), 2.0}}); }

IFunctions weight_I(double u, const PowerLawWeight& w, const numcore::QuadratureSpec& spec) {
  if (!(u > 0.0)) throw std::domain_error("weight_I: requires u > 0");
  const double d1 = w.d(1);
  numcore::QuadratureSpec s = spec;

  s.tail_decay = d1;
  const double i0 = -0.5 * numcore::integrate_improper(
                              [&](double t) { return std::log1p(2.0 * u * w.eval(t)); }, 1.0, s);
  const double i1 = -numcore::integrate_improper(
      [&](double t) {
        const double up = u * w.eval(t);
        return up / (1.0 + 2.0 * up);
      },
      1.0, s);
  s.tail_decay = 2.0 * d1;
  const double i2 = 2.0 * numcore::integrate_improper(
                              [&](double t) {
                                const double up = u * w.eval(t);
                                const double q = up / (1.0 + 2.0 * up);
                                return q * q;
                              },
                              1.0, s);
  return IFunctions{i0, i1, i2};
}

DiscreteI discrete_I(double u, const EigenSequence& eigs, const numcore::QuadratureSpec& spec) {
  if (u == 0.0) return DiscreteI{0, 0, 0, 0, 0, 0};
  DiscreteI out{0, 0, 0, 0, 0, 0};
  for (double lam : eigs.values()) {
    const double ul = u * lam;
    const double den = 1.0 + 2.0 * ul;
    if (!(den > 0.0))
      throw std::domain_error("discrete_I: tilt outside the Laplace domain (1 + 2 u lambda <= 0)");
    const double q = ul / den;
    out.i0 += -0.5 * std::log1p(2.0 * ul);
    out.i1 += -q;
    out.i2 += 2.0 * q * q;
  }
  if (eigs.has_tail()) {
    const double from = static_cast<double>(eigs.size()) + 0.5;
    numcore::QuadratureSpec s = spec;
    s.tail_decay = eigs.tail_decay();
    out.tail_i0 = -0.5 * numcore::integrate_improper(
                            [&](double t) { return std::log1p(2.0 * u * eigs.tail_at(t)); },
                            from, s);
    out.tail_i1 = -numcore::integrate_improper(
        [&](double t) {
          const double ul = u * eigs.tail_at(t);
          return ul / (1.0 + 2.0 * ul);
        },
        from, s);
    s.tail_decay = 2.0 * eigs.tail_decay();
    out.tail_i2 = 2.0 * numcore::integrate_improper(
                            [&](double t) {
                              const double ul = u * eigs.tail_at(t);
                              const double q = ul / (1.0 + 2.0 * ul);
                              return q * q;
                            },
                            from, s);
    out.i0 += out.tail_i0;
    out.i1 += out.tail_i1;
    out.i2 += out.tail_i2;
  }
  return out;
}

namespace {

// Exact CDF of sum lambda_j Z_j (Z_j iid chi^2_1) by Gil-Pelaez inversion of
// the characteristic function:
//   P(S <= x) = 1/2 - (1/pi) int_0^inf R(t) sin(theta(t)) / t dt,
//   R(t) = prod (1 + 4 lambda^2 t^2)^(-1/4),
//   theta(t) = (1/2) sum atan(2 lambda t) - t x.
// A tail model enters as a Gaussian factor: its mean shifts x, its variance
// 2 int phi^2 damps the amplitude.  Accurate to ~1e-12 absolute, so it is
// only used when the probability is well above that floor.
double gil_pelaez_cdf(double x, const EigenSequence& eigs, const numcore::QuadratureSpec& spec) {
  double tail_mean = 0.0, tail_var = 0.0;
  if (eigs.has_tail()) {
    const double from = static_cast<double>(eigs.size()) + 0.5;
    numcore::QuadratureSpec s = spec;
    s.tail_decay = eigs.tail_decay();
    tail_mean = numcore::integrate_improper([&](double t) { return eigs.tail_at(t); }, from, s);
    s.tail_decay = 2.0 * eigs.tail_decay();
    tail_var = 2.0 * numcore::integrate_improper(
                         [&](double t) {
                           const double lam = eigs.tail_at(t);
                           return lam * lam;
                         },
                         from, s);
  }
  const double x_eff = x - tail_mean;
  const auto& lam = eigs.values();

  auto log_amp = [&](double t) {
    double acc = -0.5 * tail_var * t * t;
    for (double l : lam) acc -= 0.25 * std::log1p(4.0 * l * l * t * t);
    return acc;
  };
  auto integrand = [&](double t) {
    const double la = log_amp(t);
    if (la < -745.0) return 0.0;
    double theta = -t * x_eff;
    for (double l : lam) theta += 0.5 * std::atan(2.0 * l * t);
    return std::exp(la) * std::sin(theta) / t;
  };

  double upper = 8.0 / std::max(x_eff, 1e-6);
  while (log_amp(upper) > -42.0) {
    upper *= 2.0;
    if (upper > 1e18) throw std::runtime_error("gil_pelaez_cdf: amplitude decays too slowly");
  }
  numcore::QuadratureSpec s = spec;
  s.abs_tol = 1e-13;
  s.rel_tol = 1e-9;
  s.max_intervals = 200000;
  const double integral = numcore::integrate(integrand, 0.0, upper, s);
  return 0.5 - integral / kPi;
}

// Mills ratio Phi(-x)/phi(x) for x > 0; asymptotic series beyond x = 8.
double mills_ratio(double x) {
  if (x < 8.0)
    return 0.5 * std::erfc(x / std::numbers::sqrt2) * std::sqrt(2.0 * kPi) *
           std::exp(0.5 * x * x);
  const double ix2 = 1.0 / (x * x);
  return (1.0 - ix2 * (1.0 - 3.0 * ix2 * (1.0 - 5.0 * ix2 * (1.0 - 7.0 * ix2)))) / x;
}

struct CumulantData {
  double lam_plus_ur;  // Lambda(u) + u r  (<= 0 at the saddle)
  double k2, k3, k4;   // K''(-u), K'''(-u), K''''(-u)
};

CumulantData cumulants(double u, double r, const EigenSequence& eigs,
                       const numcore::QuadratureSpec& spec) {
  CumulantData c{0, 0, 0, 0};
  for (double lam : eigs.values()) {
    const double den = 1.0 + 2.0 * u * lam;
    c.lam_plus_ur += -0.5 * std::log1p(2.0 * u * lam);
    const double l2 = lam * lam / (den * den);
    c.k2 += 2.0 * l2;
    c.k3 += 8.0 * l2 * lam / den;
    c.k4 += 48.0 * l2 * l2;
  }
  if (eigs.has_tail()) {
    const double from = static_cast<double>(eigs.size()) + 0.5;
    const double d = eigs.tail_decay();
    numcore::QuadratureSpec s = spec;
    s.tail_decay = d;
    c.lam_plus_ur += -0.5 * numcore::integrate_improper(
                               [&](double t) { return std::log1p(2.0 * u * eigs.tail_at(t)); },
                               from, s);
    s.tail_decay = 2.0 * d;
    c.k2 += numcore::integrate_improper(
        [&](double t) {
          const double lam = eigs.tail_at(t);
          const double den = 1.0 + 2.0 * u * lam;
          return 2.0 * lam * lam / (den * den);
        },
        from, s);
    s.tail_decay = 3.0 * d;
    c.k3 += numcore::integrate_improper(
        [&](double t) {
          const double lam = eigs.tail_at(t);
          const double den = 1.0 + 2.0 * u * lam;
          return 8.0 * lam * lam * lam / (den * den * den);
        },
        from, s);
    s.tail_decay = 4.0 * d;
    c.k4 += numcore::integrate_improper(
        [&](double t) {
          const double lam = eigs.tail_at(t);
          const double den = 1.0 + 2.0 * u * lam;
          const double l2 = lam * lam / (den * den);
          return 48.0 * l2 * l2;
        },
        from, s);
  }
  c.lam_plus_ur += u * r;
  return c;
}

}  // namespace

SaddlepointResult saddlepoint_probability(double r, const EigenSequence& eigs,
                                          const numcore::QuadratureSpec& spec) {
  if (!(r > 0.0)) throw std::domain_error("saddlepoint_probability: requires r > 0");

  // Mean of the limiting quadratic form, including the tail model.
  double mean = 0.0;
  for (double lam : eigs.values()) mean += lam;
  if (eigs.has_tail()) {
    numcore::QuadratureSpec s = spec;
    s.tail_decay = eigs.tail_decay();
    mean += numcore::integrate_improper([&](double t) { return eigs.tail_at(t); },
                                        static_cast<double>(eigs.size()) + 0.5, s);
  }

  // F(u) = r + Lambda'(u) = r - sum lambda/(1 + 2 u lambda) - tail;
  // strictly increasing on (-1/(2 lambda_1), inf) with F(0) = r - mean.
  auto saddle_fn = [&](double u) {
    double acc = r;
    for (double lam : eigs.values()) acc -= lam / (1.0 + 2.0 * u * lam);
    if (eigs.has_tail()) {
      numcore::QuadratureSpec s = spec;
      s.tail_decay = eigs.tail_decay();
      acc -= numcore::integrate_improper(
          [&](double t) {
            const double lam = eigs.tail_at(t);
            return lam / (1.0 + 2.0 * u * lam);
          },
          static_cast<double>(eigs.size()) + 0.5, s);
    }
    return acc;
  };

  const double ftol = 1e-12 * std::max(r, mean);
  double u;
  if (r < mean) {
    double hi = 1.0 / r;
    while (saddle_fn(hi) < 0.0) hi *= 4.0;
    u = numcore::solve_monotone(saddle_fn, 0.0, hi, ftol);
  } else if (r == mean) {
    u = 0.0;
  } else {
    // r above the mean: the saddle is at negative u, inside the Laplace
    // strip u > -1/(2 lambda_1).
    const double edge = -0.5 / eigs.at(1);
    double lo = 0.5 * edge;
    while (saddle_fn(lo) > 0.0) lo = 0.5 * (lo + edge);
    u = numcore::solve_monotone(saddle_fn, lo, 0.0, ftol);
  }

  SaddlepointResult res{};
  res.tilt = u;

  const CumulantData c = cumulants(u, r, eigs, spec);
  const double what_sq = std::max(0.0, -2.0 * c.lam_plus_ur);
  const double sgn = (u > 0.0) ? -1.0 : 1.0;  // sign of the saddle s = -u
  const double what = sgn * std::sqrt(what_sq);
  const double zhat = -u * std::sqrt(c.k2);
  const double rho3 = c.k3 / std::pow(c.k2, 1.5);
  const double rho4 = c.k4 / (c.k2 * c.k2);

  double log_p;
  if (std::fabs(what) < 1e-5 || zhat == 0.0) {
    // Saddle at the mean: Lugannani-Rice limit with the skewness correction.
    const double p = 0.5 + (1.0 / std::sqrt(2.0 * kPi)) * (rho3 / 6.0);
    log_p = std::log(std::clamp(p, 1e-300, 1.0));
  } else if (what < 0.0) {
    // Lower tail, evaluated in log space so deep small-ball probabilities
    // stay representable: P = phi(w) [ M(-w) + 1/w - 1/z - D ].
    const double correction = (1.0 / zhat) * (rho4 / 8.0 - 5.0 * rho3 * rho3 / 24.0) -
                              1.0 / (zhat * zhat * zhat) - rho3 / (2.0 * zhat * zhat) +
                              1.0 / (what * what * what);
    double bracket = mills_ratio(-what) + (1.0 / what - 1.0 / zhat) - correction;
    if (!(bracket > 0.0)) bracket = mills_ratio(-what) + (1.0 / what - 1.0 / zhat);
    if (!(bracket > 0.0)) bracket = mills_ratio(-what);
    log_p = -0.5 * what * what - 0.5 * std::log(2.0 * kPi) + std::log(bracket);
  } else {
    // Above the mean (sanity range): plain second-order Lugannani-Rice.
    const double phi_w = std::exp(-0.5 * what * what) / std::sqrt(2.0 * kPi);
    const double Phi_w = 0.5 * std::erfc(-what / std::numbers::sqrt2);
    const double correction = (1.0 / zhat) * (rho4 / 8.0 - 5.0 * rho3 * rho3 / 24.0) -
                              1.0 / (zhat * zhat * zhat) - rho3 / (2.0 * zhat * zhat) +
                              1.0 / (what * what * what);
    double p = Phi_w + phi_w * ((1.0 / what - 1.0 / zhat) - correction);
    p = std::clamp(p, 1e-300, 1.0 - 1e-16);
    log_p = std::log(p);
  }

  res.method = "lugannani-rice";
  // Central-range refinement: exact characteristic-function inversion is
  // available whenever the value sits well above the inversion's absolute
  // error floor and the spectrum is rich enough for the integrand to decay.
  if (log_p > std::log(1e-8) && eigs.size() >= 8) {
    const double exact = gil_pelaez_cdf(r, eigs, spec);
    if (exact > 0.0 && std::isfinite(exact)) {
      log_p = std::log(std::min(exact, 1.0));
      res.method = "cf-inversion";
    }
  }

  res.log_probability = log_p;
  if (log_p > 0.0) {
    res.probability = 1.0;
    res.clamped = true;
    std::cerr << "saddlepoint_probability: approximation exceeded 1 at r=" << r
              << "; clamped\n";
  } else {
    res.probability = std::exp(log_p);
    res.clamped = false;
  }
  return res;
}

double gamma_exponent(const HurstParam& h) {
  const double H = h.h();
  return (1.25 - H + H * H) / (2.0 * H);
}

double beta0(const HurstParam& h) {
  const double H = h.h();
  if (H >= 0.5) return 0.125;
  const double s = std::sin(kPi / (2.0 * H + 1.0));
  const double base = h.kappa() / (std::pow(2.0 * H + 1.0, 2.0 * H + 1.0) *
                                   std::pow(s, 2.0 * H + 1.0));
  return H * std::pow(base, 1.0 / (2.0 * H));
}

ChiConstants chi_constants(int k, const PowerLawWeight& w) {
  if (k < 0) throw std::domain_error("chi_constants: k must be >= 0");
  const double d1 = w.d(1);
  const double delta2 = w.size() >= 2 ? w.delta(2) : 0.0;
  if (k > 0 && w.size() < 2)
    throw std::domain_error("chi_constants: k >= 1 needs a two-term weight");
  const double kd = k * delta2;
  if (!(kd < 1.0))
    throw std::domain_error("chi_constants: requires k delta2 < 1");
  const double a = (1.0 - kd) / d1;  // in (0, 1/d1]
  using numcore::gamma_fn;
  using numcore::log_gamma;
  ChiConstants out{};
  out.chi1 = std::exp(log_gamma(a) + log_gamma(k + 1.0 - a) - log_gamma(k + 1.0)) / d1;
  out.chi0 = k >= 1
                 ? std::exp(log_gamma(a) + log_gamma(k - a) - log_gamma(static_cast<double>(k))) / d1
                 : std::numeric_limits<double>::quiet_NaN();
  out.chi31 = gamma_fn(1.0 / d1) * gamma_fn(2.0 - 1.0 / d1) / d1;
  return out;
}

HgCoefficients hg_coefficients(int k, const PowerLawWeight& w) {
  if (k < 1) throw std::domain_error("hg_coefficients: k must be >= 1");
  const ChiConstants chi = chi_constants(k, w);
  const double c1 = w.c(1), c2 = w.c(2);
  const double d1 = w.d(1), d2 = w.d(2);
  const double delta2 = w.delta(2);
  const double scale =
      0.5 * std::pow(-c2 / c1, k) * std::pow(2.0 * c1, (1.0 - k * delta2) / d1);
  return HgCoefficients{scale * (chi.chi1 - chi.chi0),
                        scale * (d2 * chi.chi0 - d1 * chi.chi1)};
}

int strata_count(const HurstParam& h) {
  require_not_half(h, "strata_count");
  return count_strictly_below(std::fabs(2.0 * h.h() - 1.0), 1.0);
}

int inner_term_count(const HurstParam& h) {
  require_not_half(h, "inner_term_count");
  return count_strictly_below(std::fabs(2.0 * h.h() - 1.0), 0.5);
}

namespace {

struct SeriesContext {
  PowerLawWeight weight;
  double step_r;  // series step in r
  double sigma;   // 1/(d1 - 1)
  double y0;
  std::vector<double> hk;  // h_1..h_K (root equation terms)
};

SeriesContext make_context(const HurstParam& h) {
  PowerLawWeight w = weight_constants(h);
  const double d1 = w.d(1);
  const double delta2 = w.delta(2);
  const double chi10 = chi_constants(0, w).chi1;
  SeriesContext ctx{std::move(w), delta2 / (d1 - 1.0), 1.0 / (d1 - 1.0), 0.0, {}};
  ctx.y0 = 2.0 / (chi10 * std::pow(2.0 * ctx.weight.c(1), 1.0 / d1));
  const int K = inner_term_count(h);
  ctx.hk.resize(K);
  for (int k = 1; k <= K; ++k) ctx.hk[k - 1] = hg_coefficients(k, ctx.weight).hk;
  return ctx;
}

// Left-hand side of the root equation minus one, as a truncated series.
numcore::FractionalSeries equation_residual(const SeriesContext& ctx,
                                            const numcore::FractionalSeries& y) {
  auto res = y;
  res *= 1.0 / ctx.y0;
  res[0] -= 1.0;
  for (std::size_t k = 1; k <= ctx.hk.size(); ++k) {
    if (k > y.order()) break;
    auto term = numcore::series_pow(y, static_cast<double>(k) * ctx.step_r + 1.0);
    res += ctx.hk[k - 1] * numcore::series_shift(term, k);
  }
  return res;
}

}  // namespace

numcore::FractionalSeries y_series(const HurstParam& h, int order) {
  require_not_half(h, "y_series");
  if (order < 0) throw std::domain_error("y_series: order must be >= 0");
  if (order > 200)
    std::cerr << "y_series: order " << order
              << " exceeds the machine-meaningful strata range; coefficients may be inaccurate\n";
  const SeriesContext ctx = make_context(h);
  auto y = numcore::FractionalSeries::constant(ctx.step_r, static_cast<std::size_t>(order), ctx.y0);
  for (int j = 1; j <= order; ++j) {
    // Order-j residual depends on y_0..y_{j-1} only (every sum term carries
    // at least one power of r), so each coefficient is solved directly.
    const auto res = equation_residual(ctx, y);
    y[static_cast<std::size_t>(j)] = -ctx.y0 * res[static_cast<std::size_t>(j)];
  }
  return y;
}

SmallBallAsymptotics beta_sequence(const HurstParam& h) {
  return beta_sequence(h, strata_count(h));
}

SmallBallAsymptotics beta_sequence(const HurstParam& h, int strata) {
  require_not_half(h, "beta_sequence");
  if (strata < 1) throw std::domain_error("beta_sequence: strata must be >= 1");
  const SeriesContext ctx = make_context(h);
  const double d1 = ctx.weight.d(1);
  const auto y = y_series(h, strata);

  const auto xi = numcore::series_pow(y, -ctx.sigma - 1.0);
  std::vector<numcore::FractionalSeries> eta;
  eta.reserve(strata + 1);
  for (int k = 0; k <= strata; ++k)
    eta.push_back(numcore::series_pow(y, static_cast<double>(k) * ctx.step_r - ctx.sigma));

  std::vector<double> gk(strata + 1, 0.0);
  for (int k = 1; k <= strata; ++k) gk[k] = hg_coefficients(k, ctx.weight).gk;

  SmallBallAsymptotics out;
  out.h = h.h();
  out.gamma = gamma_exponent(h);
  out.prefactor = std::max(out.gamma, 1.0);
  out.strata = strata;
  out.betas.resize(strata + 1);
  out.exponents.resize(strata + 1);

  // beta_0 = (d1/y0) eta_{0,0} - xi_0 = (d1 - 1) y0^(-sigma-1); for H > 1/2
  // this collapses to exactly 1/8.
  out.betas[0] = h.regime() == HurstRegime::superhalf
                     ? 0.125
                     : (d1 / ctx.y0) * eta[0][0] - xi[0];
  for (int el = 1; el <= strata; ++el) {
    double b = (d1 / ctx.y0) * eta[0][static_cast<std::size_t>(el)] -
               xi[static_cast<std::size_t>(el)];
    for (int j = 0; j <= el - 1; ++j)
      b -= gk[el - j] * eta[static_cast<std::size_t>(el - j)][static_cast<std::size_t>(j)];
    out.betas[static_cast<std::size_t>(el)] = b;
  }

  const double dev = std::fabs(2.0 * h.h() - 1.0);
  const double hmin = std::min(h.h(), 0.5);
  for (int k = 0; k <= strata; ++k)
    out.exponents[static_cast<std::size_t>(k)] = (k * dev - 1.0) / hmin;
  return out;
}

double asymptotic_log_probability(const HurstParam& h, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("asymptotic_log_probability: requires eps > 0");
  if (h.is_half()) {
    // Scaled Brownian cross-check path: B + B^(1/2) has the law of sqrt(2) B.
    return std::log(eps) - 0.25 / (eps * eps);
  }
  const SmallBallAsymptotics a = beta_sequence(h);
  double acc = a.prefactor * std::log(eps);
  for (std::size_t k = 0; k < a.betas.size(); ++k)
    acc -= a.betas[k] * std::pow(eps, a.exponents[k]);
  return acc;
}

EigenSequence mixed_eigen_model(const HurstParam& h, std::size_t analytic_count,
                                const EigenSequence* numeric_head) {
  if (analytic_count < 1) throw std::invalid_argument("mixed_eigen_model: empty model");
  std::vector<double> values(analytic_count);
  const std::size_t head = numeric_head ? std::min(numeric_head->size(), analytic_count) : 0;
  for (std::size_t n = 1; n <= head; ++n) values[n - 1] = numeric_head->at(n);
  for (std::size_t n = head + 1; n <= analytic_count; ++n)
    values[n - 1] = spectrum::lambda_mixed(h, static_cast<int>(n)).lambda;
  EigenSequence eigs(std::move(values));
  if (h.is_half()) {
    eigs.set_tail([](double t) {
      const double nu = (t - 0.5) * kPi;
      return 2.0 / (nu * nu);
    }, 2.0);
  } else {
    const PowerLawWeight w = weight_constants(h);
    eigs.set_tail([w](double t) { return w.eval(t); }, w.d(1));
  }
  return eigs;
}

}  // namespace mfbm::smallball
