#include <doctest.h>

#include <cmath>
#include <set>

#include "mfbm/sampler.hpp"
#include "mfbm/spectrum.hpp"

using namespace mfbm;
using namespace mfbm::sampler;

TEST_CASE("philox streams are deterministic and distinct") {
  PhiloxRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
    CHECK(va != d.next_u64());
  }
  PhiloxRng u(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  // First two moments of the Gaussian transform at a fixed seed.
  PhiloxRng g(2024, 0);
  double sum = 0.0, sum2 = 0.0;
  const int m = 20000;
  for (int i = 0; i < m; ++i) {
    const double z = g.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::fabs(sum / m) < 4.0 / std::sqrt(static_cast<double>(m)));
  CHECK(std::fabs(sum2 / m - 1.0) < 4.0 * std::sqrt(2.0 / m));
}

TEST_CASE("config validation") {
  MCConfig cfg;
  cfg.samples = 50;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.samples = 100;
  cfg.grid_n = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("chisq estimator against the exact single chi-square CDF") {
  EigenSequence one(std::vector<double>{1.0});
  MCConfig cfg;
  cfg.samples = 200000;
  cfg.seed = 5;
  const double r = 0.1;
  const auto est = chisq_smallball(one, r, cfg);
  const double exact = std::erf(std::sqrt(r / 2.0));  // 0.2481...
  CHECK(std::fabs(est.probability - exact) <= 4.0 * est.std_error);
  CHECK(est.std_error == doctest::Approx(std::sqrt(est.probability * (1 - est.probability) /
                                                   cfg.samples)));
  // r beyond the support mean: certain event for a single eigenvalue.
  const auto sure = chisq_smallball(one, 100.0, cfg);
  CHECK(sure.probability == 1.0);
}

TEST_CASE("chisq truncation tail is reported") {
  std::vector<double> v(50);
  for (int n = 1; n <= 50; ++n) v[n - 1] = spectrum::lambda_bm(n);
  EigenSequence eigs(v);
  MCConfig cfg;
  cfg.samples = 100;
  cfg.modes = 30;
  const auto est = chisq_smallball(eigs, 0.2, cfg);
  double tail = 0.0;
  for (int n = 31; n <= 50; ++n) tail += spectrum::lambda_bm(n);
  CHECK(est.truncation_tail == doctest::Approx(tail).epsilon(1e-14));
}

TEST_CASE("cholesky paths have the right second moments") {
  const HurstParam h(0.5);
  const oracle::GridSpec grid(64);
  MCConfig cfg;
  cfg.samples = 20000;
  cfg.seed = 9;
  CholeskyPathSampler sampler(h, grid);
  CHECK(sampler.jitter() == 0.0);
  std::vector<double> path;
  double var_end = 0.0;
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    sampler.sample_path(cfg.seed, static_cast<std::uint64_t>(s), path);
    var_end += path.back() * path.back();
  }
  var_end /= static_cast<double>(cfg.samples);
  // K(t,t) = 2t at H = 1/2; the last midpoint node sits at 1 - 1/(2N).
  const double expect = 2.0 * grid.nodes.back();
  const double se = expect * std::sqrt(2.0 / static_cast<double>(cfg.samples));
  CHECK(std::fabs(var_end - expect) < 5.0 * se);
}

TEST_CASE("path estimator sanity at large epsilon") {
  MCConfig cfg;
  cfg.samples = 4000;
  cfg.seed = 3;
  cfg.grid_n = 64;
  const auto est = path_smallball(HurstParam(0.7), 2.0, cfg);
  CHECK(est.probability > 0.5);
  CHECK(est.probability <= 1.0);
}

TEST_CASE("estimators are reproducible bit for bit") {
  MCConfig cfg;
  cfg.samples = 5000;
  cfg.seed = 77;
  cfg.grid_n = 32;
  const auto p1 = path_smallball(HurstParam(0.3), 0.5, cfg);
  const auto p2 = path_smallball(HurstParam(0.3), 0.5, cfg);
  CHECK(p1.probability == p2.probability);
  CHECK(p1.std_error == p2.std_error);
}

TEST_CASE("batch export shape") {
  MCConfig cfg;
  cfg.samples = 120;
  cfg.seed = 1;
  const oracle::GridSpec grid(16);
  const auto batch = cholesky_paths(HurstParam(0.6), grid, cfg);
  CHECK(batch.rows() == 120);
  CHECK(batch.cols() == 16);
  // Same seed reproduces the same batch.
  const auto again = cholesky_paths(HurstParam(0.6), grid, cfg);
  CHECK((batch - again).cwiseAbs().maxCoeff() == 0.0);
}
