#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mfbm/eigen_sequence.hpp"
#include "mfbm/hurst.hpp"
#include "mfbm/oracle.hpp"

namespace mfbm::sampler {

/// Counter-based RNG: Philox4x32-10 keyed by (seed, sample index), counter
/// advanced per 128-bit block.  Streams for distinct sample indices never
/// overlap, so estimates are reproducible regardless of evaluation order.
/// Gaussians use the Box-Muller transform on uniforms built as
/// ((bits >> 11) + 0.5) * 2^-53, which lie strictly inside (0, 1).
class PhiloxRng {
 public:
  PhiloxRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform();  // in (0, 1)
  double normal();   // standard Gaussian

 private:
  void refill();
  std::uint32_t key_[2];
  std::uint32_t counter_hi_[2];  // stream id
  std::uint64_t block_ = 0;
  std::uint32_t out_[4];
  int avail_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

enum class Estimator { path_l2, chisq_series };

struct MCConfig {
  std::int64_t samples = 100000;  // >= 100
  std::uint64_t seed = 0;
  int grid_n = 256;    // path discretization
  int modes = 0;       // chisq truncation; 0 = all provided eigenvalues
  Estimator estimator = Estimator::path_l2;

  void validate() const;
};

struct MCEstimate {
  double probability;
  double std_error;  // sqrt(p (1-p) / m)
  std::int64_t samples;
  double truncation_tail;  // sum of eigenvalues dropped by the truncation
  MCConfig config;
};

/// Exact finite-dimensional sampler for the mixed process on a grid, via
/// Cholesky factorization of the covariance matrix.  If the factorization
/// fails numerically, a diagonal jitter of 1e-12 * trace/N is added (and
/// escalated tenfold at most three times); the applied magnitude is
/// available through jitter().
class CholeskyPathSampler {
 public:
  CholeskyPathSampler(const HurstParam& h, const oracle::GridSpec& grid);

  int grid_size() const { return n_; }
  double jitter() const { return jitter_; }

  /// Path values at the grid nodes for one sample index.
  void sample_path(std::uint64_t seed, std::uint64_t sample_index, std::vector<double>& out) const;

 private:
  Eigen::MatrixXd chol_;  // lower factor
  int n_;
  double jitter_ = 0.0;
};

/// Batch of paths as a (paths x N) matrix; intended for modest path counts
/// (CSV export, law checks).
Eigen::MatrixXd cholesky_paths(const HurstParam& h, const oracle::GridSpec& grid,
                               const MCConfig& cfg);

/// Monte Carlo estimate of P(sum_n lambda_n Z_n <= r), Z_n iid chi^2_1,
/// truncated at cfg.modes terms (all provided terms when modes = 0).
MCEstimate chisq_smallball(const EigenSequence& eigs, double r, const MCConfig& cfg);

/// Monte Carlo estimate of P(||B~||_2 <= eps) from Cholesky paths, with the
/// L2 norm evaluated by midpoint quadrature on the same grid as the
/// covariance.
MCEstimate path_smallball(const HurstParam& h, double eps, const MCConfig& cfg);

}  // namespace mfbm::sampler
