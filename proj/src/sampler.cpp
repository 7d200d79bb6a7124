#include "mfbm/sampler.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace mfbm::sampler {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
  ctr[0] = hi1 ^ ctr[1] ^ key[0];
  ctr[1] = lo1;
  ctr[2] = hi0 ^ ctr[3] ^ key[1];
  ctr[3] = lo0;
}

}  // namespace

PhiloxRng::PhiloxRng(std::uint64_t seed, std::uint64_t stream) {
  key_[0] = static_cast<std::uint32_t>(seed);
  key_[1] = static_cast<std::uint32_t>(seed >> 32);
  counter_hi_[0] = static_cast<std::uint32_t>(stream);
  counter_hi_[1] = static_cast<std::uint32_t>(stream >> 32);
}

void PhiloxRng::refill() {
  std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32), counter_hi_[0],
                          counter_hi_[1]};
  std::uint32_t key[2] = {key_[0], key_[1]};
  for (int round = 0; round < 10; ++round) {
    philox_round(ctr, key);
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  out_[0] = ctr[0];
  out_[1] = ctr[1];
  out_[2] = ctr[2];
  out_[3] = ctr[3];
  avail_ = 4;
  ++block_;
}

std::uint64_t PhiloxRng::next_u64() {
  if (avail_ < 2) refill();
  const std::uint64_t hi = out_[--avail_];
  const std::uint64_t lo = out_[--avail_];
  return (hi << 32) | lo;
}

double PhiloxRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double PhiloxRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

void MCConfig::validate() const {
  if (samples < 100) throw std::invalid_argument("MCConfig: sample count must be >= 100");
  if (grid_n < 2) throw std::invalid_argument("MCConfig: grid size must be >= 2");
  if (modes < 0) throw std::invalid_argument("MCConfig: modes must be >= 0");
}

CholeskyPathSampler::CholeskyPathSampler(const HurstParam& h, const oracle::GridSpec& grid)
    : n_(grid.n) {
  Eigen::MatrixXd cov(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = oracle::kernel_value(h, oracle::KernelKind::mixed, grid.nodes[i],
                                            grid.nodes[j]);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  double jitter = 1e-12 * cov.trace() / n_;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) {
      chol_ = llt.matrixL();
      return;
    }
    // Kernel matrices are positive definite in exact arithmetic; nudge the
    // diagonal and report the applied magnitude.
    cov.diagonal().array() += jitter;
    jitter_ += jitter;
    std::cerr << "cholesky_paths: factorization failed, added diagonal jitter " << jitter
              << " (total " << jitter_ << ")\n";
    jitter *= 10.0;
  }
  throw std::runtime_error("cholesky_paths: covariance factorization failed after jitter");
}

void CholeskyPathSampler::sample_path(std::uint64_t seed, std::uint64_t sample_index,
                                      std::vector<double>& out) const {
  PhiloxRng rng(seed, sample_index);
  Eigen::VectorXd z(n_);
  for (int i = 0; i < n_; ++i) z(i) = rng.normal();
  Eigen::VectorXd x = chol_ * z;
  out.assign(x.data(), x.data() + n_);
}

Eigen::MatrixXd cholesky_paths(const HurstParam& h, const oracle::GridSpec& grid,
                               const MCConfig& cfg) {
  cfg.validate();
  CholeskyPathSampler sampler(h, grid);
  Eigen::MatrixXd batch(cfg.samples, grid.n);
  std::vector<double> path;
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    sampler.sample_path(cfg.seed, static_cast<std::uint64_t>(s), path);
    for (int i = 0; i < grid.n; ++i) batch(s, i) = path[i];
  }
  return batch;
}

namespace {

MCEstimate finalize(std::int64_t hits, double tail, const MCConfig& cfg) {
  MCEstimate est{};
  est.samples = cfg.samples;
  est.probability = static_cast<double>(hits) / static_cast<double>(cfg.samples);
  est.std_error =
      std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(cfg.samples));
  est.truncation_tail = tail;
  est.config = cfg;
  return est;
}

}  // namespace

MCEstimate chisq_smallball(const EigenSequence& eigs, double r, const MCConfig& cfg) {
  cfg.validate();
  if (!(r > 0.0)) throw std::invalid_argument("chisq_smallball: requires r > 0");
  const std::size_t n_modes =
      cfg.modes == 0 ? eigs.size() : std::min<std::size_t>(cfg.modes, eigs.size());
  double tail = 0.0;
  for (std::size_t n = n_modes + 1; n <= eigs.size(); ++n) tail += eigs.at(n);

  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    PhiloxRng rng(cfg.seed, static_cast<std::uint64_t>(s));
    double acc = 0.0;
    for (std::size_t n = 1; n <= n_modes; ++n) {
      const double z = rng.normal();
      acc += eigs.at(n) * z * z;
      if (acc > r) break;  // sum is increasing; the event is already decided
    }
    if (acc <= r) ++hits;
  }
  return finalize(hits, tail, cfg);
}

MCEstimate path_smallball(const HurstParam& h, double eps, const MCConfig& cfg) {
  cfg.validate();
  if (!(eps > 0.0)) throw std::invalid_argument("path_smallball: requires eps > 0");
  const oracle::GridSpec grid(cfg.grid_n);
  CholeskyPathSampler sampler(h, grid);
  const double threshold = eps * eps;
  std::int64_t hits = 0;
  std::vector<double> path;
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    sampler.sample_path(cfg.seed, static_cast<std::uint64_t>(s), path);
    double norm_sq = 0.0;
    for (double v : path) norm_sq += v * v;
    norm_sq *= grid.weight;
    if (norm_sq <= threshold) ++hits;
  }
  return finalize(hits, 0.0, cfg);
}

}  // namespace mfbm::sampler
