#include "mfbm/fractional_series.hpp"

#include <cmath>
#include <stdexcept>

namespace mfbm::numcore {

namespace {

void require_compatible(const FractionalSeries& a, const FractionalSeries& b) {
  if (a.step() != b.step())
    throw std::invalid_argument("FractionalSeries: mismatched steps");
  if (a.order() != b.order())
    throw std::invalid_argument("FractionalSeries: mismatched truncation orders");
}

}  // namespace

FractionalSeries::FractionalSeries(double step, std::vector<double> coeffs)
    : step_(step), coeffs_(std::move(coeffs)) {
  if (!(step_ > 0.0)) throw std::invalid_argument("FractionalSeries: step must be positive");
  if (coeffs_.empty()) throw std::invalid_argument("FractionalSeries: needs a constant term");
}

FractionalSeries FractionalSeries::zero(double step, std::size_t order) {
  return FractionalSeries(step, std::vector<double>(order + 1, 0.0));
}

FractionalSeries FractionalSeries::constant(double step, std::size_t order, double c) {
  auto s = zero(step, order);
  s[0] = c;
  return s;
}

double FractionalSeries::eval(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("FractionalSeries::eval: r must be >= 0");
  const double rho = std::pow(r, step_);
  double acc = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * rho + coeffs_[j];
  return acc;
}

FractionalSeries& FractionalSeries::operator+=(const FractionalSeries& o) {
  require_compatible(*this, o);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

FractionalSeries& FractionalSeries::operator-=(const FractionalSeries& o) {
  require_compatible(*this, o);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

FractionalSeries& FractionalSeries::operator*=(double c) {
  for (double& a : coeffs_) a *= c;
  return *this;
}

FractionalSeries series_mul(const FractionalSeries& a, const FractionalSeries& b) {
  require_compatible(a, b);
  const std::size_t M = a.order();
  auto out = FractionalSeries::zero(a.step(), M);
  for (std::size_t i = 0; i <= M; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; i + j <= M; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

FractionalSeries series_pow(const FractionalSeries& a, double p) {
  if (!(a[0] > 0.0))
    throw std::invalid_argument("series_pow: constant term must be positive");
  const std::size_t M = a.order();
  // a = a0 (1 + w) with w(0) = 0; expand (1 + w)^p = sum binom(p, i) w^i.
  auto w = a;
  w *= 1.0 / a[0];
  w[0] = 0.0;
  auto out = FractionalSeries::constant(a.step(), M, 1.0);
  auto wpow = FractionalSeries::constant(a.step(), M, 1.0);
  double binom = 1.0;
  for (std::size_t i = 1; i <= M; ++i) {
    binom *= (p - static_cast<double>(i - 1)) / static_cast<double>(i);
    wpow = series_mul(wpow, w);
    out += binom * wpow;
  }
  out *= std::pow(a[0], p);
  return out;
}

FractionalSeries series_shift(const FractionalSeries& a, std::size_t shift) {
  const std::size_t M = a.order();
  auto out = FractionalSeries::zero(a.step(), M);
  for (std::size_t j = 0; j + shift <= M; ++j) out[j + shift] = a[j];
  return out;
}

}  // namespace mfbm::numcore
