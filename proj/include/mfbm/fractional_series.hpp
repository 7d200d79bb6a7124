#pragma once

#include <cstddef>
#include <vector>

namespace mfbm::numcore {

/// Truncated expansion sum_{j=0..M} a_j * r^(j*delta) in a fractional step
/// delta > 0.  Arithmetic is closed at the truncation order: operations on
/// two order-M series return an order-M series whose coefficients are exact
/// through index M.  Series with different steps never mix; such calls throw
/// std::invalid_argument instead of resampling.
class FractionalSeries {
 public:
  FractionalSeries(double step, std::vector<double> coeffs);

  /// Order-M series with all coefficients zero.
  static FractionalSeries zero(double step, std::size_t order);
  /// Order-M series whose constant term is c.
  static FractionalSeries constant(double step, std::size_t order, double c);

  double step() const { return step_; }
  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator[](std::size_t j) const { return coeffs_[j]; }
  double& operator[](std::size_t j) { return coeffs_[j]; }

  /// Evaluate the truncated sum at r >= 0.
  double eval(double r) const;

  FractionalSeries& operator+=(const FractionalSeries& o);
  FractionalSeries& operator-=(const FractionalSeries& o);
  FractionalSeries& operator*=(double c);

  friend FractionalSeries operator+(FractionalSeries a, const FractionalSeries& b) { return a += b; }
  friend FractionalSeries operator-(FractionalSeries a, const FractionalSeries& b) { return a -= b; }
  friend FractionalSeries operator*(FractionalSeries a, double c) { return a *= c; }
  friend FractionalSeries operator*(double c, FractionalSeries a) { return a *= c; }

 private:
  double step_;
  std::vector<double> coeffs_;
};

/// Truncated product: coefficients exact through min(order a, order b).
FractionalSeries series_mul(const FractionalSeries& a, const FractionalSeries& b);

/// a(r)^p for real p, expanded binomially around the constant term, which
/// must be strictly positive.  Exact through the truncation order.
FractionalSeries series_pow(const FractionalSeries& a, double p);

/// Multiply by r^(shift*delta): shifts coefficients up, dropping overflow.
FractionalSeries series_shift(const FractionalSeries& a, std::size_t shift);

}  // namespace mfbm::numcore
