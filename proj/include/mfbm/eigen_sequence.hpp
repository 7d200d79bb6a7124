#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mfbm {

/// Ordered, strictly positive, decreasing eigenvalue list (index base 1:
/// lambda_n = values[n-1]) with an optional analytic tail model.
///
/// The tail model is a continuous decreasing function lambda(t), valid for
/// t > size(), with algebraic decay exponent tail_decay (lambda(t) ~ t^-d).
/// Consumers that sum functionals of the whole spectrum integrate the tail
/// model beyond the stored values.
class EigenSequence {
 public:
  EigenSequence() = default;
  explicit EigenSequence(std::vector<double> values) { set_values(std::move(values)); }

  void set_values(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("EigenSequence: empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > 0.0))
        throw std::invalid_argument("EigenSequence: eigenvalues must be positive");
      if (i > 0 && values[i] > values[i - 1])
        throw std::invalid_argument("EigenSequence: eigenvalues must be decreasing");
    }
    values_ = std::move(values);
  }

  void set_tail(std::function<double(double)> model, double decay_exponent) {
    if (!(decay_exponent > 1.0))
      throw std::invalid_argument("EigenSequence: tail decay exponent must exceed 1");
    tail_ = std::move(model);
    tail_decay_ = decay_exponent;
  }

  std::size_t size() const { return values_.size(); }
  /// lambda_n, n >= 1.
  double at(std::size_t n) const { return values_.at(n - 1); }
  const std::vector<double>& values() const { return values_; }

  bool has_tail() const { return static_cast<bool>(tail_); }
  double tail_at(double t) const { return tail_(t); }
  double tail_decay() const { return tail_decay_; }

 private:
  std::vector<double> values_;
  std::function<double(double)> tail_;
  double tail_decay_ = 0.0;
};

}  // namespace mfbm
