#include "mfbm/hurst.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mfbm/gamma.hpp"

namespace mfbm {

HurstParam::HurstParam(double h) : h_(h), alpha_(2.0 - 2.0 * h) {
  if (!(h > 0.0) || !(h < 1.0))
    throw std::domain_error("HurstParam: H must lie in (0,1), got " + std::to_string(h));
  regime_ = h < 0.5 ? HurstRegime::subhalf : (h > 0.5 ? HurstRegime::superhalf : HurstRegime::half);
}

double HurstParam::kappa() const {
  return numcore::gamma_fn(2.0 * h_ + 1.0) * std::sin(std::numbers::pi * h_);
}

}  // namespace mfbm
