#pragma once

namespace mfbm {

enum class HurstRegime { subhalf, half, superhalf };

/// Validated Hurst index H in (0,1) together with the derived roughness
/// parameter alpha = 2 - 2H and the regime relative to H = 1/2.
class HurstParam {
 public:
  explicit HurstParam(double h);

  double h() const { return h_; }
  double alpha() const { return alpha_; }
  HurstRegime regime() const { return regime_; }
  bool is_half() const { return regime_ == HurstRegime::half; }

  /// kappa_alpha = Gamma(2H+1) sin(pi H); the constant coupling the
  /// fractional part into the frequency equation.  This form is regular
  /// across alpha = 1, unlike the cos(pi alpha / 2) quotient.
  double kappa() const;

 private:
  double h_;
  double alpha_;
  HurstRegime regime_;
};

}  // namespace mfbm
