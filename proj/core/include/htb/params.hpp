#pragma once

#include <string>

namespace htb {

/// Correlations this close to +-1 are rejected everywhere: the correlated
/// density divides by sqrt(1 - rho^2).
inline constexpr double kMaxAbsRho = 1.0 - 1e-6;

/// Model constants and initial conditions. Time is measured in years and all
/// rates are annualized.
///
///   sigma      price diffusion volatility (1/sqrt(year))
///   kappa      log-intensity diffusion volatility (1/sqrt(year))
///   rho        correlation between the price and intensity drivers
///   gamma      buy-in price elasticity; a jump multiplies the price by 1-gamma
///   alpha      mean-reversion speed of the log-intensity (1/year)
///   x_bar      long-term log-intensity level
///   beta       coupling of realized returns into the log-intensity
///   r          instantaneous interest rate (1/year)
///   lambda0    reference intensity (1/year); x = ln(lambda/lambda0)
///   s0, x0     initial price and log-intensity
///   lambda_max hard intensity cap (1/year); keeps the price market-price-of-
///              risk bounded so the pathwise density stays integrable
struct HtbParams {
  double sigma = 0.3;
  double kappa = 0.5;
  double rho = 0.0;
  double gamma = 0.05;
  double alpha = 1.0;
  double x_bar = 0.0;
  double beta = 0.5;
  double r = 0.01;
  double lambda0 = 2.0;
  double s0 = 100.0;
  double x0 = 0.0;
  double lambda_max = 50.0;

  /// Throws InvalidInputError naming the offending field. Checks:
  /// sigma, kappa, lambda0, s0 > 0; |rho| <= 1 - 1e-6; 0 <= gamma < 1;
  /// alpha >= 0; lambda_max >= lambda0 * e^{x0}; everything finite.
  void validate() const;
};

/// Instantaneous market state. lambda is always the capped intensity implied
/// by x, i.e. min(lambda0 * e^x, lambda_max).
struct MarketState {
  double t;
  double s;
  double x;
  double lambda;
};

/// Parametric family for the market price of buy-in risk z(t, x, S).
/// The model treats z as exogenous; calibration is out of scope, so the
/// artifact exposes a small family rich enough to make the intensity risk
/// premium nonzero and state-dependent.
class RiskPremiumSpec {
 public:
  enum class Kind { kZero, kConstant, kAffineInX };

  /// z == 0 identically.
  static RiskPremiumSpec zero() { return RiskPremiumSpec(Kind::kZero, 0.0, 0.0); }

  /// z == c.
  static RiskPremiumSpec constant(double c);

  /// z == a + b * x.
  static RiskPremiumSpec affine_in_x(double a, double b);

  double operator()(double t, double x, double s) const;

  Kind kind() const { return kind_; }
  double coeff_a() const { return a_; }
  double coeff_b() const { return b_; }

  /// "zero", "constant(c)" or "affine_in_x(a,b)" for report echoes.
  std::string describe() const;

 private:
  RiskPremiumSpec(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
};

}  // namespace htb
