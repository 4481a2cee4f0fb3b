#include "htb/model.hpp"

#include <algorithm>
#include <cmath>

#include "htb/errors.hpp"

namespace htb {

double intensity_from_log(double x, const HtbParams& params) {
  if (!std::isfinite(x)) throw InvalidInputError("intensity_from_log: x must be finite");
  return std::min(params.lambda0 * std::exp(x), params.lambda_max);
}

double gamma_price_of_risk(double lambda, const HtbParams& params) {
  return (params.gamma * lambda - params.r) / params.sigma;
}

double theta_price_of_risk(double t, double x, double s, const RiskPremiumSpec& spec,
                           const HtbParams& params) {
  return params.alpha * spec(t, x, s) / params.kappa;
}

double pnl_increment(double s, double dw, double dt, double lambda, const HtbParams& params) {
  if (!(dt > 0.0)) throw InvalidInputError("pnl_increment: dt must be positive");
  return -s * (params.sigma * dw + lambda * params.gamma * dt);
}

double expected_one_step_return(double lambda, double dt, const HtbParams& params) {
  // Enumerate the jump indicator; the Gaussian term has mean zero and drops.
  const double p_jump = lambda * dt;
  double acc = 0.0;
  acc += p_jump * (params.gamma * lambda * dt - params.gamma);
  acc += (1.0 - p_jump) * (params.gamma * lambda * dt);
  return acc;
}

}  // namespace htb
