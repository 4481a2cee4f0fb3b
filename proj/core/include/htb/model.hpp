#pragma once

#include "htb/params.hpp"

namespace htb {

/// Capped intensity from log-intensity: min(lambda0 * e^x, lambda_max).
/// Strictly positive. Throws InvalidInputError for non-finite x.
double intensity_from_log(double x, const HtbParams& params);

/// Market price of price risk: (gamma * lambda - r) / sigma.
double gamma_price_of_risk(double lambda, const HtbParams& params);

/// Market price of buy-in risk: alpha * z(t, x, s) / kappa.
double theta_price_of_risk(double t, double x, double s, const RiskPremiumSpec& spec,
                           const HtbParams& params);

/// Short-seller profit or loss over one step: -s * (sigma*dw + lambda*gamma*dt).
/// The jump contribution cancels exactly against the compensator, which is why
/// the jump indicator does not appear.
double pnl_increment(double s, double dw, double dt, double lambda, const HtbParams& params);

/// One-step expected relative price return under the physical dynamics, with
/// the jump indicator enumerated analytically (P{xi=1} = lambda*dt) and the
/// Gaussian term integrated out. The compensated-jump structure makes this
/// identically zero; the enumeration is kept explicit so the cancellation is
/// checked rather than assumed.
double expected_one_step_return(double lambda, double dt, const HtbParams& params);

}  // namespace htb
