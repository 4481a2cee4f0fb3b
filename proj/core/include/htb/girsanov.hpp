#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "htb/path.hpp"

namespace htb {

/// Pathwise log-density variants.
///   kCorrected    exponent built from the market-price vector solved against
///                 the lower-triangular driver loading; the cross term
///                 -2*rho*Gamma*Theta appears in the quadratic integrand.
///   kUncorrelated both risk prices integrated against the price driver alone,
///                 quadratic term Gamma^2 + Theta^2. Kept verbatim as a
///                 diagnostic: it is what the corrected form replaces, and its
///                 unit-expectation drift is measured, not asserted away.
///   kIndependent  -int Gamma dB1 - int Theta dB2 - 1/2 int (Gamma^2+Theta^2);
///                 the corrected form collapses to this at rho = 0.
enum class DensityVariant { kCorrected, kUncorrelated, kIndependent };

const char* density_variant_name(DensityVariant v);

/// Pathwise log Radon-Nikodym value at the horizon.
struct DensityRecord {
  std::size_t path_index;
  DensityVariant variant;
  double log_m;
};

struct MarketPriceVector {
  double u1;
  double u2;
};

/// Unique solution of the 2x2 lower-triangular system
///   [1, 0; rho, sqrt(1-rho^2)] * u = (gamma_mpr, theta_mpr):
///   u1 = gamma_mpr, u2 = (theta_mpr - rho*gamma_mpr) / sqrt(1-rho^2).
/// Throws InvalidInputError when |rho| > 1 - 1e-6.
MarketPriceVector solve_market_price_vector(double gamma_mpr, double theta_mpr, double rho);

/// One step of the log-density accumulation for a given variant, with the
/// market prices of risk evaluated at the step's left endpoint.
double log_density_step(DensityVariant variant, double gamma_mpr, double theta_mpr, double rho,
                        double db1, double db2, double dt);

/// Pathwise log-density at the horizon. The path must have been simulated
/// under P (throws InvalidInputError otherwise); a non-finite accumulation
/// throws DensityOverflowError carrying the step index.
double log_density(DensityVariant variant, const Path& path, const HtbParams& params,
                   const RiskPremiumSpec& spec);

double log_density_corrected(const Path& path, const HtbParams& params,
                             const RiskPremiumSpec& spec);
double log_density_uncorrelated(const Path& path, const HtbParams& params,
                                const RiskPremiumSpec& spec);

/// Densities for every path of a materialized P-ensemble.
std::vector<DensityRecord> compute_densities(const Ensemble& ensemble, DensityVariant variant);

/// Sample mean of exp(log_m) with standard error and z = (mean - 1) / SE.
/// Input must be non-empty and single-variant (InvalidInputError otherwise).
/// When the SE is exactly zero, z is 0 for mean == 1 and +-inf otherwise.
struct UnitExpectationCheck {
  double mean;
  double std_error;
  double z_score;
  std::size_t n;
};

UnitExpectationCheck unit_expectation_check(std::span<const DensityRecord> records);

/// Importance-sampling reduction E_P[M_T * f]: sample mean and SE of
/// exp(log_m) * payoff(path) over a P-ensemble. Records must align 1:1 with
/// ensemble paths (same count, record i for path i).
struct ReweightedExpectation {
  double estimate;
  double std_error;
  std::size_t n;
};

ReweightedExpectation reweighted_expectation(const Ensemble& ensemble_p,
                                             std::span<const DensityRecord> records,
                                             const std::function<double(const Path&)>& payoff);

}  // namespace htb
