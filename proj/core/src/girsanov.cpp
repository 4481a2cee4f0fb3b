#include "htb/girsanov.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "htb/errors.hpp"
#include "htb/model.hpp"
#include "htb/stats.hpp"

namespace htb {

const char* density_variant_name(DensityVariant v) {
  switch (v) {
    case DensityVariant::kCorrected:
      return "corrected";
    case DensityVariant::kUncorrelated:
      return "uncorrelated";
    case DensityVariant::kIndependent:
      return "independent";
  }
  return "?";
}

MarketPriceVector solve_market_price_vector(double gamma_mpr, double theta_mpr, double rho) {
  if (!(std::abs(rho) <= kMaxAbsRho)) {
    std::ostringstream msg;
    msg << "solve_market_price_vector: rho = " << rho << " violates |rho| <= 1 - 1e-6";
    throw InvalidInputError(msg.str());
  }
  const double u2 = (theta_mpr - rho * gamma_mpr) / std::sqrt(1.0 - rho * rho);
  return MarketPriceVector{gamma_mpr, u2};
}

double log_density_step(DensityVariant variant, double gamma_mpr, double theta_mpr, double rho,
                        double db1, double db2, double dt) {
  switch (variant) {
    case DensityVariant::kCorrected: {
      const MarketPriceVector u = solve_market_price_vector(gamma_mpr, theta_mpr, rho);
      return -u.u1 * db1 - u.u2 * db2 - 0.5 * (u.u1 * u.u1 + u.u2 * u.u2) * dt;
    }
    case DensityVariant::kUncorrelated:
      // Both risk prices against the price driver, no cross term. This is the
      // form the corrected variant replaces; keep it exactly as written.
      return -(gamma_mpr + theta_mpr) * db1 -
             0.5 * (gamma_mpr * gamma_mpr + theta_mpr * theta_mpr) * dt;
    case DensityVariant::kIndependent:
      return -gamma_mpr * db1 - theta_mpr * db2 -
             0.5 * (gamma_mpr * gamma_mpr + theta_mpr * theta_mpr) * dt;
  }
  return 0.0;  // unreachable
}

double log_density(DensityVariant variant, const Path& path, const HtbParams& params,
                   const RiskPremiumSpec& spec) {
  if (path.measure != Measure::kP)
    throw InvalidInputError("log_density: path must be simulated under P");
  const std::size_t n = path.db1.size();

  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const MarketState& left = path.states[k];  // Ito convention: left endpoint
    const double gamma_mpr = gamma_price_of_risk(left.lambda, params);
    const double theta_mpr = theta_price_of_risk(left.t, left.x, left.s, spec, params);
    acc += log_density_step(variant, gamma_mpr, theta_mpr, params.rho, path.db1[k], path.db2[k],
                            path.grid.dt);
    if (!std::isfinite(acc)) {
      std::ostringstream msg;
      msg << "log-density accumulation became non-finite at step " << k;
      throw DensityOverflowError(msg.str(), k);
    }
  }
  return acc;
}

double log_density_corrected(const Path& path, const HtbParams& params,
                             const RiskPremiumSpec& spec) {
  return log_density(DensityVariant::kCorrected, path, params, spec);
}

double log_density_uncorrelated(const Path& path, const HtbParams& params,
                                const RiskPremiumSpec& spec) {
  return log_density(DensityVariant::kUncorrelated, path, params, spec);
}

std::vector<DensityRecord> compute_densities(const Ensemble& ensemble, DensityVariant variant) {
  std::vector<DensityRecord> records;
  records.reserve(ensemble.paths.size());
  for (std::size_t i = 0; i < ensemble.paths.size(); ++i) {
    records.push_back(DensityRecord{
        i, variant, log_density(variant, ensemble.paths[i], ensemble.params,
                                ensemble.risk_premium)});
  }
  return records;
}

UnitExpectationCheck unit_expectation_check(std::span<const DensityRecord> records) {
  if (records.empty()) throw InvalidInputError("unit_expectation_check: empty input");
  const DensityVariant variant = records.front().variant;
  std::vector<double> weights(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].variant != variant)
      throw InvalidInputError("unit_expectation_check: records mix density variants");
    weights[i] = std::exp(records[i].log_m);
  }
  const MeanEstimate est = mean_and_se(weights);
  double z = 0.0;
  if (est.std_error > 0.0) {
    z = (est.mean - 1.0) / est.std_error;
  } else if (est.mean != 1.0) {
    z = est.mean > 1.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
  }
  return UnitExpectationCheck{est.mean, est.std_error, z, est.n};
}

ReweightedExpectation reweighted_expectation(const Ensemble& ensemble_p,
                                             std::span<const DensityRecord> records,
                                             const std::function<double(const Path&)>& payoff) {
  if (records.size() != ensemble_p.paths.size())
    throw InvalidInputError("reweighted_expectation: records do not align with ensemble paths");
  std::vector<double> weighted(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].path_index != i)
      throw InvalidInputError("reweighted_expectation: record path_index mismatch");
    weighted[i] = std::exp(records[i].log_m) * payoff(ensemble_p.paths[i]);
  }
  const MeanEstimate est = mean_and_se(weighted);
  return ReweightedExpectation{est.mean, est.std_error, est.n};
}

}  // namespace htb
