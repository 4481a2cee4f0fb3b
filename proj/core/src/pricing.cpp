#include "htb/pricing.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "htb/errors.hpp"
#include "htb/model.hpp"
#include "htb/rng.hpp"
#include "htb/simulator.hpp"
#include "htb/stats.hpp"

namespace htb {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double carry_adjusted_deflated_value(const Path& path, const HtbParams& p) {
  const double dt = path.grid.dt;
  const std::size_t n = path.db1.size();
  // Deflated terminal value plus the accumulated buy-in carry, left endpoints.
  double carry = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const MarketState& left = path.states[k];
    carry += p.gamma * left.lambda * std::exp(-p.r * left.t) * left.s * dt;
  }
  const MarketState& terminal = path.states[n];
  return std::exp(-p.r * path.grid.horizon) * terminal.s + carry;
}

CarryCheck carry_check_from_values(std::span<const double> values, double s0) {
  const MeanEstimate est = mean_and_se(values);
  double z = 0.0;
  if (est.std_error > 0.0) {
    z = (est.mean - s0) / est.std_error;
  } else if (est.mean != s0) {
    z = est.mean > s0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return CarryCheck{est.mean, est.std_error, z, est.n};
}

}  // namespace

void OptionSpec::validate() const {
  if (!(strike > 0.0)) throw InvalidInputError("option strike must be positive");
  if (!(maturity > 0.0)) throw InvalidInputError("option maturity must be positive");
}

const char* price_method_name(PriceMethod m) {
  switch (m) {
    case PriceMethod::kDirectQ:
      return "direct_q";
    case PriceMethod::kReweightedP:
      return "reweighted_p";
    case PriceMethod::kClosedForm:
      return "closed_form";
  }
  return "?";
}

double payoff_european(const OptionSpec& spec, double s_terminal) {
  if (!(s_terminal > 0.0)) throw InvalidInputError("payoff_european: s_terminal must be positive");
  const double intrinsic =
      spec.kind == OptionKind::kCall ? s_terminal - spec.strike : spec.strike - s_terminal;
  return intrinsic > 0.0 ? intrinsic : 0.0;
}

PriceEstimate black_scholes_reference(double s0, double strike, double r, double sigma,
                                      double maturity, OptionKind kind) {
  if (!(s0 > 0.0) || !(strike > 0.0) || !(sigma > 0.0) || !(maturity > 0.0))
    throw InvalidInputError("black_scholes_reference: s0, strike, sigma, maturity must be > 0");
  const double vol = sigma * std::sqrt(maturity);
  const double d1 = (std::log(s0 / strike) + (r + 0.5 * sigma * sigma) * maturity) / vol;
  const double d2 = d1 - vol;
  const double discounted_strike = strike * std::exp(-r * maturity);
  const double value = kind == OptionKind::kCall
                           ? s0 * normal_cdf(d1) - discounted_strike * normal_cdf(d2)
                           : discounted_strike * normal_cdf(-d2) - s0 * normal_cdf(-d1);
  return PriceEstimate{value, 0.0, 0, PriceMethod::kClosedForm};
}

PriceEstimate price_direct_q(const OptionSpec& option, const HtbParams& params,
                             const RiskPremiumSpec& spec, const PathGrid& grid,
                             std::size_t n_paths, std::uint64_t master_seed, unsigned n_workers) {
  option.validate();
  if (option.maturity != grid.horizon)
    throw InvalidInputError("price_direct_q: option maturity must equal the grid horizon");

  std::vector<double> discounted(n_paths);
  const double discount = std::exp(-params.r * grid.horizon);
  for_each_path(Measure::kQ, params, spec, grid, n_paths, master_seed, n_workers,
                [&](std::size_t i, const Path& path) {
                  discounted[i] = discount * payoff_european(option, path.states.back().s);
                });
  const MeanEstimate est = mean_and_se(discounted);
  return PriceEstimate{est.mean, est.std_error, n_paths, PriceMethod::kDirectQ};
}

PriceEstimate price_reweighted_p(const OptionSpec& option, const HtbParams& params,
                                 const RiskPremiumSpec& spec, const PathGrid& grid,
                                 std::size_t n_paths, std::uint64_t master_seed,
                                 unsigned n_workers, DensityVariant variant) {
  option.validate();
  if (option.maturity != grid.horizon)
    throw InvalidInputError("price_reweighted_p: option maturity must equal the grid horizon");

  std::vector<double> weighted(n_paths);
  const double discount = std::exp(-params.r * grid.horizon);
  for_each_path(Measure::kP, params, spec, grid, n_paths, master_seed, n_workers,
                [&](std::size_t i, const Path& path) {
                  const double log_m = log_density(variant, path, params, spec);
                  weighted[i] =
                      discount * std::exp(log_m) * payoff_european(option, path.states.back().s);
                });
  const MeanEstimate est = mean_and_se(weighted);
  return PriceEstimate{est.mean, est.std_error, n_paths, PriceMethod::kReweightedP};
}

ConsistencyCheck estimator_consistency(const PriceEstimate& a, const PriceEstimate& b) {
  const double diff = a.value - b.value;
  const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  double z = 0.0;
  if (se > 0.0) {
    z = diff / se;
  } else if (diff != 0.0) {
    z = diff > 0.0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
  }
  return ConsistencyCheck{diff, se, z};
}

CarryCheck carry_martingale_check(const Ensemble& ensemble_q, const HtbParams& params) {
  if (ensemble_q.measure != Measure::kQ)
    throw InvalidInputError("carry_martingale_check: ensemble must be simulated under Q");
  std::vector<double> values(ensemble_q.paths.size());
  for (std::size_t i = 0; i < ensemble_q.paths.size(); ++i)
    values[i] = carry_adjusted_deflated_value(ensemble_q.paths[i], params);
  return carry_check_from_values(values, params.s0);
}

CarryCheck carry_martingale_check(const HtbParams& params, const RiskPremiumSpec& spec,
                                  const PathGrid& grid, std::size_t n_paths,
                                  std::uint64_t master_seed, unsigned n_workers) {
  std::vector<double> values(n_paths);
  for_each_path(Measure::kQ, params, spec, grid, n_paths, master_seed, n_workers,
                [&](std::size_t i, const Path& path) {
                  values[i] = carry_adjusted_deflated_value(path, params);
                });
  return carry_check_from_values(values, params.s0);
}

MeasureChangeVerification verify_measure_change(const OptionSpec& option, const HtbParams& params,
                                                const RiskPremiumSpec& spec, const PathGrid& grid,
                                                std::size_t n_paths, std::uint64_t master_seed,
                                                unsigned n_workers) {
  option.validate();
  if (option.maturity != grid.horizon)
    throw InvalidInputError("verify_measure_change: option maturity must equal the grid horizon");

  const double discount = std::exp(-params.r * grid.horizon);

  struct PerVariant {
    std::vector<double> weight;
    std::vector<double> weighted_payoff;
  };
  PerVariant corrected{std::vector<double>(n_paths), std::vector<double>(n_paths)};
  PerVariant uncorrelated{std::vector<double>(n_paths), std::vector<double>(n_paths)};
  PerVariant independent{std::vector<double>(n_paths), std::vector<double>(n_paths)};

  for_each_path(Measure::kP, params, spec, grid, n_paths, master_seed, n_workers,
                [&](std::size_t i, const Path& path) {
                  const double pay = discount * payoff_european(option, path.states.back().s);
                  const auto fill = [&](PerVariant& v, DensityVariant variant) {
                    const double m = std::exp(log_density(variant, path, params, spec));
                    v.weight[i] = m;
                    v.weighted_payoff[i] = m * pay;
                  };
                  fill(corrected, DensityVariant::kCorrected);
                  fill(uncorrelated, DensityVariant::kUncorrelated);
                  fill(independent, DensityVariant::kIndependent);
                });

  const auto unit_check = [](const PerVariant& v) {
    const MeanEstimate est = mean_and_se(v.weight);
    double z = 0.0;
    if (est.std_error > 0.0)
      z = (est.mean - 1.0) / est.std_error;
    else if (est.mean != 1.0)
      z = est.mean > 1.0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
    return UnitExpectationCheck{est.mean, est.std_error, z, est.n};
  };
  const auto reweighted_price = [&](const PerVariant& v) {
    const MeanEstimate est = mean_and_se(v.weighted_payoff);
    return PriceEstimate{est.mean, est.std_error, n_paths, PriceMethod::kReweightedP};
  };

  MeasureChangeVerification out{
      unit_check(corrected),
      unit_check(uncorrelated),
      unit_check(independent),
      price_direct_q(option, params, spec, grid, n_paths, derived_seed(master_seed, 1),
                     n_workers),
      reweighted_price(corrected),
      reweighted_price(uncorrelated),
      {},
      {}};
  out.consistency_corrected = estimator_consistency(out.reweighted_corrected, out.direct_q);
  out.discrepancy_uncorrelated = estimator_consistency(out.reweighted_uncorrelated, out.direct_q);
  return out;
}

}  // namespace htb
