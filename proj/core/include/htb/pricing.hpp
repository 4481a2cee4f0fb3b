#pragma once

#include <cstdint>

#include "htb/girsanov.hpp"
#include "htb/path.hpp"

namespace htb {

enum class OptionKind { kCall, kPut };

/// European option contract. maturity must be positive and equal to the grid
/// horizon when priced by simulation.
struct OptionSpec {
  OptionKind kind;
  double strike;
  double maturity;

  void validate() const;
};

enum class PriceMethod { kDirectQ, kReweightedP, kClosedForm };

const char* price_method_name(PriceMethod m);

struct PriceEstimate {
  double value;
  double std_error;
  std::size_t n_paths;
  PriceMethod method;
};

/// max(S_T - K, 0) for calls, max(K - S_T, 0) for puts.
double payoff_european(const OptionSpec& spec, double s_terminal);

/// Black-Scholes closed form; the degenerate-case oracle for gamma = 0.
/// std_error is exactly 0.
PriceEstimate black_scholes_reference(double s0, double strike, double r, double sigma,
                                      double maturity, OptionKind kind = OptionKind::kCall);

/// Discounted expectation over a freshly simulated pricing-measure ensemble.
PriceEstimate price_direct_q(const OptionSpec& option, const HtbParams& params,
                             const RiskPremiumSpec& spec, const PathGrid& grid,
                             std::size_t n_paths, std::uint64_t master_seed,
                             unsigned n_workers = 1);

/// Discounted reweighted expectation over a physical-measure ensemble, using
/// the requested density variant as the importance weight. The corrected
/// variant is the estimator of record; the uncorrelated one is exposed so its
/// bias can be measured against price_direct_q.
PriceEstimate price_reweighted_p(const OptionSpec& option, const HtbParams& params,
                                 const RiskPremiumSpec& spec, const PathGrid& grid,
                                 std::size_t n_paths, std::uint64_t master_seed,
                                 unsigned n_workers = 1,
                                 DensityVariant variant = DensityVariant::kCorrected);

/// Difference between two independent estimates with combined standard error
/// and z = diff / se. Engine-side so report writers only format.
struct ConsistencyCheck {
  double difference;
  double combined_se;
  double z_score;
};

ConsistencyCheck estimator_consistency(const PriceEstimate& a, const PriceEstimate& b);

/// Cost-of-carry identity under the pricing measure:
///   E[ e^{-rT} S_T + sum_k gamma * lambda_k * e^{-r t_k} * S_k * dt ] = s0,
/// left endpoints throughout. Returns the sample mean, SE and
/// z = (mean - s0)/SE.
struct CarryCheck {
  double estimate;
  double std_error;
  double z_score;
  std::size_t n;
};

/// Materialized-ensemble form; throws InvalidInputError unless the ensemble
/// was simulated under Q.
CarryCheck carry_martingale_check(const Ensemble& ensemble_q, const HtbParams& params);

/// Streaming form for large path counts.
CarryCheck carry_martingale_check(const HtbParams& params, const RiskPremiumSpec& spec,
                                  const PathGrid& grid, std::size_t n_paths,
                                  std::uint64_t master_seed, unsigned n_workers = 1);

/// Everything the measure-change verification reports, computed in one
/// physical-measure sweep (all three density variants plus the reweighted
/// payoffs share each simulated path) and one pricing-measure sweep with an
/// independently derived seed.
struct MeasureChangeVerification {
  UnitExpectationCheck unit_corrected;
  UnitExpectationCheck unit_uncorrelated;
  UnitExpectationCheck unit_independent;
  PriceEstimate direct_q;
  PriceEstimate reweighted_corrected;
  PriceEstimate reweighted_uncorrelated;
  ConsistencyCheck consistency_corrected;    // reweighted_corrected vs direct_q
  ConsistencyCheck discrepancy_uncorrelated; // reweighted_uncorrelated vs direct_q
};

MeasureChangeVerification verify_measure_change(const OptionSpec& option, const HtbParams& params,
                                                const RiskPremiumSpec& spec, const PathGrid& grid,
                                                std::size_t n_paths, std::uint64_t master_seed,
                                                unsigned n_workers = 1);

}  // namespace htb
