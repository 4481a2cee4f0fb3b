#pragma once

#include <cstdint>
#include <functional>

#include "htb/correlation.hpp"
#include "htb/path.hpp"

namespace htb {

/// Bernoulli thinning of the buy-in process: xi = 1 iff u < lambda * dt.
/// Valid while lambda * dt stays small (the grid guarantees <= 0.1).
int jump_indicator(double lambda, double dt, double u);

/// One Euler step under the physical measure:
///   S' = S * (1 + sigma*dw + gamma*lambda*dt) * (1-gamma)^xi
///   x' = x + kappa*dz + alpha*(x_bar - x)*dt + beta*(S'/S - 1)
/// The jump is applied multiplicatively so the price stays positive for
/// gamma < 1; the coupling feeds the realized return, jump included.
/// Throws SimulationDivergedError if the step leaves the valid region.
MarketState step_p(const MarketState& state, const DriverIncrement& inc, int xi, double dt,
                   const HtbParams& params, const RiskPremiumSpec& spec);

/// One Euler step under the pricing measure:
///   S' = S * (1 + sigma*dw + r*dt) * (1-gamma)^xi
///   x' = x + kappa*dz - alpha*z(t,x,S)*dt + alpha*(x_bar - x)*dt + beta*(S'/S - 1)
/// The -alpha*z dt drift is what the drift-shifted intensity driver induces in
/// the x-equation; the jump intensity itself is unchanged between measures.
MarketState step_q(const MarketState& state, const DriverIncrement& inc, int xi, double dt,
                   const HtbParams& params, const RiskPremiumSpec& spec);

/// Simulates path `path_index` of the (master_seed)-ensemble. Deterministic in
/// (master_seed, path_index) alone.
Path simulate_path(Measure measure, const HtbParams& params, const RiskPremiumSpec& spec,
                   const PathGrid& grid, std::uint64_t master_seed, std::uint64_t path_index);

/// Runs fn(path_index, path) for every path in [0, n_paths), fanning out over
/// n_workers threads. fn is called once per index, possibly concurrently for
/// distinct indices; it must not assume any ordering. Because paths are pure
/// functions of (master_seed, index), the set of calls is identical for any
/// worker count. Exceptions from workers are rethrown on the calling thread.
void for_each_path(Measure measure, const HtbParams& params, const RiskPremiumSpec& spec,
                   const PathGrid& grid, std::size_t n_paths, std::uint64_t master_seed,
                   unsigned n_workers,
                   const std::function<void(std::size_t, const Path&)>& fn);

/// Materializes a full ensemble. Prefer for_each_path for large reductions;
/// a 10^5-path ensemble at 500 steps holds ~10 doubles per step per path.
Ensemble simulate_ensemble(Measure measure, const HtbParams& params, const RiskPremiumSpec& spec,
                           const PathGrid& grid, std::size_t n_paths, std::uint64_t master_seed,
                           unsigned n_workers = 1);

}  // namespace htb
