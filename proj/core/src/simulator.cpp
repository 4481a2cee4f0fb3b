#include "htb/simulator.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "htb/errors.hpp"
#include "htb/model.hpp"
#include "htb/rng.hpp"

namespace htb {

namespace {

constexpr double kJumpFidelityBound = 0.1;

void check_step(double t, double s, double x, double lambda) {
  if (std::isfinite(s) && std::isfinite(x) && std::isfinite(lambda) && s > 0.0) return;
  std::ostringstream msg;
  msg << "state left the valid region near t = " << t << " (s = " << s << ", x = " << x << ")";
  throw SimulationDivergedError(msg.str(), SimulationDivergedError::npos,
                                SimulationDivergedError::npos);
}

}  // namespace

PathGrid::PathGrid(double horizon_in, int n_steps_in, double lambda_max)
    : horizon(horizon_in), n_steps(n_steps_in), dt(horizon_in / n_steps_in) {
  if (!(horizon > 0.0) || n_steps < 1)
    throw InvalidInputError("PathGrid: horizon must be positive and n_steps >= 1");
  if (!(lambda_max > 0.0)) throw InvalidInputError("PathGrid: lambda_max must be positive");
  if (lambda_max * dt > kJumpFidelityBound) {
    std::ostringstream msg;
    msg << "PathGrid: lambda_max * dt = " << lambda_max * dt
        << " exceeds the jump-fidelity bound 0.1 (lambda_max = " << lambda_max
        << ", dt = " << dt << "); increase n_steps or lower lambda_max";
    throw InvalidInputError(msg.str());
  }
}

int jump_indicator(double lambda, double dt, double u) {
  return u < lambda * dt ? 1 : 0;
}

MarketState step_p(const MarketState& state, const DriverIncrement& inc, int xi, double dt,
                   const HtbParams& p, const RiskPremiumSpec& /*spec*/) {
  double s_next = state.s * (1.0 + p.sigma * inc.dw + p.gamma * state.lambda * dt);
  if (xi) s_next *= 1.0 - p.gamma;
  const double realized_return = s_next / state.s - 1.0;
  const double x_next =
      state.x + p.kappa * inc.dz + p.alpha * (p.x_bar - state.x) * dt + p.beta * realized_return;
  const double t_next = state.t + dt;
  const double lambda_next = intensity_from_log(x_next, p);
  check_step(t_next, s_next, x_next, lambda_next);
  return MarketState{t_next, s_next, x_next, lambda_next};
}

MarketState step_q(const MarketState& state, const DriverIncrement& inc, int xi, double dt,
                   const HtbParams& p, const RiskPremiumSpec& spec) {
  double s_next = state.s * (1.0 + p.sigma * inc.dw + p.r * dt);
  if (xi) s_next *= 1.0 - p.gamma;
  const double realized_return = s_next / state.s - 1.0;
  const double premium_drift = p.alpha * spec(state.t, state.x, state.s) * dt;
  const double x_next = state.x + p.kappa * inc.dz - premium_drift +
                        p.alpha * (p.x_bar - state.x) * dt + p.beta * realized_return;
  const double t_next = state.t + dt;
  const double lambda_next = intensity_from_log(x_next, p);
  check_step(t_next, s_next, x_next, lambda_next);
  return MarketState{t_next, s_next, x_next, lambda_next};
}

Path simulate_path(Measure measure, const HtbParams& params, const RiskPremiumSpec& spec,
                   const PathGrid& grid, std::uint64_t master_seed, std::uint64_t path_index) {
  const int n = grid.n_steps;
  Path path{grid, measure, {}, {}, {}, {}};
  path.states.reserve(static_cast<std::size_t>(n) + 1);
  path.db1.resize(static_cast<std::size_t>(n));
  path.db2.resize(static_cast<std::size_t>(n));
  path.jumps.resize(static_cast<std::size_t>(n));

  PathRng rng(master_seed, path_index);
  const double sqrt_dt = std::sqrt(grid.dt);

  MarketState state{0.0, params.s0, params.x0, intensity_from_log(params.x0, params)};
  path.states.push_back(state);

  for (int k = 0; k < n; ++k) {
    double z0 = 0.0, z1 = 0.0;
    rng.gaussian_pair(z0, z1);
    const double db1 = z0 * sqrt_dt;
    const double db2 = z1 * sqrt_dt;
    const DriverIncrement inc = make_correlated(db1, db2, params.rho);
    const double u = rng.uniform01();
    const int xi = jump_indicator(state.lambda, grid.dt, u);

    try {
      state = measure == Measure::kP ? step_p(state, inc, xi, grid.dt, params, spec)
                                     : step_q(state, inc, xi, grid.dt, params, spec);
    } catch (const SimulationDivergedError& e) {
      throw SimulationDivergedError(e.what(), path_index, static_cast<std::size_t>(k));
    }

    path.db1[static_cast<std::size_t>(k)] = db1;
    path.db2[static_cast<std::size_t>(k)] = db2;
    path.jumps[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(xi);
    path.states.push_back(state);
  }
  return path;
}

void for_each_path(Measure measure, const HtbParams& params, const RiskPremiumSpec& spec,
                   const PathGrid& grid, std::size_t n_paths, std::uint64_t master_seed,
                   unsigned n_workers,
                   const std::function<void(std::size_t, const Path&)>& fn) {
  if (n_paths == 0) throw InvalidInputError("for_each_path: n_paths must be >= 1");
  params.validate();

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Path path = simulate_path(measure, params, spec, grid, master_seed, i);
      fn(i, path);
    }
  };

  if (n_workers <= 1 || n_paths < 2 * n_workers) {
    run_range(0, n_paths);
    return;
  }

  std::vector<std::thread> threads;
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const std::size_t chunk = (n_paths + n_workers - 1) / n_workers;
  for (unsigned w = 0; w < n_workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= n_paths) break;
    const std::size_t end = std::min(n_paths, begin + chunk);
    threads.emplace_back([&, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

Ensemble simulate_ensemble(Measure measure, const HtbParams& params, const RiskPremiumSpec& spec,
                           const PathGrid& grid, std::size_t n_paths, std::uint64_t master_seed,
                           unsigned n_workers) {
  Ensemble ensemble{grid, measure, params, spec, master_seed, {}};
  ensemble.paths.resize(n_paths, Path{grid, measure, {}, {}, {}, {}});
  for_each_path(measure, params, spec, grid, n_paths, master_seed, n_workers,
                [&](std::size_t i, const Path& path) { ensemble.paths[i] = path; });
  return ensemble;
}

}  // namespace htb
