#pragma once

#include <cstdint>
#include <vector>

#include "htb/params.hpp"

namespace htb {

/// Uniform time grid for one simulation horizon.
/// Construction enforces dt > 0 and the jump-fidelity bound
/// lambda_max * dt <= 0.1, which keeps every per-step Bernoulli jump
/// probability small enough that the thinning error stays O(dt^2).
struct PathGrid {
  PathGrid(double horizon, int n_steps, double lambda_max);

  double horizon;
  int n_steps;
  double dt;
};

enum class Measure { kP, kQ };

inline const char* measure_name(Measure m) { return m == Measure::kP ? "P" : "Q"; }

/// One discretized trajectory with everything needed to re-weight it later:
/// states on the grid nodes (n_steps + 1 of them), the independent driver
/// increments and jump flags per step, and the measure it was simulated under.
struct Path {
  PathGrid grid;
  Measure measure;
  std::vector<MarketState> states;
  std::vector<double> db1;
  std::vector<double> db2;
  std::vector<std::uint8_t> jumps;
};

/// A collection of paths plus the inputs that produced it. Path i is a pure
/// function of (master_seed, i); worker count and scheduling never change it.
struct Ensemble {
  PathGrid grid;
  Measure measure;
  HtbParams params;
  RiskPremiumSpec risk_premium;
  std::uint64_t master_seed;
  std::vector<Path> paths;
};

}  // namespace htb
