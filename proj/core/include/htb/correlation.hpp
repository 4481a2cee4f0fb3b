#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace htb {

/// One step's worth of driver increments: the independent pair (db1, db2)
/// actually drawn, and the correlated pair (dw, dz) fed to the dynamics.
/// Invariants: dw == db1 and dz == rho*db1 + sqrt(1-rho^2)*db2.
struct DriverIncrement {
  double db1;
  double db2;
  double dw;
  double dz;
};

/// Builds the correlated pair from independent increments:
///   dw = db1,  dz = rho*db1 + sqrt(1-rho^2)*db2.
/// Throws InvalidInputError when |rho| > 1 - 1e-6.
DriverIncrement make_correlated(double db1, double db2, double rho);

/// Sample moments of terminal (W_t, Z_t) values against their theoretical
/// targets: cov -> rho*t, var_w -> t, var_z -> t. z-scores are
/// (estimate - target) / SE with SEs estimated from the same sample.
struct CovariationEstimate {
  double cov_wz, var_w, var_z;
  double se_cov, se_var_w, se_var_z;
  double z_cov, z_var_w, z_var_z;
  std::size_t n;
};

/// Requires at least 100 samples (throws InvalidInputError otherwise) and a
/// valid rho. horizon is the time t at which the terminal values were taken.
CovariationEstimate estimate_covariation(std::span<const std::pair<double, double>> wz,
                                         double horizon, double rho);

/// Draws n terminal (W_t, Z_t) pairs at the given horizon, one deterministic
/// stream per sample index. Exact for Brownian motion (single N(0, t) draw
/// per driver).
std::vector<std::pair<double, double>> sample_terminal_drivers(std::size_t n, double horizon,
                                                               double rho,
                                                               std::uint64_t master_seed,
                                                               unsigned n_workers);

}  // namespace htb
