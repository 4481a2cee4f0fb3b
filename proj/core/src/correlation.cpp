#include "htb/correlation.hpp"

#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "htb/errors.hpp"
#include "htb/params.hpp"
#include "htb/rng.hpp"
#include "htb/stats.hpp"

namespace htb {

DriverIncrement make_correlated(double db1, double db2, double rho) {
  if (!(std::abs(rho) <= kMaxAbsRho)) {
    std::ostringstream msg;
    msg << "make_correlated: rho = " << rho << " violates |rho| <= 1 - 1e-6";
    throw InvalidInputError(msg.str());
  }
  const double dz = rho * db1 + std::sqrt(1.0 - rho * rho) * db2;
  return DriverIncrement{db1, db2, db1, dz};
}

CovariationEstimate estimate_covariation(std::span<const std::pair<double, double>> wz,
                                         double horizon, double rho) {
  if (wz.size() < 100)
    throw InvalidInputError("estimate_covariation: need at least 100 samples");
  if (!(std::abs(rho) <= kMaxAbsRho))
    throw InvalidInputError("estimate_covariation: rho out of range");
  if (!(horizon > 0.0)) throw InvalidInputError("estimate_covariation: horizon must be positive");

  const std::size_t n = wz.size();
  std::vector<double> ws(n), zs(n);
  for (std::size_t i = 0; i < n; ++i) {
    ws[i] = wz[i].first;
    zs[i] = wz[i].second;
  }
  const double w_mean = pairwise_sum(ws) / static_cast<double>(n);
  const double z_mean = pairwise_sum(zs) / static_cast<double>(n);

  // Per-sample centered products; their mean is the moment estimate and the
  // spread of the same values gives its standard error.
  std::vector<double> prod(n), wsq(n), zsq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dw = ws[i] - w_mean;
    const double dz = zs[i] - z_mean;
    prod[i] = dw * dz;
    wsq[i] = dw * dw;
    zsq[i] = dz * dz;
  }
  const MeanEstimate cov = mean_and_se(prod);
  const MeanEstimate var_w = mean_and_se(wsq);
  const MeanEstimate var_z = mean_and_se(zsq);

  CovariationEstimate est;
  est.cov_wz = cov.mean;
  est.var_w = var_w.mean;
  est.var_z = var_z.mean;
  est.se_cov = cov.std_error;
  est.se_var_w = var_w.std_error;
  est.se_var_z = var_z.std_error;
  est.z_cov = (cov.mean - rho * horizon) / cov.std_error;
  est.z_var_w = (var_w.mean - horizon) / var_w.std_error;
  est.z_var_z = (var_z.mean - horizon) / var_z.std_error;
  est.n = n;
  return est;
}

std::vector<std::pair<double, double>> sample_terminal_drivers(std::size_t n, double horizon,
                                                               double rho,
                                                               std::uint64_t master_seed,
                                                               unsigned n_workers) {
  if (n == 0) throw InvalidInputError("sample_terminal_drivers: n must be positive");
  if (!(horizon > 0.0))
    throw InvalidInputError("sample_terminal_drivers: horizon must be positive");
  if (!(std::abs(rho) <= kMaxAbsRho))
    throw InvalidInputError("sample_terminal_drivers: rho out of range");

  std::vector<std::pair<double, double>> out(n);
  const double scale = std::sqrt(horizon);
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      PathRng rng(master_seed, i);
      double z0 = 0.0, z1 = 0.0;
      rng.gaussian_pair(z0, z1);
      const DriverIncrement inc = make_correlated(z0 * scale, z1 * scale, rho);
      out[i] = {inc.dw, inc.dz};
    }
  };

  if (n_workers <= 1 || n < 2 * n_workers) {
    worker(0, n);
    return out;
  }
  std::vector<std::thread> threads;
  const std::size_t chunk = (n + n_workers - 1) / n_workers;
  for (unsigned w = 0; w < n_workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= n) break;
    threads.emplace_back(worker, begin, std::min(n, begin + chunk));
  }
  for (auto& t : threads) t.join();
  return out;
}

}  // namespace htb
