// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line each. Exit status is the number of failed criteria.
//
// Statistical gates use |z| <= 3 with seeds fixed below, so outcomes are
// reproducible run to run.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "htb/correlation.hpp"
#include "htb/girsanov.hpp"
#include "htb/harness.hpp"
#include "htb/model.hpp"
#include "htb/pricing.hpp"
#include "htb/simulator.hpp"
#include "htb/stats.hpp"

#ifndef HTB_CLI_PATH
#error "HTB_CLI_PATH must point at the htb binary"
#endif

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int id, bool pass, const std::string& label, const std::string& detail) {
  if (!pass) ++g_failures;
  std::cout << "criterion " << id << " [" << (pass ? "PASS" : "FAIL") << "] " << label << ": "
            << detail << '\n';
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

htb::HtbParams measure_grid_params(double rho) {
  htb::HtbParams p;
  p.sigma = 0.3;
  p.kappa = 0.5;
  p.rho = rho;
  p.gamma = 0.05;
  p.alpha = 1.0;
  p.x_bar = 0.0;
  p.beta = 0.5;
  p.r = 0.01;
  p.lambda0 = 2.0;
  p.s0 = 100.0;
  p.x0 = 0.0;
  p.lambda_max = 50.0;
  return p;
}

constexpr std::size_t kPaths = 100'000;
const unsigned kWorkers = htb::worker_count_from_env();

// --- criterion 1: correlated-driver construction ---------------------------

void criterion_1() {
  const auto start = Clock::now();
  const auto samples = htb::sample_terminal_drivers(kPaths, 1.0, 0.6, 1001, kWorkers);
  const htb::CovariationEstimate est = htb::estimate_covariation(samples, 1.0, 0.6);
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

  const bool pass =
      std::abs(est.z_cov) <= 3.0 && std::abs(est.z_var_z) <= 3.0 && elapsed < 5.0;
  report(1, pass, "correlated-driver moments",
         "cov=" + fmt(est.cov_wz) + " (z=" + fmt(est.z_cov) + "), var_z=" + fmt(est.var_z) +
             " (z=" + fmt(est.z_var_z) + "), " + fmt(elapsed) + "s");
}

// --- criterion 2: market-price-of-risk solver -------------------------------

void criterion_2() {
  const htb::MarketPriceVector u = htb::solve_market_price_vector(1.0, 2.0, 0.5);
  bool pass = std::abs(u.u2 - std::sqrt(3.0)) <= 1e-12;
  std::string detail = "u2=" + fmt(u.u2);

  std::mt19937_64 gen(20250811);
  std::uniform_real_distribution<double> coeff(-10.0, 10.0);
  std::uniform_real_distribution<double> rho_dist(-0.99, 0.99);
  double worst_residual = 0.0, worst_identity = 0.0;
  for (int i = 0; i < 10'000; ++i) {
    const double g = coeff(gen), th = coeff(gen), rho = rho_dist(gen);
    const htb::MarketPriceVector v = htb::solve_market_price_vector(g, th, rho);
    const double s = std::sqrt(1.0 - rho * rho);
    worst_residual = std::max(worst_residual,
                              std::max(std::abs(v.u1 - g), std::abs(rho * v.u1 + s * v.u2 - th)));
    const double lhs = v.u1 * v.u1 + v.u2 * v.u2;
    const double rhs = (g * g + th * th - 2.0 * rho * g * th) / (1.0 - rho * rho);
    worst_identity = std::max(worst_identity, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  pass = pass && worst_residual <= 1e-12 && worst_identity <= 1e-12;
  report(2, pass, "market-price-of-risk solver",
         detail + ", worst residual=" + fmt(worst_residual) +
             ", worst identity error=" + fmt(worst_identity) + " over 10^4 triples");
}

// --- criteria 3-5: density martingality, estimator consistency, defect -----

struct MeasureGridResult {
  double rho;
  htb::MeasureChangeVerification v;
  double seconds;
};

std::vector<MeasureGridResult> run_measure_grid() {
  // The stated configuration has lambda_max * dt = 0.2 at 250 steps, which
  // the grid's jump-fidelity bound rejects; 500 steps is the coarsest legal
  // grid for lambda_max = 50 on this horizon.
  const htb::PathGrid grid(1.0, 500, 50.0);
  const htb::OptionSpec option{htb::OptionKind::kCall, 100.0, 1.0};
  const auto spec = htb::RiskPremiumSpec::constant(0.1);

  std::vector<MeasureGridResult> results;
  std::uint64_t seed = 4201;
  for (const double rho : {-0.5, 0.0, 0.5}) {
    const auto start = Clock::now();
    const htb::MeasureChangeVerification v = htb::verify_measure_change(
        option, measure_grid_params(rho), spec, grid, kPaths, seed++, kWorkers);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    results.push_back({rho, v, seconds});
  }
  return results;
}

void criterion_3(const std::vector<MeasureGridResult>& grid) {
  bool pass = true;
  std::string detail;
  for (const auto& res : grid) {
    pass = pass && std::abs(res.v.unit_corrected.z_score) <= 3.0 && res.seconds < 60.0;
    detail += "rho=" + fmt(res.rho) + ": mean=" + fmt(res.v.unit_corrected.mean) +
              " z=" + fmt(res.v.unit_corrected.z_score) + " (" + fmt(res.seconds) + "s); ";
  }
  report(3, pass, "corrected density has unit expectation", detail);
}

void criterion_4(const std::vector<MeasureGridResult>& grid) {
  bool pass = true;
  std::string detail;
  for (const auto& res : grid) {
    pass = pass && std::abs(res.v.consistency_corrected.z_score) <= 3.0;
    detail += "rho=" + fmt(res.rho) + ": diff=" + fmt(res.v.consistency_corrected.difference) +
              " z=" + fmt(res.v.consistency_corrected.z_score) + "; ";
  }
  report(4, pass, "direct and reweighted prices agree", detail);
}

void criterion_5(const std::vector<MeasureGridResult>& grid) {
  const MeasureGridResult& res = grid.back();  // rho = 0.5
  const htb::UnitExpectationCheck& unc = res.v.unit_uncorrelated;
  const htb::ConsistencyCheck& disc = res.v.discrepancy_uncorrelated;
  const bool finite = std::isfinite(unc.mean) && std::isfinite(unc.std_error) &&
                      std::isfinite(unc.z_score) && std::isfinite(disc.difference) &&
                      std::isfinite(disc.combined_se) && std::isfinite(disc.z_score);
  const bool corrected_ok = std::abs(res.v.unit_corrected.z_score) <= 3.0 &&
                            std::abs(res.v.consistency_corrected.z_score) <= 3.0;
  report(5, finite && corrected_ok, "uncorrelated-density defect is measured",
         "unit mean=" + fmt(unc.mean) + " (z=" + fmt(unc.z_score) + "), price discrepancy=" +
             fmt(disc.difference) + " (z=" + fmt(disc.z_score) +
             "); corrected variant passes alongside");
}

// --- criterion 6: no-jump limit vs closed form ------------------------------

void criterion_6() {
  const htb::PriceEstimate bs = htb::black_scholes_reference(100.0, 100.0, 0.01, 0.3, 1.0);
  constexpr double kQuadratureCall = 12.368267463784075;  // frozen before the build
  const double quad_gap = std::abs(bs.value - kQuadratureCall);

  htb::HtbParams p = measure_grid_params(0.0);
  p.gamma = 0.0;
  p.lambda_max = 25.0;
  const htb::PathGrid grid(1.0, 250, p.lambda_max);
  const htb::OptionSpec option{htb::OptionKind::kCall, 100.0, 1.0};
  const htb::PriceEstimate mc = htb::price_direct_q(option, p, htb::RiskPremiumSpec::zero(),
                                                    grid, kPaths, 4400, kWorkers);
  const double gap = std::abs(mc.value - bs.value);
  const bool pass = quad_gap <= 1e-8 && gap <= 3.0 * mc.std_error;
  report(6, pass, "no-jump limit reproduces the closed form",
         "closed_form=" + fmt(bs.value) + " (quadrature gap " + fmt(quad_gap) + "), mc=" +
             fmt(mc.value) + " +- " + fmt(mc.std_error));
}

// --- criterion 7: cost-of-carry martingale ----------------------------------

void criterion_7() {
  const htb::PathGrid grid(1.0, 500, 50.0);
  const auto spec = htb::RiskPremiumSpec::constant(0.1);
  bool pass = true;
  std::string detail;
  std::uint64_t seed = 4301;
  for (const double rho : {-0.5, 0.0, 0.5}) {
    const htb::CarryCheck check = htb::carry_martingale_check(
        measure_grid_params(rho), spec, grid, kPaths, seed++, kWorkers);
    pass = pass && std::abs(check.z_score) <= 3.0;
    detail += "rho=" + fmt(rho) + ": mean=" + fmt(check.estimate) + " z=" +
              fmt(check.z_score) + "; ";
  }

  // dt-refinement on the deterministic degenerate configuration: the only
  // discretization defect left is the simple-vs-continuous compounding
  // mismatch, which halves with dt.
  htb::HtbParams degenerate = measure_grid_params(0.0);
  degenerate.sigma = 1e-12;
  degenerate.gamma = 0.0;
  degenerate.lambda_max = 25.0;
  const auto zero = htb::RiskPremiumSpec::zero();
  const double est_coarse =
      htb::carry_martingale_check(degenerate, zero, htb::PathGrid(1.0, 250, 25.0), 2000, 4310,
                                  kWorkers)
          .estimate;
  const double est_fine =
      htb::carry_martingale_check(degenerate, zero, htb::PathGrid(1.0, 500, 25.0), 2000, 4311,
                                  kWorkers)
          .estimate;
  const double gap_coarse = std::abs(est_coarse - 100.0);
  const double gap_fine = std::abs(est_fine - 100.0);
  const bool refines = gap_fine < gap_coarse;
  pass = pass && refines;
  detail += "refinement gap " + fmt(gap_coarse) + " -> " + fmt(gap_fine) +
            (refines ? " (shrinks)" : " (DOES NOT SHRINK)");
  report(7, pass, "cost-of-carry martingale", detail);
}

// --- criterion 8: mean-reverting marginal -----------------------------------

void criterion_8() {
  htb::HtbParams p;
  p.beta = 0.0;
  p.rho = 0.0;
  p.gamma = 0.0;
  p.alpha = 1.0;
  p.x0 = 0.5;
  p.x_bar = 0.0;
  p.kappa = 0.5;
  p.lambda_max = 25.0;
  const htb::PathGrid grid(1.0, 250, p.lambda_max);
  std::vector<double> x_t(kPaths);
  htb::for_each_path(htb::Measure::kP, p, htb::RiskPremiumSpec::zero(), grid, kPaths, 4500,
                     kWorkers,
                     [&](std::size_t i, const htb::Path& path) {
                       x_t[i] = path.states.back().x;
                     });
  const htb::MeanEstimate est = htb::mean_and_se(x_t);
  const double target = 0.5 * std::exp(-1.0);
  const bool pass = std::abs(est.mean - target) <= 3.0 * est.std_error;
  report(8, pass, "mean-reverting marginal",
         "mean x_T=" + fmt(est.mean) + " target=" + fmt(target) + " se=" + fmt(est.std_error));
}

// --- criterion 9: byte-identical artifacts ----------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing:" + path + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args, const char* workers) {
  if (workers)
    setenv("HTB_WORKERS", workers, 1);
  else
    unsetenv("HTB_WORKERS");
  const std::string cmd = std::string(HTB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  unsetenv("HTB_WORKERS");
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool determinism_case(const std::string& name, const std::string& config_body,
                      const std::string& command, std::string& detail) {
  const std::string cfg = "acceptance_" + name + ".cfg";
  {
    std::ofstream out(cfg, std::ios::binary);
    out << config_body;
  }
  const std::string base = command + " --config " + cfg + " --seed 777 --out ";
  struct Run {
    std::string out;
    const char* workers;
  };
  const std::vector<Run> runs = {{"acceptance_" + name + "_1.csv", nullptr},
                                 {"acceptance_" + name + "_2.csv", nullptr},
                                 {"acceptance_" + name + "_w1.csv", "1"},
                                 {"acceptance_" + name + "_w8.csv", "8"}};
  std::vector<int> codes;
  for (const Run& r : runs) codes.push_back(run_cli(base + r.out, r.workers));

  const std::string reference = slurp(runs.front().out);
  bool identical = !reference.empty() && reference.front() != '<';
  for (const Run& r : runs) identical = identical && slurp(r.out) == reference;
  bool same_codes = true;
  for (const int code : codes) same_codes = same_codes && code == codes.front() && code >= 0;

  detail += name + ": " + (identical ? "byte-identical" : "MISMATCH") + " across reruns and " +
            "workers {1,8}, exit=" + std::to_string(codes.front()) + "; ";
  for (const Run& r : runs) std::remove(r.out.c_str());
  std::remove(cfg.c_str());
  return identical && same_codes;
}

void criterion_9() {
  std::string detail;
  const bool corr = determinism_case("corr",
                                     "[model]\nrho = 0.6\n"
                                     "[run]\ncommand = verify-correlation\nn_paths = 50000\n",
                                     "verify-correlation", detail);
  const bool measure = determinism_case(
      "measure",
      "[model]\nrho = 0.5\nlambda_max = 25\n"
      "[risk_premium]\nvariant = constant\nc = 0.1\n"
      "[grid]\nn_steps = 250\n"
      "[run]\ncommand = verify-measure\nn_paths = 5000\n",
      "verify-measure", detail);
  report(9, corr && measure, "verify artifacts are byte-identical", detail);
}

// --- criterion 10: one-step compensation identity ---------------------------

void criterion_10() {
  htb::HtbParams p = measure_grid_params(0.0);
  double worst = 0.0;
  for (const double lambda : {0.0, 2.0, 50.0}) {
    for (const double dt : {1.0 / 250.0, 1.0 / 500.0}) {
      worst = std::max(worst, std::abs(htb::expected_one_step_return(lambda, dt, p)));
    }
  }
  p.gamma = 0.5;
  worst = std::max(worst, std::abs(htb::expected_one_step_return(25.0, 1.0 / 250.0, p)));
  report(10, worst <= 1e-12, "one-step compensation identity",
         "worst |E[dS/S]| = " + fmt(worst));
}

}  // namespace

int main() {
  std::cout << "acceptance suite (" << kWorkers << " workers)\n";
  criterion_1();
  criterion_2();
  const std::vector<MeasureGridResult> grid = run_measure_grid();
  criterion_3(grid);
  criterion_4(grid);
  criterion_5(grid);
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::cout << (g_failures == 0 ? "all criteria passed\n"
                                : std::to_string(g_failures) + " criterion(s) failed\n");
  return g_failures;
}
