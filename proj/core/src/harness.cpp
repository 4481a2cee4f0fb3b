#include "htb/harness.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "htb/correlation.hpp"
#include "htb/csv.hpp"
#include "htb/errors.hpp"
#include "htb/girsanov.hpp"
#include "htb/pricing.hpp"
#include "htb/rng.hpp"
#include "htb/simulator.hpp"

namespace htb {

namespace {

constexpr double kZGate = 3.0;

std::string params_echo(const RunConfig& c) {
  const HtbParams& p = c.params;
  std::ostringstream out;
  out << "sigma=" << format_double(p.sigma) << ";kappa=" << format_double(p.kappa)
      << ";rho=" << format_double(p.rho) << ";gamma=" << format_double(p.gamma)
      << ";alpha=" << format_double(p.alpha) << ";x_bar=" << format_double(p.x_bar)
      << ";beta=" << format_double(p.beta) << ";r=" << format_double(p.r)
      << ";lambda0=" << format_double(p.lambda0) << ";s0=" << format_double(p.s0)
      << ";x0=" << format_double(p.x0) << ";lambda_max=" << format_double(p.lambda_max)
      << ";z=" << c.risk_premium.describe() << ";horizon=" << format_double(c.grid.horizon)
      << ";n_steps=" << c.grid.n_steps;
  return out.str();
}

VerificationReport make_report(std::string check, double estimate, double std_error,
                               double z_score, bool asserted, const RunConfig& c,
                               const std::string& echo) {
  return VerificationReport{std::move(check), estimate,    std_error,
                            z_score,          std::abs(z_score) <= kZGate,
                            asserted,         c.master_seed,
                            c.n_paths,        echo};
}

/// Writes the artifact through `emit` to the configured destination.
void write_artifact(const RunConfig& c, const std::function<void(std::ostream&)>& emit) {
  if (c.output_path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream out(c.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + c.output_path + "'");
  emit(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for output file '" + c.output_path + "'");
}

void print_report_summary(const std::vector<VerificationReport>& reports) {
  for (const auto& rep : reports) {
    std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << rep.check
              << " estimate=" << format_double(rep.estimate)
              << " se=" << format_double(rep.std_error) << " z=" << format_double(rep.z_score)
              << (rep.asserted ? "" : " (diagnostic)") << '\n';
  }
  std::cout << "note: each check gates on |z| <= 3 (~99.7% per check); "
               "running several checks inflates family-wise error.\n";
}

int exit_from_reports(const std::vector<VerificationReport>& reports) {
  for (const auto& rep : reports)
    if (rep.asserted && !rep.pass) return kExitCheckFailed;
  return kExitPass;
}

/// The option the verification payoff uses when the config has none:
/// an at-the-money call settling at the horizon.
OptionSpec option_or_atm_call(const RunConfig& c) {
  if (c.option) return *c.option;
  return OptionSpec{OptionKind::kCall, c.params.s0, c.grid.horizon};
}

int run_simulate(const RunConfig& c, unsigned workers) {
  write_artifact(c, [&](std::ostream& out) {
    write_paths_csv_header(out);
    // Chunked so exports of many paths never hold the whole ensemble; rows
    // stay in path order regardless of worker count.
    const std::size_t chunk = std::max<std::size_t>(std::size_t(workers) * 4, 16);
    std::vector<Path> slots;
    for (std::size_t begin = 0; begin < c.n_paths; begin += chunk) {
      const std::size_t end = std::min(c.n_paths, begin + chunk);
      slots.assign(end - begin, Path{c.grid, c.measure, {}, {}, {}, {}});
      std::vector<std::thread> threads;
      const std::size_t per = (slots.size() + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * per;
        if (lo >= slots.size()) break;
        const std::size_t hi = std::min(slots.size(), lo + per);
        threads.emplace_back([&, lo, hi] {
          for (std::size_t j = lo; j < hi; ++j)
            slots[j] = simulate_path(c.measure, c.params, c.risk_premium, c.grid,
                                     c.master_seed, begin + j);
        });
      }
      for (auto& t : threads) t.join();
      for (std::size_t j = 0; j < slots.size(); ++j)
        write_path_csv_rows(out, slots[j], begin + j);
    }
  });
  std::cout << "simulate: wrote " << c.n_paths << " path(s)"
            << (c.output_path.empty() ? "" : " to " + c.output_path) << '\n';
  return kExitPass;
}

int run_price(const RunConfig& c, unsigned workers) {
  const OptionSpec option = *c.option;  // presence enforced by parse_config
  const PriceEstimate direct =
      price_direct_q(option, c.params, c.risk_premium, c.grid, c.n_paths, c.master_seed, workers);
  const PriceEstimate reweighted =
      price_reweighted_p(option, c.params, c.risk_premium, c.grid, c.n_paths,
                         derived_seed(c.master_seed, 1), workers);
  const ConsistencyCheck consistency = estimator_consistency(direct, reweighted);

  const bool has_closed_form = c.params.gamma == 0.0;
  PriceEstimate closed{0.0, 0.0, 0, PriceMethod::kClosedForm};
  ConsistencyCheck vs_closed{};
  if (has_closed_form) {
    closed = black_scholes_reference(c.params.s0, option.strike, c.params.r, c.params.sigma,
                                     option.maturity, option.kind);
    vs_closed = estimator_consistency(direct, closed);
  }

  write_artifact(c, [&](std::ostream& out) {
    const auto emit_method = [&](const PriceEstimate& e, std::uint64_t seed) {
      out << "method=" << price_method_name(e.method) << " value=" << format_double(e.value)
          << " std_error=" << format_double(e.std_error) << " n_paths=" << e.n_paths
          << " seed=" << seed << '\n';
    };
    emit_method(direct, c.master_seed);
    emit_method(reweighted, derived_seed(c.master_seed, 1));
    if (has_closed_form) emit_method(closed, 0);
    out << "consistency direct_q_vs_reweighted_p diff=" << format_double(consistency.difference)
        << " combined_se=" << format_double(consistency.combined_se)
        << " z=" << format_double(consistency.z_score) << '\n';
    if (has_closed_form)
      out << "consistency direct_q_vs_closed_form diff=" << format_double(vs_closed.difference)
          << " combined_se=" << format_double(vs_closed.combined_se)
          << " z=" << format_double(vs_closed.z_score) << '\n';
    out << "params " << params_echo(c) << '\n';
    out << "option kind=" << (option.kind == OptionKind::kCall ? "call" : "put")
        << " strike=" << format_double(option.strike)
        << " maturity=" << format_double(option.maturity) << '\n';
    out << "run n_paths=" << c.n_paths << " master_seed=" << c.master_seed << '\n';
  });
  std::cout << "price " << price_method_name(direct.method) << "=" << format_double(direct.value)
            << " " << price_method_name(reweighted.method) << "="
            << format_double(reweighted.value)
            << (has_closed_form ? " closed_form=" + format_double(closed.value) : "") << '\n';
  return kExitPass;
}

int run_verify_measure(const RunConfig& c, unsigned workers) {
  const OptionSpec option = option_or_atm_call(c);
  const MeasureChangeVerification v = verify_measure_change(
      option, c.params, c.risk_premium, c.grid, c.n_paths, c.master_seed, workers);

  const std::string echo = params_echo(c);
  std::vector<VerificationReport> reports;
  reports.push_back(make_report("unit_expectation/corrected", v.unit_corrected.mean,
                                v.unit_corrected.std_error, v.unit_corrected.z_score, true, c,
                                echo));
  reports.push_back(make_report("unit_expectation/uncorrelated", v.unit_uncorrelated.mean,
                                v.unit_uncorrelated.std_error, v.unit_uncorrelated.z_score,
                                false, c, echo));
  reports.push_back(make_report("unit_expectation/independent", v.unit_independent.mean,
                                v.unit_independent.std_error, v.unit_independent.z_score, false,
                                c, echo));
  reports.push_back(make_report("price_consistency/corrected_vs_direct",
                                v.consistency_corrected.difference,
                                v.consistency_corrected.combined_se,
                                v.consistency_corrected.z_score, true, c, echo));
  reports.push_back(make_report("price_discrepancy/uncorrelated_vs_direct",
                                v.discrepancy_uncorrelated.difference,
                                v.discrepancy_uncorrelated.combined_se,
                                v.discrepancy_uncorrelated.z_score, false, c, echo));

  write_artifact(c, [&](std::ostream& out) { write_reports_csv(out, reports); });
  print_report_summary(reports);
  const int code = exit_from_reports(reports);
  std::cout << "verify-measure: " << (code == kExitPass ? "PASS" : "FAIL") << '\n';
  return code;
}

int run_verify_correlation(const RunConfig& c, unsigned workers) {
  const auto samples = sample_terminal_drivers(c.n_paths, c.grid.horizon, c.params.rho,
                                               c.master_seed, workers);
  const CovariationEstimate est = estimate_covariation(samples, c.grid.horizon, c.params.rho);

  const std::string echo = params_echo(c);
  std::vector<VerificationReport> reports;
  reports.push_back(
      make_report("covariation/cov_wz", est.cov_wz, est.se_cov, est.z_cov, true, c, echo));
  reports.push_back(
      make_report("covariation/var_w", est.var_w, est.se_var_w, est.z_var_w, true, c, echo));
  reports.push_back(
      make_report("covariation/var_z", est.var_z, est.se_var_z, est.z_var_z, true, c, echo));

  write_artifact(c, [&](std::ostream& out) { write_reports_csv(out, reports); });
  print_report_summary(reports);
  const int code = exit_from_reports(reports);
  std::cout << "verify-correlation: " << (code == kExitPass ? "PASS" : "FAIL") << '\n';
  return code;
}

}  // namespace

void write_reports_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
  out << "check,estimate,std_error,z_score,pass,asserted,seed,n_paths,params\n";
  for (const auto& rep : reports) {
    out << rep.check << ',' << format_double(rep.estimate) << ','
        << format_double(rep.std_error) << ',' << format_double(rep.z_score) << ','
        << (rep.pass ? "true" : "false") << ',' << (rep.asserted ? "true" : "false") << ','
        << rep.seed << ',' << rep.n_paths << ',' << rep.params_echo << '\n';
  }
}

unsigned worker_count_from_env() {
  if (const char* env = std::getenv("HTB_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? hw : 1;
}

int run(const RunConfig& config) {
  const unsigned workers = worker_count_from_env();
  switch (config.command) {
    case Command::kSimulate:
      return run_simulate(config, workers);
    case Command::kPrice:
      return run_price(config, workers);
    case Command::kVerifyMeasure:
      return run_verify_measure(config, workers);
    case Command::kVerifyCorrelation:
      return run_verify_correlation(config, workers);
  }
  return kExitRuntimeError;
}

}  // namespace htb
