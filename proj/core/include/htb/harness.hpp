#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "htb/config.hpp"

namespace htb {

/// One statistical check rendered into a report row. pass is exactly the
/// |z| <= 3 predicate on the reported numbers; asserted says whether the
/// check contributes to the process exit status (diagnostic rows, like the
/// deliberately biased density variant, are reported but never gate).
struct VerificationReport {
  std::string check;
  double estimate;
  double std_error;
  double z_score;
  bool pass;
  bool asserted;
  std::uint64_t seed;
  std::size_t n_paths;
  std::string params_echo;
};

/// check,estimate,std_error,z_score,pass,asserted,seed,n_paths,params
void write_reports_csv(std::ostream& out, const std::vector<VerificationReport>& reports);

/// Exit codes of the run() contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

/// Worker count for engine calls: HTB_WORKERS when set (>= 1), otherwise the
/// hardware concurrency. Results never depend on it.
unsigned worker_count_from_env();

/// Dispatches the configured command, writes its artifact to
/// config.output_path (stdout when empty), and prints a human summary.
/// Returns kExitPass iff every asserted check passed (commands without
/// asserted checks return kExitPass on success). Engine and I/O failures
/// surface as kExitRuntimeError.
int run(const RunConfig& config);

}  // namespace htb
