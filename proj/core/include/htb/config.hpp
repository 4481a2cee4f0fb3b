#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "htb/params.hpp"
#include "htb/path.hpp"
#include "htb/pricing.hpp"

namespace htb {

enum class Command { kSimulate, kPrice, kVerifyMeasure, kVerifyCorrelation };

const char* command_name(Command c);

/// Fully validated run description. Every sub-config satisfies its own
/// invariants by construction; parse_config refuses anything else.
struct RunConfig {
  HtbParams params;
  RiskPremiumSpec risk_premium = RiskPremiumSpec::zero();
  PathGrid grid;
  std::optional<OptionSpec> option;
  std::size_t n_paths;
  std::uint64_t master_seed;
  Command command;
  Measure measure;          // which dynamics `simulate` exports
  std::string output_path;  // empty = stdout
};

/// Parses the flat INI-style config format (see README for the grammar):
/// '[section]' headers, 'key = value' lines, '#' comments. Unknown sections
/// or keys are rejected, as are out-of-range values and keys that conflict
/// with the selected variant; diagnostics name the offending "[section] key".
RunConfig parse_config(std::string_view text);

/// parse_config plus file loading, with the filename in diagnostics.
RunConfig load_config(const std::string& path);

}  // namespace htb
