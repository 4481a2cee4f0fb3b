#pragma once

#include <cstdint>
#include <random>

namespace htb {

/// splitmix64 mixing step; used to derive well-separated stream seeds from a
/// (master_seed, stream) pair.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for an auxiliary stream (e.g. the independent-seed companion ensemble
/// in two-estimator comparisons). salt distinguishes the consumers.
std::uint64_t derived_seed(std::uint64_t master_seed, std::uint64_t salt);

/// Per-path random stream. A stream is a pure function of
/// (master_seed, stream_id), so path i draws the same numbers no matter how
/// many workers run or in what order paths are simulated.
///
/// Draw layout: uniforms are 53-bit doubles in (0,1] taken straight from the
/// engine's bits, Gaussians come in Box-Muller pairs (two uniforms each).
/// Nothing here depends on implementation-defined <random> distributions.
class PathRng {
 public:
  PathRng(std::uint64_t master_seed, std::uint64_t stream_id)
      : engine_(splitmix64(master_seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1))) {}

  double uniform01() {
    // (0,1]: never 0, so log() in the Gaussian pair is safe.
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  void gaussian_pair(double& z0, double& z1);

 private:
  std::mt19937_64 engine_;
};

}  // namespace htb
