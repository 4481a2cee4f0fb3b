#pragma once

#include <cstddef>
#include <span>

namespace htb {

/// Sample mean with its standard error.
struct MeanEstimate {
  double mean;
  double std_error;
  std::size_t n;
};

/// Pairwise (cascade) summation. Deterministic for a given input order, so
/// reductions give byte-identical results regardless of how the values were
/// produced (serial or parallel map into an index-ordered buffer).
double pairwise_sum(std::span<const double> xs);

/// Mean and standard error, both accumulated pairwise. Requires n >= 1;
/// std_error is 0 when n == 1.
MeanEstimate mean_and_se(std::span<const double> xs);

}  // namespace htb
