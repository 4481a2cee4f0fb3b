#include "htb/stats.hpp"

#include <cmath>
#include <vector>

#include "htb/errors.hpp"

namespace htb {

namespace {

// Straight sum below this size; recursion overhead stops paying off.
constexpr std::size_t kPairwiseBlock = 64;

double pairwise_sum_impl(const double* xs, std::size_t n) {
  if (n <= kPairwiseBlock) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum_impl(xs.data(), xs.size());
}

MeanEstimate mean_and_se(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw InvalidInputError("mean_and_se: empty sample");
  const double mean = pairwise_sum(xs) / static_cast<double>(n);
  if (n == 1) return {mean, 0.0, n};

  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = xs[i] - mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

}  // namespace htb
