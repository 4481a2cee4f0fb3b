#include "htb/rng.hpp"

#include <cmath>
#include <numbers>

namespace htb {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derived_seed(std::uint64_t master_seed, std::uint64_t salt) {
  return splitmix64(splitmix64(master_seed) ^ (0xd1b54a32d192ed03ULL * (salt + 1)));
}

void PathRng::gaussian_pair(double& z0, double& z1) {
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  z0 = radius * std::cos(angle);
  z1 = radius * std::sin(angle);
}

}  // namespace htb
