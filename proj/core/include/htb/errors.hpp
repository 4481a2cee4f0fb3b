#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace htb {

/// Thrown when an argument violates a documented precondition or invariant.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a simulated state stops being finite (or a price stops being
/// positive). Carries the path and step at which the lattice broke; either
/// index may be npos when the failing call had no such context.
class SimulationDivergedError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  SimulationDivergedError(std::string what, std::size_t path_index, std::size_t step_index)
      : std::runtime_error(std::move(what)), path_index(path_index), step_index(step_index) {}

  std::size_t path_index;
  std::size_t step_index;
};

/// Thrown when a pathwise log-density accumulation stops being finite.
class DensityOverflowError : public std::runtime_error {
 public:
  DensityOverflowError(std::string what, std::size_t step_index)
      : std::runtime_error(std::move(what)), step_index(step_index) {}

  std::size_t step_index;
};

/// Thrown by the config parser; the message names the offending key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace htb
