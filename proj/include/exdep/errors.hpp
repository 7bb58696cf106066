#pragma once

#include <stdexcept>

namespace exdep {

// Error taxonomy mirrored by the CLI exit codes:
//   NumericError -> 1, ConfigError -> 2, CapabilityError -> 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A model lacks the facility the caller asked for (no exact sampler,
// no closed-form exponent function, wrong dimension class, ...).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation failed to converge or left its numeric domain.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace exdep
