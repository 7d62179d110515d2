#pragma once

#include <stdexcept>

namespace patrolsim {

// Raised for invalid configuration; the message names the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace patrolsim
