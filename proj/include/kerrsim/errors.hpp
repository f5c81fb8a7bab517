#pragma once

#include <stdexcept>
#include <string>

namespace kerrsim {

// Invalid input: bad parameter values, malformed configuration, spectra
// that violate a stated precondition. Mapped to exit code 2 by the CLI.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A runtime numerical guard tripped: integrator norm drift, stiffness
// limit exceeded. Mapped to exit code 3 by the CLI.
class NumericalGuardError : public std::runtime_error {
 public:
  explicit NumericalGuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kerrsim
