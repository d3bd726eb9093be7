#pragma once

#include <stdexcept>
#include <string>

namespace kin {

// Invalid configuration or input files. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation outside the admissible domain (singular rate at zero,
// incompatible Poisson data, inadmissible coupling parameter).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// No decay certificate exists for the requested parameters (e.g. the
// certified lower rate bound vanishes).
struct NoCertificateError : std::runtime_error {
  explicit NoCertificateError(const std::string& msg) : std::runtime_error(msg) {}
};

// A run detected NaN or negative densities and stopped.
struct RunAbort : std::runtime_error {
  RunAbort(const std::string& msg, long step_index)
      : std::runtime_error(msg + " (step " + std::to_string(step_index) + ")"),
        step(step_index) {}
  long step;
};

}  // namespace kin
