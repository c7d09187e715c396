#pragma once

#include <stdexcept>
#include <string>

namespace isac {

/// Thrown when a model function receives inputs outside its domain
/// (negative powers, zero ranges, no radar echo to estimate, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or out-of-range configuration. `line()` is 1-based, 0 when the
/// problem is not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace isac
