#pragma once

#include <stdexcept>
#include <string>

namespace peq {

// Invalid configuration or parameter values. line() is 0 when the error is
// not tied to a config-file line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Non-finite values, solver non-convergence, aborted runs.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A monitored inequality (Poincare, envelope, dissipation, constraint) failed.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace peq
