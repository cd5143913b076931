#pragma once

#include <stdexcept>
#include <string>

namespace resavg {

// Process exit codes used by the CLI.
enum class ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kRuntimeAbort = 3,
  kResourceGuard = 4,
};

// Schema or validation failure in a configuration document. The message
// carries the offending key path ("noise.b0").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A trajectory produced a non-finite amplitude.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double tau, long long step)
      : std::runtime_error(what), tau_(tau), step_(step) {}
  double tau() const { return tau_; }
  long long step() const { return step_; }

 private:
  double tau_;
  long long step_;
};

// A combinatorial or memory guard tripped before work started.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace resavg
