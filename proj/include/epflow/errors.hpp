#ifndef EPFLOW_ERRORS_HPP
#define EPFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace epflow {

/// Failure categories surfaced by the solver. The CLI maps ConfigError to
/// exit code 2 and everything else to exit code 3.
enum class ErrorKind {
  ConfigError,
  DenominatorSingular,
  NonPhysicalState,
  DegenerateCell,
  DegenerateEigensystem,
  IntegrationFailure,
  NoConvergence,
  MeshTangled,
  SolverFailure,
  DomainMismatch,
};

const char* to_string(ErrorKind kind);

class SolverError : public std::runtime_error {
public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Convenience throwers so call sites stay one line.
[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw SolverError(kind, what);
}

} // namespace epflow

#endif
