#pragma once

#include <stdexcept>
#include <string>

namespace monogamy {

enum class ErrorCode {
  InvalidArgument,
  UnknownObservable,
  DuplicateObservable,
  NotNormalized,
  CapExceeded,
  CycleDetected,
  Incompatible,
  MissingResponse,
  DimensionMismatch,
  InvalidState,
  AsymmetricState,
  GroupTooLarge,
  DisconnectedGraph,
  NonTransitive,
  NoGroundState,
  NumericalFailure,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so
/// callers (notably the CLI) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace monogamy
