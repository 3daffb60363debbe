#pragma once

#include <stdexcept>
#include <string>

namespace gfz {

enum class ErrorCode {
  Parse,
  DegenerateInput,
  DimensionMismatch,
  UnsupportedKind,
  KindMismatch,
  Resource,
  Numeric,
  SingularOperator,
  FitFailure,
  Parameter,
  Io,
};

/// All library failures throw this; `code()` identifies the failure class
/// so callers (CLI, bindings) can map it to exit codes without string
/// matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace gfz
