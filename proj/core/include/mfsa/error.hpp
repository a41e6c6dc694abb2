#pragma once

#include <stdexcept>
#include <string>

namespace mfsa {

// Every failure the library can signal. Codes are stable identifiers so
// callers (and the CLI) can react without parsing messages.
enum class Errc {
  EmptyInput,
  NonPositivePrice,
  MissingTags,
  ZeroProfileMinute,
  UnknownMinute,
  ZeroVariance,
  LengthMismatch,
  NegativeMagnitude,
  InvalidConfig,
  WindowTooLarge,
  SingularFit,
  InsufficientScales,
  GridMismatch,
  ZeroDeltaH,
  TooShort,
  InvalidH,
  InvalidSpec,
  DomainError,
  LagTooLarge,
  DegenerateRange,
  OutOfRange,
  NonPositiveForLog,
  InsufficientBins,
  ConvergenceFailure,
  MalformedInput,
  IoFailure,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

// Throws InvalidConfig/etc. when `ok` is false; used for precondition checks.
inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace mfsa
