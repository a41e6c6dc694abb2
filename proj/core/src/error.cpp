#include "mfsa/error.hpp"

namespace mfsa {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NonPositivePrice: return "NonPositivePrice";
    case Errc::MissingTags: return "MissingTags";
    case Errc::ZeroProfileMinute: return "ZeroProfileMinute";
    case Errc::UnknownMinute: return "UnknownMinute";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NegativeMagnitude: return "NegativeMagnitude";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::WindowTooLarge: return "WindowTooLarge";
    case Errc::SingularFit: return "SingularFit";
    case Errc::InsufficientScales: return "InsufficientScales";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::ZeroDeltaH: return "ZeroDeltaH";
    case Errc::TooShort: return "TooShort";
    case Errc::InvalidH: return "InvalidH";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::DomainError: return "DomainError";
    case Errc::LagTooLarge: return "LagTooLarge";
    case Errc::DegenerateRange: return "DegenerateRange";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NonPositiveForLog: return "NonPositiveForLog";
    case Errc::InsufficientBins: return "InsufficientBins";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

}  // namespace mfsa
