#include "scl/error.hpp"

namespace scl {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::TrivialWord: return "TrivialWord";
    case Errc::NotHomologicallyTrivial: return "NotHomologicallyTrivial";
    case Errc::OracleTooLarge: return "OracleTooLarge";
    case Errc::Timeout: return "Timeout";
    case Errc::UnbalancedSigns: return "UnbalancedSigns";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DegenerateFamily: return "DegenerateFamily";
    case Errc::MissingExternalScl: return "MissingExternalScl";
    case Errc::InvalidSurface: return "InvalidSurface";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::NegativeScl: return "NegativeScl";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InternalInvariantViolation: return "InternalInvariantViolation";
  }
  return "Unknown";
}

}  // namespace scl
