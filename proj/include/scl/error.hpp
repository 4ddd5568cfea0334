#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scl {

enum class Errc {
  ParseError,
  InvalidArgument,
  TrivialWord,
  NotHomologicallyTrivial,
  OracleTooLarge,
  Timeout,
  UnbalancedSigns,
  ArityMismatch,
  DegenerateFamily,
  MissingExternalScl,
  InvalidSurface,
  InvalidInput,
  NegativeScl,
  EmptyInput,
  InternalInvariantViolation,
};

std::string_view errc_name(Errc code) noexcept;

// Every recoverable failure in the library is reported as an scl::Error
// carrying one of the codes above; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace scl
