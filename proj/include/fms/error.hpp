#pragma once

#include <stdexcept>
#include <string>

namespace fms {

enum class ErrorCode {
  Lex,
  Arity,
  UnboundSymbol,
  Syntax,
  NotGround,
  NonGroundSubstituent,
  NotInLanguage,
  NotClosed,
  NameCollision,
  ExplosionGuard,
  Incomparable,
  LanguageMismatch,
  StructureMismatch,
  NotInvertible,
  UniverseTooLarge,
  NotClosedUnderX,
  TooLarge,
  EmptyInput,
  PreconditionViolated,
  InvalidDefinition,
  Io,
};

const char* errorCodeName(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto fms_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fms
