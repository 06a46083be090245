#include "fms/error.hpp"

namespace fms {

const char* errorCodeName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Lex: return "LexError";
    case ErrorCode::Arity: return "ArityError";
    case ErrorCode::UnboundSymbol: return "UnboundSymbol";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::NotGround: return "NotGround";
    case ErrorCode::NonGroundSubstituent: return "NonGroundSubstituent";
    case ErrorCode::NotInLanguage: return "NotInLanguage";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::ExplosionGuard: return "ExplosionGuard";
    case ErrorCode::Incomparable: return "Incomparable";
    case ErrorCode::LanguageMismatch: return "LanguageMismatch";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::NotClosedUnderX: return "NotClosedUnderX";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidDefinition: return "InvalidDefinition";
    case ErrorCode::Io: return "IoError";
  }
  return "UnknownError";
}

}  // namespace fms
