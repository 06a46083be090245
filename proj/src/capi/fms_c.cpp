#include "fms/fms.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fms/error.hpp"
#include "fms/io.hpp"
#include "fms/parser.hpp"
#include "fms/report.hpp"

struct fms_language {
  fms::LanguageSpec spec;
};

struct fms_structure {
  std::shared_ptr<const fms::Structure> ptr;
};

struct fms_morphism {
  fms::Morphism morphism;
};

namespace {

std::string& lastError() {
  thread_local std::string message;
  return message;
}

fms_status toStatus(fms::ErrorCode code) {
  using fms::ErrorCode;
  switch (code) {
    case ErrorCode::Lex: return FMS_ERR_LEX;
    case ErrorCode::Arity: return FMS_ERR_ARITY;
    case ErrorCode::UnboundSymbol: return FMS_ERR_UNBOUND_SYMBOL;
    case ErrorCode::Syntax: return FMS_ERR_SYNTAX;
    case ErrorCode::NotGround: return FMS_ERR_NOT_GROUND;
    case ErrorCode::NonGroundSubstituent: return FMS_ERR_NON_GROUND_SUBSTITUENT;
    case ErrorCode::NotInLanguage: return FMS_ERR_NOT_IN_LANGUAGE;
    case ErrorCode::NotClosed: return FMS_ERR_NOT_CLOSED;
    case ErrorCode::NameCollision: return FMS_ERR_NAME_COLLISION;
    case ErrorCode::ExplosionGuard: return FMS_ERR_EXPLOSION_GUARD;
    case ErrorCode::Incomparable: return FMS_ERR_INCOMPARABLE;
    case ErrorCode::LanguageMismatch: return FMS_ERR_LANGUAGE_MISMATCH;
    case ErrorCode::StructureMismatch: return FMS_ERR_STRUCTURE_MISMATCH;
    case ErrorCode::NotInvertible: return FMS_ERR_NOT_INVERTIBLE;
    case ErrorCode::UniverseTooLarge: return FMS_ERR_UNIVERSE_TOO_LARGE;
    case ErrorCode::NotClosedUnderX: return FMS_ERR_NOT_CLOSED_UNDER_X;
    case ErrorCode::TooLarge: return FMS_ERR_TOO_LARGE;
    case ErrorCode::EmptyInput: return FMS_ERR_EMPTY_INPUT;
    case ErrorCode::PreconditionViolated: return FMS_ERR_PRECONDITION_VIOLATED;
    case ErrorCode::InvalidDefinition: return FMS_ERR_INVALID_DEFINITION;
    case ErrorCode::Io: return FMS_ERR_IO;
  }
  return FMS_ERR_INTERNAL;
}

template <typename Body>
fms_status guard(Body&& body) {
  lastError().clear();
  try {
    body();
    return FMS_OK;
  } catch (const fms::Error& e) {
    lastError() = std::string(fms::errorCodeName(e.code())) + ": " + e.what();
    return toStatus(e.code());
  } catch (const std::bad_alloc&) {
    lastError() = "out of memory";
    return FMS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    lastError() = std::string("internal error: ") + e.what();
    return FMS_ERR_INTERNAL;
  } catch (...) {
    lastError() = "internal error";
    return FMS_ERR_INTERNAL;
  }
}

fms_status invalid(const char* what) {
  lastError() = std::string("invalid argument: ") + what;
  return FMS_ERR_INVALID_ARGUMENT;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fms_status emit(const fms::Report& r, char** report, int* affirmative) {
  *report = duplicate(r.text);
  *affirmative = r.affirmative ? 1 : 0;
  return FMS_OK;
}

fms_truth toTruth(fms::Truth t) {
  switch (t) {
    case fms::Truth::False: return FMS_FALSE;
    case fms::Truth::True: return FMS_TRUE;
    case fms::Truth::Unknown: return FMS_UNKNOWN;
  }
  return FMS_UNKNOWN;
}

}  // namespace

extern "C" {

const char* fms_last_error(void) { return lastError().c_str(); }

const char* fms_status_name(fms_status status) {
  switch (status) {
    case FMS_OK: return "OK";
    case FMS_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case FMS_ERR_INTERNAL: return "InternalError";
    default:
      break;
  }
  if (status > FMS_OK && status <= FMS_ERR_IO) {
    return fms::errorCodeName(static_cast<fms::ErrorCode>(static_cast<int>(status) - 1));
  }
  return "UnknownStatus";
}

void fms_free_string(char* s) { std::free(s); }

fms_status fms_language_load(const char* path, fms_language** out) {
  if (!path || !out) return invalid("null pointer");
  return guard([&] { *out = new fms_language{fms::loadLanguage(path)}; });
}

fms_status fms_language_from_json(const char* json, fms_language** out) {
  if (!json || !out) return invalid("null pointer");
  return guard([&] { *out = new fms_language{fms::parseLanguageJson(json)}; });
}

void fms_language_free(fms_language* language) { delete language; }

fms_status fms_structure_load(const char* path, fms_structure** out) {
  if (!path || !out) return invalid("null pointer");
  return guard([&] { *out = new fms_structure{fms::loadStructure(path)}; });
}

fms_status fms_structure_from_json(const char* json, const char* base_dir, fms_structure** out) {
  if (!json || !out) return invalid("null pointer");
  return guard([&] { *out = new fms_structure{fms::parseStructureJson(json, base_dir ? base_dir : "")}; });
}

void fms_structure_free(fms_structure* structure) { delete structure; }

fms_status fms_structure_language(const fms_structure* structure, fms_language** out) {
  if (!structure || !out) return invalid("null pointer");
  return guard([&] { *out = new fms_language{structure->ptr->language()}; });
}

fms_status fms_structure_size(const fms_structure* structure, size_t* out) {
  if (!structure || !out) return invalid("null pointer");
  return guard([&] {
    const auto* finite = dynamic_cast<const fms::FiniteTermStructure*>(structure->ptr.get());
    if (!finite) throw fms::Error(fms::ErrorCode::TooLarge, "the universe is infinite");
    *out = finite->size();
  });
}

fms_status fms_morphism_load(const char* path, fms_morphism** out) {
  if (!path || !out) return invalid("null pointer");
  return guard([&] { *out = new fms_morphism{fms::loadMorphism(path)}; });
}

void fms_morphism_free(fms_morphism* morphism) { delete morphism; }

fms_status fms_eval_truth(const fms_structure* structure, const char* formula, fms_truth* out) {
  if (!structure || !formula || !out) return invalid("null pointer");
  return guard([&] {
    const fms::Structure& s = *structure->ptr;
    *out = toTruth(fms::evalClosed(s, fms::parseFormula(formula, s.language())));
  });
}

fms_status fms_valid_truth(const fms_structure* structure, const char* formula, fms_truth* out) {
  if (!structure || !formula || !out) return invalid("null pointer");
  return guard([&] {
    const fms::Structure& s = *structure->ptr;
    *out = toTruth(fms::isValid(s, fms::parseFormula(formula, s.language())));
  });
}

fms_status fms_eval_list(const fms_structure* structure, const char* list, char** element) {
  if (!structure || !list || !element) return invalid("null pointer");
  return guard([&] {
    const fms::Structure& s = *structure->ptr;
    fms::ArgList l = fms::parseList(list, s.language());
    if (!fms::memberL(s.language(), l, s.language().nameExtension())) {
      throw fms::Error(fms::ErrorCode::NotInLanguage, fms::toString(l) + " is not in the language");
    }
    *element = duplicate(s.evalList(l));
  });
}

fms_status fms_push_list(const fms_morphism* morphism, const char* list, char** pushed) {
  if (!morphism || !list || !pushed) return invalid("null pointer");
  return guard([&] {
    const fms::Morphism& m = morphism->morphism;
    *pushed = duplicate(fms::toString(fms::pushList(m, fms::parseList(list, m.source().language()))));
  });
}

fms_status fms_report_parse(const fms_language* language, const char* formula, char** report, int* affirmative) {
  if (!language || !formula || !report || !affirmative) return invalid("null pointer");
  return guard([&] { emit(fms::reportParseFormula(language->spec, formula), report, affirmative); });
}

fms_status fms_report_parse_list(const fms_language* language, const char* list, char** report, int* affirmative) {
  if (!language || !list || !report || !affirmative) return invalid("null pointer");
  return guard([&] { emit(fms::reportParseList(language->spec, list), report, affirmative); });
}

fms_status fms_report_eval(const fms_structure* structure, const char* formula, char** report, int* affirmative) {
  if (!structure || !formula || !report || !affirmative) return invalid("null pointer");
  return guard([&] { emit(fms::reportEval(*structure->ptr, formula), report, affirmative); });
}

fms_status fms_report_valid(const fms_structure* structure, const char* formula, char** report, int* affirmative) {
  if (!structure || !formula || !report || !affirmative) return invalid("null pointer");
  return guard([&] { emit(fms::reportValid(*structure->ptr, formula), report, affirmative); });
}

fms_status fms_report_check_model(const fms_structure* structure, const char* axioms_path, char** report,
                                  int* affirmative) {
  if (!structure || !axioms_path || !report || !affirmative) return invalid("null pointer");
  return guard([&] {
    const fms::Structure& s = *structure->ptr;
    emit(fms::reportCheckModel(s, fms::loadFormulas(axioms_path, s.language())), report, affirmative);
  });
}

fms_status fms_report_push(const fms_morphism* morphism, const char* list, char** report, int* affirmative) {
  if (!morphism || !list || !report || !affirmative) return invalid("null pointer");
  return guard([&] { emit(fms::reportPush(morphism->morphism, list), report, affirmative); });
}

fms_status fms_report_morphism(const fms_morphism* morphism, int iso, int depth_bound, char** report,
                               int* affirmative) {
  if (!morphism || !report || !affirmative) return invalid("null pointer");
  return guard([&] { emit(fms::reportMorphism(morphism->morphism, iso != 0, depth_bound), report, affirmative); });
}

fms_status fms_report_enum_morphisms(const fms_structure* source, const fms_structure* target, int iso,
                                     char** report, int* affirmative) {
  if (!source || !target || !report || !affirmative) return invalid("null pointer");
  return guard([&] { emit(fms::reportEnumerateMorphisms(source->ptr, target->ptr, iso != 0), report, affirmative); });
}

fms_status fms_report_henkin(const fms_structure* structure, const fms_fragment_bounds* bounds, char** report,
                             int* affirmative) {
  if (!structure || !bounds || !report || !affirmative) return invalid("null pointer");
  return guard([&] {
    fms::FragmentBounds b;
    b.connectiveDepth = bounds->connective_depth;
    b.listDepth = bounds->list_depth;
    b.maxQuantifiers = bounds->max_quantifiers;
    b.maxAtoms = bounds->max_atoms;
    b.maxNames = bounds->max_names;
    emit(fms::reportHenkin(*structure->ptr, b), report, affirmative);
  });
}

fms_status fms_report_witness(const fms_structure* structure, const char* variable, const char* formula,
                              char** report, int* affirmative) {
  if (!structure || !variable || !formula || !report || !affirmative) return invalid("null pointer");
  fms::VarIndex var = fms::variableIndex(variable);
  if (var == 0) return invalid("not a variable");
  return guard([&] { emit(fms::reportWitness(*structure->ptr, var, formula), report, affirmative); });
}

fms_status fms_report_cond4(const fms_structure* structure, int bound, char** report, int* affirmative) {
  if (!structure || !report || !affirmative) return invalid("null pointer");
  return guard([&] { emit(fms::reportCondition4(*structure->ptr, bound), report, affirmative); });
}

fms_status fms_report_hf(const char* op, const char* const* operands, size_t count, char** report,
                         int* affirmative) {
  if (!op || (count > 0 && !operands) || !report || !affirmative) return invalid("null pointer");
  return guard([&] {
    std::vector<std::string> args;
    for (size_t i = 0; i < count; ++i) {
      if (!operands[i]) throw fms::Error(fms::ErrorCode::Syntax, "null operand");
      args.emplace_back(operands[i]);
    }
    emit(fms::reportHF(op, args), report, affirmative);
  });
}

}  // extern "C"
