#pragma once

#include <string_view>
#include <vector>

#include "fms/language.hpp"
#include "fms/syntax.hpp"

namespace fms {

// Prefix formula syntax:
//   formula := "~" list "," list | PRED (list ("," list)*)? | "!" formula
//            | ("->" | "<->" | "&" | "|") formula formula | ("all" | "ex") VAR formula
//   term list   := VAR | NAME | CONST | FUNC "(" list+ ")"
//   string list := "[" (ATOM | VAR | NAME)+ "]"
// Formula-level tokens are separated by whitespace; "(", ")", "[", "]" and ","
// also delimit tokens on their own.
Formula parseFormula(std::string_view text, const LanguageSpec& spec);
ArgList parseList(std::string_view text, const LanguageSpec& spec);

// One formula per line; blank lines and '#' comments are skipped.
std::vector<Formula> parseFormulaFile(std::string_view text, const LanguageSpec& spec);

}  // namespace fms
