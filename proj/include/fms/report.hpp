#pragma once

// Line-oriented reports shared by the C API and the command-line tool. A
// report is affirmative when the question it answers came out positive.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fms/henkin.hpp"
#include "fms/language.hpp"
#include "fms/morphism.hpp"
#include "fms/structure.hpp"

namespace fms {

struct Report {
  bool affirmative = true;
  std::string text;
};

std::string formatAssignment(const Assignment& assignment);
std::string formatMap(const Morphism& psi);

Report reportParseFormula(const LanguageSpec& spec, std::string_view formula);
Report reportParseList(const LanguageSpec& spec, std::string_view list);
Report reportEval(const Structure& structure, std::string_view formula);
Report reportValid(const Structure& structure, std::string_view formula);
Report reportCheckModel(const Structure& structure, const std::vector<Formula>& axioms);
Report reportPush(const Morphism& psi, std::string_view list);
Report reportMorphism(const Morphism& psi, bool iso, int depthBound);
Report reportEnumerateMorphisms(const std::shared_ptr<const Structure>& source,
                                const std::shared_ptr<const Structure>& target, bool iso);
Report reportHenkin(const Structure& structure, const FragmentBounds& bounds);
Report reportWitness(const Structure& structure, VarIndex var, std::string_view formula);
Report reportCondition4(const Structure& structure, int bound);
// op: tc, pow, union, inter, diff, pair, product, choice, reg, friendly, rank, transitive
Report reportHF(std::string_view op, const std::vector<std::string>& operands);

}  // namespace fms
