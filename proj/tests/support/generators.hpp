#pragma once

#include <random>
#include <string>
#include <vector>

#include "fms/syntax.hpp"

namespace fmstest {

struct TermShape {
  std::vector<std::string> names;
  std::vector<std::string> constants;
  std::string function = "*";
  int maxVariable = 3;
};

inline fms::ArgList randomTerm(std::mt19937_64& g, const TermShape& shape, int depth) {
  std::uniform_int_distribution<int> coin(0, 2);
  if (depth == 0 || coin(g) == 0) {
    std::size_t leaves = shape.names.size() + shape.constants.size() + static_cast<std::size_t>(shape.maxVariable);
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, leaves - 1)(g);
    if (pick < shape.names.size()) return fms::ArgList::name(shape.names[pick]);
    pick -= shape.names.size();
    if (pick < shape.constants.size()) return fms::ArgList::symbol(shape.constants[pick]);
    pick -= shape.constants.size();
    return fms::ArgList::variable(static_cast<fms::VarIndex>(pick + 1));
  }
  std::vector<fms::ArgList> kids{randomTerm(g, shape, depth - 1), randomTerm(g, shape, depth - 1)};
  return fms::ArgList::apply(shape.function, kids);
}

inline fms::ArgList randomGroundTerm(std::mt19937_64& g, const TermShape& shape, int depth) {
  TermShape ground = shape;
  ground.maxVariable = 0;
  return randomTerm(g, ground, depth);
}

// Random formulas over equations of random terms and the given predicates
// (name, arity), arity 0 included.
inline fms::Formula randomFormula(std::mt19937_64& g, const TermShape& shape,
                                  const std::vector<std::pair<std::string, int>>& predicates, int depth) {
  std::uniform_int_distribution<int> pick(0, 8);
  int k = depth == 0 ? 0 : pick(g);
  if (k <= 1) {
    if (k == 1 && !predicates.empty()) {
      const auto& [p, arity] = predicates[std::uniform_int_distribution<std::size_t>(0, predicates.size() - 1)(g)];
      std::vector<fms::ArgList> args;
      for (int i = 0; i < arity; ++i) args.push_back(randomTerm(g, shape, 2));
      return fms::Formula::pred(p, args);
    }
    return fms::Formula::eq(randomTerm(g, shape, 2), randomTerm(g, shape, 2));
  }
  if (k == 2) return fms::Formula::negation(randomFormula(g, shape, predicates, depth - 1));
  if (k <= 6) {
    static const fms::FormulaKind kinds[] = {fms::FormulaKind::Implies, fms::FormulaKind::Iff, fms::FormulaKind::And,
                                             fms::FormulaKind::Or};
    return fms::Formula::binary(kinds[k - 3], randomFormula(g, shape, predicates, depth - 1),
                                randomFormula(g, shape, predicates, depth - 1));
  }
  auto var = static_cast<fms::VarIndex>(std::uniform_int_distribution<int>(1, shape.maxVariable)(g));
  fms::Formula body = randomFormula(g, shape, predicates, depth - 1);
  return k == 7 ? fms::Formula::forAll(var, body) : fms::Formula::exists(var, body);
}

}  // namespace fmstest
