#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fms/structure.hpp"

namespace fms {

// A finite window onto the formulas of a structure's language.
//   connectiveDepth: nesting of connectives and quantifiers
//   listDepth: depth of every argument list
//   maxQuantifiers: nesting of quantifiers
//   maxAtoms: atoms per formula
//   maxNames: how many of the structure's names (in order) may occur; -1 for all
// A quantifier at scope k binds x(k+1), and its variable must occur in its body.
struct FragmentBounds {
  int connectiveDepth = 1;
  int listDepth = 1;
  int maxQuantifiers = 1;
  int maxAtoms = 2;
  int maxNames = -1;
  std::size_t cap = kDefaultEnumerationCap;
};

// Formulas within the bounds whose free variables lie among x1..x(freeVars),
// ordered by size and then by printed form. With freeVars = 0 every formula is
// closed.
std::vector<Formula> enumerateFragment(const FiniteTermStructure& structure, const FragmentBounds& bounds,
                                       VarIndex freeVars = 0);

struct FragmentPartition {
  std::vector<Formula> valid;
  std::vector<Formula> invalid;
};

FragmentPartition enumerateValidFragment(const FiniteTermStructure& structure, const FragmentBounds& bounds);

// A name c with ex x F <-> F c/x valid: the first name satisfying F, or the
// first name when none does.
std::string henkinWitness(const FiniteTermStructure& structure, VarIndex var, const Formula& formula);

using ClosedEvaluator = std::function<Truth(const Formula&)>;

struct FragmentReport {
  std::size_t total = 0;
  std::size_t valid = 0;
  std::size_t invalid = 0;
  std::size_t existentials = 0;   // valid formulas of the form ex x F
  std::size_t witnessesChecked = 0;

  bool partitionOk = true;        // every formula in exactly one part
  bool complementarityOk = true;  // exactly one of F, !F is valid
  bool witnessesOk = true;        // every witness instance is valid

  std::optional<Formula> partitionFailure;
  std::optional<Formula> complementFailure;
  std::optional<Formula> witnessFailure;

  bool ok() const { return partitionOk && complementarityOk && witnessesOk; }
};

// Checks the fragment with `evaluator`, which defaults to evalClosed on the
// structure.
FragmentReport fragmentConsistencyReport(const FiniteTermStructure& structure, const FragmentBounds& bounds,
                                         const ClosedEvaluator& evaluator = {});

}  // namespace fms
