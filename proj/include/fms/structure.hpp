#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fms/language.hpp"
#include "fms/syntax.hpp"

namespace fms {

// Unknown only arises from quantifiers over an infinite universe.
enum class Truth { False, True, Unknown };

const char* truthName(Truth t) noexcept;
inline Truth truthOf(bool b) { return b ? Truth::True : Truth::False; }

using Element = std::string;

// Counts work done by one evaluation. An atom evaluation decides one
// equation or predicate instance.
struct EvalStats {
  std::uint64_t atomEvaluations = 0;
  std::uint64_t quantifierInstances = 0;
};

// The name substituted for each quantified variable, innermost last.
struct Binding {
  VarIndex var;
  std::string name;
};
using Assignment = std::vector<Binding>;

class Structure {
 public:
  virtual ~Structure() = default;

  virtual std::string kindName() const = 0;
  virtual const LanguageSpec& language() const = 0;
  virtual const NameSet& names() const = 0;

  // D on a ground list of the name-extended language.
  virtual Element evalList(const ArgList& ground) const = 0;
  // D(list with each bound variable replaced by its name). The default
  // performs the substitution and calls evalList.
  virtual Element evalUnder(const ArgList& list, const Assignment& assignment) const;

  virtual bool isElement(const Element& e) const = 0;
  // The individual named by `name`, i.e. D restricted to the names.
  virtual Element elementOf(std::string_view name) const = 0;
  virtual std::string nameOf(const Element& e) const = 0;

  // Names the quantifiers range over; exact when they name every individual.
  virtual const std::vector<std::string>& quantifierNames() const = 0;
  virtual bool quantifiersExact() const = 0;

  // A finite, deterministic set of names for bounded sweeps.
  virtual std::vector<std::string> sampleNames(int bound) const = 0;

  virtual bool predicateHolds(const std::string& symbol, std::span<const Element> args) const = 0;
  virtual bool nullaryHolds(const std::string& symbol) const = 0;
  // True when the predicate holds whenever all its arguments are equal.
  virtual bool reflexive(const std::string&, std::size_t) const { return false; }
};

struct FiniteTermDefinition {
  explicit FiniteTermDefinition(LanguageSpec lang) : language(std::move(lang)) {}

  LanguageSpec language;
  std::vector<std::string> universe;
  // element -> name; elements missing here are named "$<element>".
  std::map<std::string, std::string> names;
  std::map<std::string, std::string> constants;
  // function -> (argument tuple -> value)
  std::map<std::string, std::map<std::vector<std::string>, std::string>> functions;
  // (predicate, arity >= 1) -> tuples; undeclared pairs are empty.
  std::map<std::pair<std::string, std::size_t>, std::set<std::vector<std::string>>> predicates;
  std::map<std::string, bool> nullary;
};

class FiniteTermStructure : public Structure {
 public:
  using Index = std::uint32_t;
  using PredicateKey = std::pair<std::string, std::size_t>;

  explicit FiniteTermStructure(const FiniteTermDefinition& def);

  std::string kindName() const override { return "finite-term"; }
  const LanguageSpec& language() const override { return language_; }
  const NameSet& names() const override { return names_; }
  Element evalList(const ArgList& ground) const override;
  Element evalUnder(const ArgList& list, const Assignment& assignment) const override;
  bool isElement(const Element& e) const override { return index_.count(e) > 0; }
  Element elementOf(std::string_view name) const override;
  std::string nameOf(const Element& e) const override;
  const std::vector<std::string>& quantifierNames() const override { return names_.names(); }
  bool quantifiersExact() const override { return true; }
  std::vector<std::string> sampleNames(int) const override { return names_.names(); }
  bool predicateHolds(const std::string& symbol, std::span<const Element> args) const override;
  bool nullaryHolds(const std::string& symbol) const override;

  std::size_t size() const { return universe_.size(); }
  const std::vector<std::string>& universe() const { return universe_; }
  Index indexOf(const Element& e) const;
  Index indexOfName(std::string_view name) const;
  const std::string& nameAt(Index i) const { return names_.names()[i]; }

  Index evalIndex(const ArgList& ground) const;
  // Evaluates the list starting at token `at`, advancing `at` past it.
  Index evalUnderIndex(const ArgList& list, const Assignment& assignment, std::size_t& at) const;
  Index constantValue(const std::string& constant) const { return constants_.at(constant); }
  Index applyFunction(const std::string& function, std::span<const Index> args) const;
  std::uint32_t arity(const std::string& function) const;

  const std::map<PredicateKey, std::set<std::vector<Index>>>& predicateTables() const { return predicates_; }
  const std::map<std::string, bool>& nullaryTable() const { return nullary_; }

  // The definition this structure was built from, with defaults made explicit.
  FiniteTermDefinition definition() const;

  friend bool operator==(const FiniteTermStructure& a, const FiniteTermStructure& b);

 private:
  struct FunctionTable {
    std::uint32_t arity;
    std::vector<Index> values;  // mixed-radix index over argument tuples
  };

  Index evalTokens(std::span<const ArgToken> tokens, std::size_t& at, const Assignment* assignment) const;

  LanguageSpec language_;
  std::vector<std::string> universe_;
  std::unordered_map<std::string, Index> index_;
  NameSet names_;
  std::unordered_map<std::string, Index> nameIndex_;
  std::map<std::string, Index> constants_;
  std::map<std::string, FunctionTable> functions_;
  std::map<PredicateKey, std::set<std::vector<Index>>> predicates_;
  std::map<std::string, bool> nullary_;
};

enum class StringPredicateKind { EqualLength, IsPrefix, EqualsLiteral, SameString };

struct StringPredicate {
  StringPredicateKind kind;
  std::string literal;  // EqualsLiteral only, spelled as an element
};

const char* stringPredicateName(StringPredicateKind kind) noexcept;

// Universe: every nonempty variable-free string over the atoms. An element is
// spelled by concatenating its atoms when all atoms are single characters and
// by joining them with '.' otherwise; its name is "$" followed by that
// spelling. Evaluation replaces every name by its string.
class StringStructure : public Structure {
 public:
  using PredicateKey = std::pair<std::string, std::size_t>;

  StringStructure(std::vector<std::string> atoms, std::map<PredicateKey, StringPredicate> predicates,
                  int quantBound);

  std::string kindName() const override { return "string"; }
  const LanguageSpec& language() const override { return language_; }
  const NameSet& names() const override { return names_; }
  Element evalList(const ArgList& ground) const override;
  bool isElement(const Element& e) const override { return decode(e).has_value(); }
  Element elementOf(std::string_view name) const override;
  std::string nameOf(const Element& e) const override;
  const std::vector<std::string>& quantifierNames() const override { return quantifierNames_; }
  bool quantifiersExact() const override { return false; }
  std::vector<std::string> sampleNames(int bound) const override;
  bool predicateHolds(const std::string& symbol, std::span<const Element> args) const override;
  bool nullaryHolds(const std::string&) const override { return false; }
  bool reflexive(const std::string& symbol, std::size_t arity) const override;

  const std::vector<std::string>& atoms() const { return atoms_; }
  int quantBound() const { return quantBound_; }
  const std::map<PredicateKey, StringPredicate>& predicates() const { return predicates_; }

  std::optional<std::vector<std::string>> decode(std::string_view spelling) const;
  Element encode(std::span<const std::string> atoms) const;
  // All elements of length 1..maxLength, shorter first, then lexicographic.
  std::vector<Element> elementsUpTo(int maxLength) const;

 private:
  std::vector<std::string> atoms_;
  bool compact_;
  LanguageSpec language_;
  NameSet names_;
  std::map<PredicateKey, StringPredicate> predicates_;
  int quantBound_;
  std::vector<std::string> quantifierNames_;
};

// Truth of a closed formula. Quantifiers run over the structure's names.
Truth evalClosed(const Structure& structure, const Formula& formula, EvalStats* stats = nullptr);

// Evaluation under an assignment of names to the formula's free variables.
Truth evalAssigned(const Structure& structure, const Formula& formula, const Assignment& assignment,
                   EvalStats* stats = nullptr);

// all x_i1 ... all x_im F over free(F), lowest index outermost.
Formula universalClosure(const Formula& formula);

Truth isValid(const Structure& structure, const Formula& formula, EvalStats* stats = nullptr);

// Throws NotInLanguage unless every list of `formula` lies in the structure's
// name-extended language.
void requireInLanguage(const Structure& structure, const Formula& formula);

struct ModelVerdict {
  enum class Status { Model, Counterexample, Undetermined };

  Status status = Status::Model;
  std::vector<Truth> perAxiom;
  std::size_t validCount = 0;
  // First axiom that is not valid.
  std::optional<std::size_t> axiomIndex;
  std::optional<Formula> axiom;
  // Falsifying names for the axiom's free variables, and the resulting instance.
  Assignment assignment;
  std::optional<Formula> instance;
};

ModelVerdict isModel(const Structure& structure, const std::vector<Formula>& axioms, EvalStats* stats = nullptr);

// First assignment (free variables by index, names in quantifier order) under
// which `formula` evaluates to false, if any.
std::optional<Assignment> findFalsifyingAssignment(const Structure& structure, const Formula& formula);

Formula instantiate(const Formula& formula, const Assignment& assignment);

struct Condition4Violation {
  ArgList list;
  ArgList substituent;
  Element direct;
  Element viaName;
};

struct Condition4Report {
  int bound = 0;
  std::size_t pairsChecked = 0;
  std::size_t violationCount = 0;
  std::vector<Condition4Violation> violations;  // the first few, in sweep order
};

// Sweeps D(l mu/x) = D(l alpha_D(mu)/x) over lists l containing x and ground
// mu built from the language leaves and the structure's sample names. For term
// grammars the pairs satisfy depth(l) + depth(mu) <= bound; for string grammars
// both lengths are at most bound.
Condition4Report checkCondition4(const Structure& structure, int bound, VarIndex var = 1,
                                 std::size_t keepViolations = 10);

}  // namespace fms
