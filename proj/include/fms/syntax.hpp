#pragma once

// Argument lists and formulas.
//
// An ArgList is stored as its preorder token sequence. Term lists use Symbol,
// Variable, Name and Apply tokens; string lists are a single Concat token
// followed by its leaves. Both are immutable values.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fms {

using VarIndex = std::uint32_t;

enum class AtomKind { AlphabetSymbol, Variable, Name, PredicateSymbol };

struct SymbolAtom {
  AtomKind kind;
  std::string ident;
};

enum class ArgKind : std::uint8_t { Symbol, Variable, Name, Apply, Concat };

struct ArgToken {
  ArgKind kind;
  // Variable index for Variable, child count for Apply and Concat, else 0.
  std::uint32_t count = 0;
  // Symbol text, name text (with its '$'), or function symbol.
  std::string text;

  friend bool operator==(const ArgToken&, const ArgToken&) = default;
  friend auto operator<=>(const ArgToken&, const ArgToken&) = default;
};

bool isNameToken(std::string_view token) noexcept;
// Returns 0 unless `token` spells a variable x1, x2, ...
VarIndex variableIndex(std::string_view token) noexcept;
std::string variableToken(VarIndex index);

class ArgList {
 public:
  static ArgList variable(VarIndex index);
  static ArgList name(std::string text);
  static ArgList symbol(std::string text);
  static ArgList apply(std::string function, std::span<const ArgList> children);
  // Concatenation of leaves and strings; nested strings are flattened.
  static ArgList concat(std::span<const ArgList> parts);
  static ArgList fromTokens(std::vector<ArgToken> tokens);

  ArgKind kind() const { return tokens_.front().kind; }
  const ArgToken& root() const { return tokens_.front(); }
  bool isString() const { return kind() == ArgKind::Concat; }
  bool isLeaf() const;
  std::span<const ArgToken> tokens() const { return tokens_; }
  // Immediate children of an Apply or Concat root; empty for leaves.
  std::vector<ArgList> children() const;

  std::set<VarIndex> variables() const;
  bool containsVariable(VarIndex var) const;
  bool isGround() const;
  // Distinct names in order of first occurrence (preorder, left to right).
  std::vector<std::string> names() const;
  // Nesting depth of Apply nodes for terms; number of leaves for strings.
  int depth() const;

  friend bool operator==(const ArgList&, const ArgList&) = default;
  friend auto operator<=>(const ArgList&, const ArgList&) = default;

 private:
  explicit ArgList(std::vector<ArgToken> tokens) : tokens_(std::move(tokens)) {}
  std::vector<ArgToken> tokens_;
};

std::string toString(const ArgList& list);

enum class FormulaKind { Eq, Pred, Not, Implies, Iff, And, Or, ForAll, Exists };

bool isBinary(FormulaKind kind) noexcept;
bool isQuantifier(FormulaKind kind) noexcept;
const char* connectiveToken(FormulaKind kind) noexcept;

class Formula {
 public:
  static Formula eq(ArgList left, ArgList right);
  static Formula pred(std::string symbol, std::vector<ArgList> args);
  static Formula negation(Formula operand);
  static Formula binary(FormulaKind kind, Formula left, Formula right);
  static Formula quantified(FormulaKind kind, VarIndex var, Formula body);
  static Formula forAll(VarIndex var, Formula body) {
    return quantified(FormulaKind::ForAll, var, std::move(body));
  }
  static Formula exists(VarIndex var, Formula body) {
    return quantified(FormulaKind::Exists, var, std::move(body));
  }

  FormulaKind kind() const;
  // Eq has two arguments, Pred any number.
  const std::vector<ArgList>& args() const;
  const std::string& predicate() const;
  std::size_t operandCount() const;
  const Formula& operand(std::size_t i) const;
  VarIndex boundVariable() const;

  std::set<VarIndex> freeVariables() const;
  bool isClosed() const { return freeVariables().empty(); }
  // Every argument list occurring in the formula, in print order.
  std::vector<ArgList> argLists() const;
  // Number of printed tokens; used to order fragments.
  std::size_t size() const;
  std::size_t atomCount() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string toString(const Formula& formula);

// Replaces every leaf `var` by `replacement`. Under a string list the
// replacement's leaves are spliced in place.
ArgList substitute(const ArgList& list, VarIndex var, const ArgList& replacement);
// Simultaneous substitution.
ArgList substitute(const ArgList& list, const std::map<VarIndex, ArgList>& replacements);

// Replaces free occurrences of `var`; the replacement must be ground.
Formula substitute(const Formula& formula, VarIndex var, const ArgList& replacement);
Formula substitute(const Formula& formula, const std::map<VarIndex, ArgList>& replacements);

struct Skeleton {
  ArgList pattern;
  std::vector<std::string> names;
  std::vector<VarIndex> variables;
};

// Abstracts the distinct names of a ground list, in first-occurrence order, to
// the lowest-indexed variables not occurring in it.
Skeleton skeleton(const ArgList& list);

}  // namespace fms
