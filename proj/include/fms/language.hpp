#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "fms/syntax.hpp"

namespace fms {

inline constexpr std::size_t kDefaultEnumerationCap = 200'000;

// Terms: variables, constants, and f(t1 ... tn) for declared n-ary f.
struct TermGrammar {
  std::set<std::string> constants;
  std::map<std::string, std::uint32_t> functions;

  friend bool operator==(const TermGrammar&, const TermGrammar&) = default;
};

// Nonempty strings over variables (and the atoms, when atomsAreLists).
struct StringGrammar {
  std::vector<std::string> atoms;
  bool atomsAreLists = true;

  friend bool operator==(const StringGrammar&, const StringGrammar&) = default;
};

using Grammar = std::variant<TermGrammar, StringGrammar>;

// The names of one structure. Finite name sets keep their declaration order;
// infinite ones are given by a membership test.
class NameSet {
 public:
  NameSet() = default;
  explicit NameSet(std::vector<std::string> names, std::string universeTag = {});
  static NameSet byPredicate(std::function<bool(std::string_view)> member, std::string universeTag);

  bool contains(std::string_view name) const;
  bool isFinite() const { return !member_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& universeTag() const { return tag_; }

 private:
  std::vector<std::string> names_;
  std::unordered_set<std::string> index_;
  std::function<bool(std::string_view)> member_;
  std::string tag_;
};

class LanguageSpec {
 public:
  LanguageSpec(std::set<std::string> alphabet, std::set<std::string> predicates, Grammar grammar);

  const std::set<std::string>& alphabet() const { return alphabet_; }
  const std::set<std::string>& predicates() const { return predicates_; }
  const Grammar& grammar() const { return grammar_; }
  bool isTermGrammar() const { return std::holds_alternative<TermGrammar>(grammar_); }
  const TermGrammar& termGrammar() const { return std::get<TermGrammar>(grammar_); }
  const StringGrammar& stringGrammar() const { return std::get<StringGrammar>(grammar_); }

  // Names admitted as leaves after hatExtend, else null.
  const NameSet* nameExtension() const { return names_.get(); }

  bool isPredicate(std::string_view token) const;
  bool isConstant(std::string_view token) const;
  bool isAtom(std::string_view token) const;
  std::optional<std::uint32_t> functionArity(std::string_view token) const;

  // Same [A;P] and grammar; name extensions are not compared.
  friend bool operator==(const LanguageSpec& a, const LanguageSpec& b);

 private:
  friend LanguageSpec hatExtend(const LanguageSpec&, const NameSet&);

  std::set<std::string> alphabet_;
  std::set<std::string> predicates_;
  Grammar grammar_;
  std::shared_ptr<const NameSet> names_;
};

// Tokens reserved by the formula syntax.
bool isReservedToken(std::string_view token) noexcept;

bool memberL(const LanguageSpec& spec, const ArgList& list, const NameSet* allowNames = nullptr);

LanguageSpec hatExtend(const LanguageSpec& spec, const NameSet& names);

// Leaves used to build lists: the grammar's constants or atoms, then the
// given names, then any extra leaves (variables, for open lists).
std::vector<ArgList> leafAlphabet(const LanguageSpec& spec, const std::vector<std::string>& names,
                                  const std::vector<ArgList>& extraLeaves = {});

// Number of lists of depth <= bound over the given leaves, saturated at cap+1.
std::size_t countLists(const LanguageSpec& spec, std::size_t leafCount, int bound, std::size_t cap);

// All lists of depth <= bound over `leaves`: shallower lists first, then per
// function symbol the argument tuples in lexicographic order.
std::vector<ArgList> enumerateLists(const LanguageSpec& spec, const std::vector<ArgList>& leaves,
                                    int bound, std::size_t cap = kDefaultEnumerationCap);

// Streams the lists of depth exactly `depth`, in the same order, without a cap.
void forEachListOfDepth(const LanguageSpec& spec, const std::vector<ArgList>& leaves, int depth,
                        const std::function<void(const ArgList&)>& visit);

std::vector<ArgList> enumerateGround(const LanguageSpec& spec, const NameSet& names, int depthBound,
                                     std::size_t cap = kDefaultEnumerationCap);

bool isSyntacticExtension(const LanguageSpec& spec1, const LanguageSpec& spec2);

}  // namespace fms
