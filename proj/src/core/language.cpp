#include "fms/language.hpp"

#include <algorithm>
#include <array>

#include "fms/error.hpp"

namespace fms {

NameSet::NameSet(std::vector<std::string> names, std::string universeTag)
    : names_(std::move(names)), tag_(std::move(universeTag)) {
  for (const std::string& n : names_) {
    if (!index_.insert(n).second) throw Error(ErrorCode::InvalidDefinition, "duplicate name " + n);
  }
}

NameSet NameSet::byPredicate(std::function<bool(std::string_view)> member, std::string universeTag) {
  NameSet out;
  out.member_ = std::move(member);
  out.tag_ = std::move(universeTag);
  return out;
}

bool NameSet::contains(std::string_view name) const {
  if (member_) return member_(name);
  return index_.count(std::string(name)) > 0;
}

bool isReservedToken(std::string_view token) noexcept {
  static constexpr std::array<std::string_view, 8> kReserved = {"~", "!", "->", "<->", "&", "|", "all", "ex"};
  return std::find(kReserved.begin(), kReserved.end(), token) != kReserved.end();
}

namespace {

bool looksLikeVariable(std::string_view token) {
  return token.size() > 1 && token.front() == 'x' &&
         std::all_of(token.begin() + 1, token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void requireLanguageToken(const std::string& token, const char* what) {
  if (token.empty()) throw Error(ErrorCode::InvalidDefinition, std::string("empty ") + what);
  for (char c : token) {
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == ' ' || c == '\t' ||
        c == '\n' || c == '\r') {
      throw Error(ErrorCode::InvalidDefinition, std::string(what) + " '" + token + "' contains a delimiter");
    }
  }
  if (token.front() == '$') {
    throw Error(ErrorCode::NameCollision, std::string(what) + " '" + token + "' is spelled like a name");
  }
  if (looksLikeVariable(token)) {
    throw Error(ErrorCode::InvalidDefinition, std::string(what) + " '" + token + "' is spelled like a variable");
  }
  if (isReservedToken(token)) {
    throw Error(ErrorCode::InvalidDefinition, std::string(what) + " '" + token + "' is a reserved connective");
  }
}

}  // namespace

LanguageSpec::LanguageSpec(std::set<std::string> alphabet, std::set<std::string> predicates, Grammar grammar)
    : alphabet_(std::move(alphabet)), predicates_(std::move(predicates)), grammar_(std::move(grammar)) {
  for (const std::string& a : alphabet_) requireLanguageToken(a, "alphabet symbol");
  for (const std::string& p : predicates_) {
    requireLanguageToken(p, "predicate symbol");
    if (alphabet_.count(p)) {
      throw Error(ErrorCode::InvalidDefinition, "'" + p + "' is both an alphabet and a predicate symbol");
    }
  }
  if (auto* term = std::get_if<TermGrammar>(&grammar_)) {
    for (const std::string& c : term->constants) {
      if (!alphabet_.count(c)) throw Error(ErrorCode::InvalidDefinition, "constant '" + c + "' is not in the alphabet");
    }
    for (const auto& [f, arity] : term->functions) {
      if (!alphabet_.count(f)) throw Error(ErrorCode::InvalidDefinition, "function '" + f + "' is not in the alphabet");
      if (arity < 1) throw Error(ErrorCode::InvalidDefinition, "function '" + f + "' needs arity >= 1");
      if (term->constants.count(f)) {
        throw Error(ErrorCode::InvalidDefinition, "'" + f + "' is both a constant and a function");
      }
    }
  } else {
    const auto& str = std::get<StringGrammar>(grammar_);
    std::set<std::string> seen;
    for (const std::string& a : str.atoms) {
      if (!alphabet_.count(a)) throw Error(ErrorCode::InvalidDefinition, "atom '" + a + "' is not in the alphabet");
      if (!seen.insert(a).second) throw Error(ErrorCode::InvalidDefinition, "duplicate atom '" + a + "'");
    }
  }
}

bool LanguageSpec::isPredicate(std::string_view token) const {
  return predicates_.count(std::string(token)) > 0;
}

bool LanguageSpec::isConstant(std::string_view token) const {
  const auto* term = std::get_if<TermGrammar>(&grammar_);
  return term && term->constants.count(std::string(token)) > 0;
}

bool LanguageSpec::isAtom(std::string_view token) const {
  const auto* str = std::get_if<StringGrammar>(&grammar_);
  return str && std::find(str->atoms.begin(), str->atoms.end(), token) != str->atoms.end();
}

std::optional<std::uint32_t> LanguageSpec::functionArity(std::string_view token) const {
  const auto* term = std::get_if<TermGrammar>(&grammar_);
  if (!term) return std::nullopt;
  auto it = term->functions.find(std::string(token));
  if (it == term->functions.end()) return std::nullopt;
  return it->second;
}

bool operator==(const LanguageSpec& a, const LanguageSpec& b) {
  return a.alphabet_ == b.alphabet_ && a.predicates_ == b.predicates_ && a.grammar_ == b.grammar_;
}

bool memberL(const LanguageSpec& spec, const ArgList& list, const NameSet* allowNames) {
  const NameSet* extension = spec.nameExtension();
  auto nameOk = [&](const std::string& n) {
    return (allowNames && allowNames->contains(n)) || (extension && extension->contains(n));
  };
  std::span<const ArgToken> tokens = list.tokens();
  if (spec.isTermGrammar()) {
    const TermGrammar& term = spec.termGrammar();
    for (const ArgToken& t : tokens) {
      switch (t.kind) {
        case ArgKind::Variable:
          break;
        case ArgKind::Symbol:
          if (!term.constants.count(t.text)) return false;
          break;
        case ArgKind::Name:
          if (!nameOk(t.text)) return false;
          break;
        case ArgKind::Apply: {
          auto it = term.functions.find(t.text);
          if (it == term.functions.end() || it->second != t.count) return false;
          break;
        }
        case ArgKind::Concat:
          return false;
      }
    }
    return true;
  }
  const StringGrammar& str = spec.stringGrammar();
  if (!list.isString()) return false;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const ArgToken& t = tokens[i];
    switch (t.kind) {
      case ArgKind::Variable:
        break;
      case ArgKind::Symbol:
        if (!str.atomsAreLists || !spec.isAtom(t.text)) return false;
        break;
      case ArgKind::Name:
        if (!nameOk(t.text)) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

LanguageSpec hatExtend(const LanguageSpec& spec, const NameSet& names) {
  if (!names.isFinite()) {
    // Infinite name sets are checked lexically on use.
    LanguageSpec out = spec;
    out.names_ = std::make_shared<NameSet>(names);
    return out;
  }
  std::vector<std::string> merged;
  if (const NameSet* existing = spec.nameExtension()) merged = existing->names();
  for (const std::string& n : names.names()) {
    if (spec.alphabet().count(n) || spec.predicates().count(n) || isReservedToken(n) ||
        variableIndex(n) != 0 || !isNameToken(n)) {
      throw Error(ErrorCode::NameCollision, "name '" + n + "' collides with the language's tokens");
    }
    if (std::find(merged.begin(), merged.end(), n) == merged.end()) merged.push_back(n);
  }
  LanguageSpec out = spec;
  out.names_ = std::make_shared<NameSet>(std::move(merged), names.universeTag());
  return out;
}

std::vector<ArgList> leafAlphabet(const LanguageSpec& spec, const std::vector<std::string>& names,
                                  const std::vector<ArgList>& extraLeaves) {
  std::vector<ArgList> leaves;
  if (spec.isTermGrammar()) {
    for (const std::string& c : spec.termGrammar().constants) leaves.push_back(ArgList::symbol(c));
  } else if (spec.stringGrammar().atomsAreLists) {
    for (const std::string& a : spec.stringGrammar().atoms) leaves.push_back(ArgList::symbol(a));
  }
  for (const std::string& n : names) leaves.push_back(ArgList::name(n));
  leaves.insert(leaves.end(), extraLeaves.begin(), extraLeaves.end());
  return leaves;
}

namespace {

std::size_t saturatingPow(std::size_t base, std::uint32_t exp, std::size_t limit) {
  std::size_t out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && out > limit / base) return limit + 1;
    out *= base;
  }
  return out;
}

// Visits every tuple in [0, width)^arity, lexicographically, that has at least
// one component >= floor.
template <typename Visit>
void forEachTuple(std::size_t width, std::size_t floor, std::uint32_t arity, Visit&& visit) {
  if (width == 0 || floor >= width) return;
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    if (std::any_of(idx.begin(), idx.end(), [floor](std::size_t i) { return i >= floor; })) visit(idx);
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < width) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (arity == 0) return;
  }
}

struct TermLevels {
  std::vector<ArgList> lists;
  std::vector<std::size_t> ends;  // ends[k]: one past the last list of depth <= k
};

ArgList applyIndices(const std::string& f, const std::vector<ArgList>& pool, const std::vector<std::size_t>& idx) {
  std::vector<ArgToken> tokens;
  tokens.push_back({ArgKind::Apply, static_cast<std::uint32_t>(idx.size()), f});
  for (std::size_t i : idx) {
    auto child = pool[i].tokens();
    tokens.insert(tokens.end(), child.begin(), child.end());
  }
  return ArgList::fromTokens(std::move(tokens));
}

void visitExactTermDepth(const TermGrammar& grammar, const TermLevels& levels, int depth,
                         const std::function<void(ArgList)>& visit) {
  std::size_t width = levels.ends[depth - 1];
  std::size_t floor = depth >= 2 ? levels.ends[depth - 2] : 0;
  for (const auto& [f, arity] : grammar.functions) {
    forEachTuple(width, floor, arity,
                 [&](const std::vector<std::size_t>& idx) { visit(applyIndices(f, levels.lists, idx)); });
  }
}

TermLevels buildTermLevels(const TermGrammar& grammar, const std::vector<ArgList>& leaves, int bound) {
  TermLevels levels;
  levels.lists = leaves;
  levels.ends.push_back(leaves.size());
  for (int k = 1; k <= bound; ++k) {
    std::vector<ArgList> fresh;
    visitExactTermDepth(grammar, levels, k, [&](ArgList l) { fresh.push_back(std::move(l)); });
    levels.lists.insert(levels.lists.end(), std::make_move_iterator(fresh.begin()),
                        std::make_move_iterator(fresh.end()));
    levels.ends.push_back(levels.lists.size());
  }
  return levels;
}

void visitStringsOfLength(const std::vector<ArgList>& leaves, int length,
                          const std::function<void(const ArgList&)>& visit) {
  if (length < 1 || leaves.empty()) return;
  std::vector<ArgToken> tokens(static_cast<std::size_t>(length) + 1);
  tokens[0] = ArgToken{ArgKind::Concat, static_cast<std::uint32_t>(length), {}};
  forEachTuple(leaves.size(), 0, static_cast<std::uint32_t>(length), [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) tokens[i + 1] = leaves[idx[i]].root();
    visit(ArgList::fromTokens(tokens));
  });
}

}  // namespace

std::size_t countLists(const LanguageSpec& spec, std::size_t leafCount, int bound, std::size_t cap) {
  if (bound < 0) return 0;
  if (!spec.isTermGrammar()) {
    std::size_t total = 0;
    for (int len = 1; len <= bound; ++len) {
      total += saturatingPow(leafCount, static_cast<std::uint32_t>(len), cap);
      if (total > cap) return cap + 1;
    }
    return total;
  }
  std::size_t prev = 0, cur = leafCount;
  if (cur > cap) return cap + 1;
  for (int k = 1; k <= bound; ++k) {
    std::size_t next = cur;
    for (const auto& [f, arity] : spec.termGrammar().functions) {
      std::size_t all = saturatingPow(cur, arity, cap);
      std::size_t old = saturatingPow(prev, arity, cap);
      if (all > cap) return cap + 1;
      next += all - old;
      if (next > cap) return cap + 1;
    }
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<ArgList> enumerateLists(const LanguageSpec& spec, const std::vector<ArgList>& leaves, int bound,
                                    std::size_t cap) {
  if (bound < 0) return {};
  std::size_t count = countLists(spec, leaves.size(), bound, cap);
  if (count > cap) {
    throw Error(ErrorCode::ExplosionGuard,
                "enumeration to depth " + std::to_string(bound) + " exceeds the cap of " + std::to_string(cap));
  }
  if (spec.isTermGrammar()) return buildTermLevels(spec.termGrammar(), leaves, bound).lists;
  std::vector<ArgList> out;
  out.reserve(count);
  for (int len = 1; len <= bound; ++len) {
    visitStringsOfLength(leaves, len, [&](const ArgList& l) { out.push_back(l); });
  }
  return out;
}

void forEachListOfDepth(const LanguageSpec& spec, const std::vector<ArgList>& leaves, int depth,
                        const std::function<void(const ArgList&)>& visit) {
  if (depth < 0) return;
  if (!spec.isTermGrammar()) {
    visitStringsOfLength(leaves, depth, visit);
    return;
  }
  if (depth == 0) {
    for (const ArgList& l : leaves) visit(l);
    return;
  }
  TermLevels levels = buildTermLevels(spec.termGrammar(), leaves, depth - 1);
  visitExactTermDepth(spec.termGrammar(), levels, depth, [&](ArgList l) { visit(l); });
}

std::vector<ArgList> enumerateGround(const LanguageSpec& spec, const NameSet& names, int depthBound,
                                     std::size_t cap) {
  if (!names.isFinite()) {
    throw Error(ErrorCode::ExplosionGuard, "cannot enumerate over an infinite name set");
  }
  if (depthBound < 0) throw Error(ErrorCode::InvalidDefinition, "depth bound must be >= 0");
  return enumerateLists(spec, leafAlphabet(spec, names.names()), depthBound, cap);
}

bool isSyntacticExtension(const LanguageSpec& spec1, const LanguageSpec& spec2) {
  if (spec1.isTermGrammar() != spec2.isTermGrammar()) {
    throw Error(ErrorCode::Incomparable, "term and string grammars are not structurally comparable");
  }
  auto includes = [](const std::set<std::string>& small, const std::set<std::string>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  if (!includes(spec1.alphabet(), spec2.alphabet()) || !includes(spec1.predicates(), spec2.predicates())) {
    return false;
  }
  if (spec1.isTermGrammar()) {
    const TermGrammar& g1 = spec1.termGrammar();
    const TermGrammar& g2 = spec2.termGrammar();
    if (!includes(g1.constants, g2.constants)) return false;
    for (const auto& [f, arity] : g1.functions) {
      auto it = g2.functions.find(f);
      if (it == g2.functions.end() || it->second != arity) return false;
    }
    return true;
  }
  const StringGrammar& g1 = spec1.stringGrammar();
  const StringGrammar& g2 = spec2.stringGrammar();
  // Without the atom rule L is just the strings of variables.
  if (!g1.atomsAreLists || g1.atoms.empty()) return true;
  if (!g2.atomsAreLists) return false;
  std::set<std::string> a1(g1.atoms.begin(), g1.atoms.end()), a2(g2.atoms.begin(), g2.atoms.end());
  return includes(a1, a2);
}

}  // namespace fms
