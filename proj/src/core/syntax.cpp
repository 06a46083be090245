#include "fms/syntax.hpp"

#include <algorithm>
#include <charconv>

#include "fms/error.hpp"

namespace fms {

bool isNameToken(std::string_view token) noexcept {
  return token.size() > 1 && token.front() == '$';
}

VarIndex variableIndex(std::string_view token) noexcept {
  if (token.size() < 2 || token.front() != 'x' || token[1] == '0') return 0;
  VarIndex value = 0;
  auto [end, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) return 0;
  return value;
}

std::string variableToken(VarIndex index) { return "x" + std::to_string(index); }

namespace {

// Index one past the subtree rooted at `at`.
std::size_t subtreeEnd(std::span<const ArgToken> tokens, std::size_t at) {
  std::size_t pending = 1;
  while (pending > 0) {
    const ArgToken& t = tokens[at++];
    --pending;
    if (t.kind == ArgKind::Apply || t.kind == ArgKind::Concat) pending += t.count;
  }
  return at;
}

bool isLeafKind(ArgKind kind) {
  return kind == ArgKind::Symbol || kind == ArgKind::Variable || kind == ArgKind::Name;
}

}  // namespace

ArgList ArgList::variable(VarIndex index) {
  if (index == 0) throw Error(ErrorCode::Lex, "variable indices start at 1");
  return ArgList({ArgToken{ArgKind::Variable, index, {}}});
}

ArgList ArgList::name(std::string text) {
  return ArgList({ArgToken{ArgKind::Name, 0, std::move(text)}});
}

ArgList ArgList::symbol(std::string text) {
  return ArgList({ArgToken{ArgKind::Symbol, 0, std::move(text)}});
}

ArgList ArgList::apply(std::string function, std::span<const ArgList> children) {
  std::vector<ArgToken> tokens;
  tokens.push_back({ArgKind::Apply, static_cast<std::uint32_t>(children.size()), std::move(function)});
  for (const ArgList& child : children) {
    if (child.isString()) throw Error(ErrorCode::NotInLanguage, "a string list cannot be a term argument");
    tokens.insert(tokens.end(), child.tokens_.begin(), child.tokens_.end());
  }
  return ArgList(std::move(tokens));
}

ArgList ArgList::concat(std::span<const ArgList> parts) {
  std::vector<ArgToken> tokens(1, ArgToken{ArgKind::Concat, 0, {}});
  for (const ArgList& part : parts) {
    if (part.isString()) {
      tokens.insert(tokens.end(), part.tokens_.begin() + 1, part.tokens_.end());
    } else if (part.isLeaf()) {
      tokens.push_back(part.root());
    } else {
      throw Error(ErrorCode::NotInLanguage, "a term cannot be part of a string list");
    }
  }
  if (tokens.size() == 1) throw Error(ErrorCode::NotInLanguage, "string lists are nonempty");
  tokens.front().count = static_cast<std::uint32_t>(tokens.size() - 1);
  return ArgList(std::move(tokens));
}

ArgList ArgList::fromTokens(std::vector<ArgToken> tokens) {
  if (tokens.empty()) throw Error(ErrorCode::Syntax, "empty argument list");
  std::span<const ArgToken> view(tokens);
  std::size_t pending = 1, at = 0;
  while (pending > 0 && at < view.size()) {
    const ArgToken& t = view[at++];
    --pending;
    if (t.kind == ArgKind::Apply || t.kind == ArgKind::Concat) pending += t.count;
    if (t.kind == ArgKind::Concat && at != 1) throw Error(ErrorCode::Syntax, "nested string list");
  }
  if (pending != 0 || at != view.size()) throw Error(ErrorCode::Syntax, "malformed token sequence");
  if (view.front().kind == ArgKind::Concat) {
    if (view.front().count == 0) throw Error(ErrorCode::NotInLanguage, "string lists are nonempty");
    for (std::size_t i = 1; i < view.size(); ++i) {
      if (!isLeafKind(view[i].kind)) throw Error(ErrorCode::Syntax, "string lists hold leaves only");
    }
  }
  return ArgList(std::move(tokens));
}

bool ArgList::isLeaf() const { return tokens_.size() == 1 && isLeafKind(kind()); }

std::vector<ArgList> ArgList::children() const {
  std::vector<ArgList> out;
  if (isLeafKind(kind())) return out;
  std::span<const ArgToken> view(tokens_);
  std::size_t at = 1;
  while (at < view.size()) {
    std::size_t end = subtreeEnd(view, at);
    out.push_back(ArgList(std::vector<ArgToken>(view.begin() + at, view.begin() + end)));
    at = end;
  }
  return out;
}

std::set<VarIndex> ArgList::variables() const {
  std::set<VarIndex> out;
  for (const ArgToken& t : tokens_) {
    if (t.kind == ArgKind::Variable) out.insert(t.count);
  }
  return out;
}

bool ArgList::containsVariable(VarIndex var) const {
  return std::any_of(tokens_.begin(), tokens_.end(), [var](const ArgToken& t) {
    return t.kind == ArgKind::Variable && t.count == var;
  });
}

bool ArgList::isGround() const {
  return std::none_of(tokens_.begin(), tokens_.end(),
                      [](const ArgToken& t) { return t.kind == ArgKind::Variable; });
}

std::vector<std::string> ArgList::names() const {
  std::vector<std::string> out;
  for (const ArgToken& t : tokens_) {
    if (t.kind == ArgKind::Name && std::find(out.begin(), out.end(), t.text) == out.end()) {
      out.push_back(t.text);
    }
  }
  return out;
}

int ArgList::depth() const {
  if (isString()) return static_cast<int>(root().count);
  // Walk the preorder sequence keeping a stack of remaining child counts.
  int best = 0;
  std::vector<std::uint32_t> open;
  for (const ArgToken& t : tokens_) {
    if (!open.empty()) --open.back();
    if (t.kind == ArgKind::Apply) {
      open.push_back(t.count);
      best = std::max(best, static_cast<int>(open.size()));
    }
    while (!open.empty() && open.back() == 0) open.pop_back();
  }
  return best;
}

namespace {

void printTerm(std::span<const ArgToken> tokens, std::size_t& at, std::string& out) {
  const ArgToken& t = tokens[at++];
  switch (t.kind) {
    case ArgKind::Variable:
      out += variableToken(t.count);
      return;
    case ArgKind::Symbol:
    case ArgKind::Name:
      out += t.text;
      return;
    case ArgKind::Apply:
      out += t.text;
      out += '(';
      for (std::uint32_t i = 0; i < t.count; ++i) {
        if (i) out += ' ';
        printTerm(tokens, at, out);
      }
      out += ')';
      return;
    case ArgKind::Concat:
      out += '[';
      for (std::uint32_t i = 0; i < t.count; ++i) {
        if (i) out += ' ';
        printTerm(tokens, at, out);
      }
      out += ']';
      return;
  }
}

}  // namespace

std::string toString(const ArgList& list) {
  std::string out;
  std::size_t at = 0;
  printTerm(list.tokens(), at, out);
  return out;
}

// ---------------------------------------------------------------------------
// Formulas

struct Formula::Node {
  FormulaKind kind;
  std::string predicate;
  std::vector<ArgList> args;
  std::vector<Formula> operands;
  VarIndex var = 0;
};

bool isBinary(FormulaKind kind) noexcept {
  return kind == FormulaKind::Implies || kind == FormulaKind::Iff || kind == FormulaKind::And ||
         kind == FormulaKind::Or;
}

bool isQuantifier(FormulaKind kind) noexcept {
  return kind == FormulaKind::ForAll || kind == FormulaKind::Exists;
}

const char* connectiveToken(FormulaKind kind) noexcept {
  switch (kind) {
    case FormulaKind::Eq: return "~";
    case FormulaKind::Not: return "!";
    case FormulaKind::Implies: return "->";
    case FormulaKind::Iff: return "<->";
    case FormulaKind::And: return "&";
    case FormulaKind::Or: return "|";
    case FormulaKind::ForAll: return "all";
    case FormulaKind::Exists: return "ex";
    case FormulaKind::Pred: return "";
  }
  return "";
}

Formula Formula::eq(ArgList left, ArgList right) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Eq;
  node->args = {std::move(left), std::move(right)};
  return Formula(std::move(node));
}

Formula Formula::pred(std::string symbol, std::vector<ArgList> args) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Pred;
  node->predicate = std::move(symbol);
  node->args = std::move(args);
  return Formula(std::move(node));
}

Formula Formula::negation(Formula operand) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Not;
  node->operands = {std::move(operand)};
  return Formula(std::move(node));
}

Formula Formula::binary(FormulaKind kind, Formula left, Formula right) {
  if (!isBinary(kind)) throw Error(ErrorCode::Syntax, "not a binary connective");
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->operands = {std::move(left), std::move(right)};
  return Formula(std::move(node));
}

Formula Formula::quantified(FormulaKind kind, VarIndex var, Formula body) {
  if (!isQuantifier(kind)) throw Error(ErrorCode::Syntax, "not a quantifier");
  if (var == 0) throw Error(ErrorCode::Lex, "variable indices start at 1");
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->var = var;
  node->operands = {std::move(body)};
  return Formula(std::move(node));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::vector<ArgList>& Formula::args() const { return node_->args; }
const std::string& Formula::predicate() const { return node_->predicate; }
std::size_t Formula::operandCount() const { return node_->operands.size(); }
const Formula& Formula::operand(std::size_t i) const { return node_->operands.at(i); }
VarIndex Formula::boundVariable() const { return node_->var; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.var == y.var && x.predicate == y.predicate && x.args == y.args &&
         x.operands == y.operands;
}

namespace {

void collectFree(const Formula& f, std::set<VarIndex>& bound, std::set<VarIndex>& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Pred:
      for (const ArgList& a : f.args()) {
        for (VarIndex v : a.variables()) {
          if (!bound.count(v)) out.insert(v);
        }
      }
      return;
    case FormulaKind::ForAll:
    case FormulaKind::Exists: {
      bool added = bound.insert(f.boundVariable()).second;
      collectFree(f.operand(0), bound, out);
      if (added) bound.erase(f.boundVariable());
      return;
    }
    default:
      for (std::size_t i = 0; i < f.operandCount(); ++i) collectFree(f.operand(i), bound, out);
  }
}

void collectLists(const Formula& f, std::vector<ArgList>& out) {
  if (f.kind() == FormulaKind::Eq || f.kind() == FormulaKind::Pred) {
    out.insert(out.end(), f.args().begin(), f.args().end());
    return;
  }
  for (std::size_t i = 0; i < f.operandCount(); ++i) collectLists(f.operand(i), out);
}

std::size_t listTokenCount(const ArgList& list) {
  // Printed tokens: leaves plus the function symbol of each application.
  return list.tokens().size();
}

void printFormula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      out += "~ ";
      out += toString(f.args()[0]);
      out += " , ";
      out += toString(f.args()[1]);
      return;
    case FormulaKind::Pred:
      out += f.predicate();
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        out += i ? " , " : " ";
        out += toString(f.args()[i]);
      }
      return;
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      out += connectiveToken(f.kind());
      out += ' ';
      out += variableToken(f.boundVariable());
      out += ' ';
      printFormula(f.operand(0), out);
      return;
    default:
      out += connectiveToken(f.kind());
      for (std::size_t i = 0; i < f.operandCount(); ++i) {
        out += ' ';
        printFormula(f.operand(i), out);
      }
  }
}

}  // namespace

std::set<VarIndex> Formula::freeVariables() const {
  std::set<VarIndex> bound, out;
  collectFree(*this, bound, out);
  return out;
}

std::vector<ArgList> Formula::argLists() const {
  std::vector<ArgList> out;
  collectLists(*this, out);
  return out;
}

std::size_t Formula::size() const {
  switch (kind()) {
    case FormulaKind::Eq:
      return 2 + listTokenCount(args()[0]) + listTokenCount(args()[1]);
    case FormulaKind::Pred: {
      std::size_t n = 1;
      for (const ArgList& a : args()) n += listTokenCount(a);
      return n + (args().empty() ? 0 : args().size() - 1);
    }
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      return 2 + operand(0).size();
    default: {
      std::size_t n = 1;
      for (std::size_t i = 0; i < operandCount(); ++i) n += operand(i).size();
      return n;
    }
  }
}

std::size_t Formula::atomCount() const {
  if (kind() == FormulaKind::Eq || kind() == FormulaKind::Pred) return 1;
  std::size_t n = 0;
  for (std::size_t i = 0; i < operandCount(); ++i) n += operand(i).atomCount();
  return n;
}

std::string toString(const Formula& formula) {
  std::string out;
  printFormula(formula, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

ArgList substitute(const ArgList& list, const std::map<VarIndex, ArgList>& replacements) {
  if (replacements.empty()) return list;
  std::span<const ArgToken> tokens = list.tokens();
  std::vector<ArgToken> out;
  out.reserve(tokens.size() + 8);
  if (list.isString()) {
    out.push_back(tokens.front());
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const ArgToken& t = tokens[i];
      auto it = t.kind == ArgKind::Variable ? replacements.find(t.count) : replacements.end();
      if (it == replacements.end()) {
        out.push_back(t);
      } else if (it->second.isString()) {
        auto rep = it->second.tokens();
        out.insert(out.end(), rep.begin() + 1, rep.end());
      } else if (it->second.isLeaf()) {
        out.push_back(it->second.root());
      } else {
        throw Error(ErrorCode::NotInLanguage, "a term cannot be substituted into a string list");
      }
    }
    out.front().count = static_cast<std::uint32_t>(out.size() - 1);
    return ArgList::fromTokens(std::move(out));
  }
  for (const ArgToken& t : tokens) {
    auto it = t.kind == ArgKind::Variable ? replacements.find(t.count) : replacements.end();
    if (it == replacements.end()) {
      out.push_back(t);
      continue;
    }
    if (it->second.isString()) {
      // A whole-list variable may become a string; anything else cannot.
      if (tokens.size() != 1) throw Error(ErrorCode::NotInLanguage, "a string cannot be a term argument");
    }
    auto rep = it->second.tokens();
    out.insert(out.end(), rep.begin(), rep.end());
  }
  return ArgList::fromTokens(std::move(out));
}

ArgList substitute(const ArgList& list, VarIndex var, const ArgList& replacement) {
  if (!list.containsVariable(var)) return list;
  return substitute(list, std::map<VarIndex, ArgList>{{var, replacement}});
}

namespace {

Formula substituteFree(const Formula& f, const std::map<VarIndex, ArgList>& reps) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return Formula::eq(substitute(f.args()[0], reps), substitute(f.args()[1], reps));
    case FormulaKind::Pred: {
      std::vector<ArgList> args;
      args.reserve(f.args().size());
      for (const ArgList& a : f.args()) args.push_back(substitute(a, reps));
      return Formula::pred(f.predicate(), std::move(args));
    }
    case FormulaKind::Not:
      return Formula::negation(substituteFree(f.operand(0), reps));
    case FormulaKind::ForAll:
    case FormulaKind::Exists: {
      if (!reps.count(f.boundVariable())) {
        return Formula::quantified(f.kind(), f.boundVariable(), substituteFree(f.operand(0), reps));
      }
      auto inner = reps;
      inner.erase(f.boundVariable());
      if (inner.empty()) return f;
      return Formula::quantified(f.kind(), f.boundVariable(), substituteFree(f.operand(0), inner));
    }
    default:
      return Formula::binary(f.kind(), substituteFree(f.operand(0), reps),
                             substituteFree(f.operand(1), reps));
  }
}

}  // namespace

Formula substitute(const Formula& formula, const std::map<VarIndex, ArgList>& replacements) {
  for (const auto& [var, rep] : replacements) {
    if (!rep.isGround()) {
      throw Error(ErrorCode::NonGroundSubstituent,
                  "substituent for " + variableToken(var) + " is not ground: " + toString(rep));
    }
  }
  if (replacements.empty()) return formula;
  return substituteFree(formula, replacements);
}

Formula substitute(const Formula& formula, VarIndex var, const ArgList& replacement) {
  return substitute(formula, std::map<VarIndex, ArgList>{{var, replacement}});
}

Skeleton skeleton(const ArgList& list) {
  if (!list.isGround()) throw Error(ErrorCode::NotGround, "skeleton of a non-ground list: " + toString(list));
  Skeleton out{list, list.names(), {}};
  // The list is ground, so x1..xm are all fresh.
  std::map<std::string_view, VarIndex> slot;
  for (std::size_t i = 0; i < out.names.size(); ++i) {
    slot.emplace(out.names[i], static_cast<VarIndex>(i + 1));
    out.variables.push_back(static_cast<VarIndex>(i + 1));
  }
  std::vector<ArgToken> tokens(list.tokens().begin(), list.tokens().end());
  for (ArgToken& t : tokens) {
    if (t.kind == ArgKind::Name) {
      t = ArgToken{ArgKind::Variable, slot.at(t.text), {}};
    }
  }
  out.pattern = ArgList::fromTokens(std::move(tokens));
  return out;
}

}  // namespace fms
