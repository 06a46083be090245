#include "fms/parser.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "fms/error.hpp"

namespace fms {

namespace {

struct Token {
  std::string text;
  std::size_t offset;
};

bool isDelimiter(char c) { return c == '(' || c == ')' || c == '[' || c == ']' || c == ','; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::iscntrl(c)) {
      throw Error(ErrorCode::Lex, "control character at offset " + std::to_string(i));
    }
    if (isDelimiter(text[i])) {
      out.push_back({std::string(1, text[i]), i});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && !isDelimiter(text[i])) ++i;
    out.push_back({std::string(text.substr(start, i - start)), start});
  }
  return out;
}

bool looksLikeVariable(std::string_view w) {
  return w.size() > 1 && w.front() == 'x' &&
         std::all_of(w.begin() + 1, w.end(), [](char c) { return c >= '0' && c <= '9'; });
}

class Parser {
 public:
  Parser(std::string_view text, const LanguageSpec& spec) : tokens_(lex(text)), spec_(spec) {}

  Formula formula() {
    const Token& t = take("a formula");
    const std::string& w = t.text;
    if (w == "~") {
      ArgList left = list();
      expect(",");
      ArgList right = list();
      return Formula::eq(std::move(left), std::move(right));
    }
    if (w == "!") return Formula::negation(formula());
    if (w == "->" || w == "<->" || w == "&" || w == "|") {
      FormulaKind kind = w == "->"    ? FormulaKind::Implies
                         : w == "<->" ? FormulaKind::Iff
                         : w == "&"   ? FormulaKind::And
                                      : FormulaKind::Or;
      Formula left = formula();
      Formula right = formula();
      return Formula::binary(kind, std::move(left), std::move(right));
    }
    if (w == "all" || w == "ex") {
      const Token& v = take("a variable");
      VarIndex var = variableIndex(v.text);
      if (var == 0) fail(looksLikeVariable(v.text) ? ErrorCode::Lex : ErrorCode::Syntax, v, "expected a variable");
      Formula body = formula();
      return Formula::quantified(w == "all" ? FormulaKind::ForAll : FormulaKind::Exists, var, std::move(body));
    }
    if (spec_.isPredicate(w)) {
      std::vector<ArgList> args;
      if (startsList()) {
        args.push_back(list());
        while (peekIs(",")) {
          ++pos_;
          args.push_back(list());
        }
      }
      return Formula::pred(w, std::move(args));
    }
    if (isDelimiter(w.front()) || variableIndex(w) || isNameToken(w) || spec_.alphabet().count(w)) {
      fail(ErrorCode::Syntax, t, "expected a formula");
    }
    fail(ErrorCode::Lex, t, "unknown token");
  }

  ArgList list() {
    if (spec_.isTermGrammar()) return term();
    return string();
  }

  void finish() {
    if (pos_ != tokens_.size()) fail(ErrorCode::Syntax, tokens_[pos_], "trailing input");
  }

 private:
  bool startsList() const {
    if (pos_ >= tokens_.size()) return false;
    const std::string& w = tokens_[pos_].text;
    if (w == "[") return true;
    if (isDelimiter(w.front())) return false;
    return !isReservedToken(w) && !spec_.isPredicate(w);
  }

  bool peekIs(std::string_view s) const { return pos_ < tokens_.size() && tokens_[pos_].text == s; }

  const Token& take(const char* what) {
    if (pos_ >= tokens_.size()) {
      throw Error(ErrorCode::Syntax, std::string("unexpected end of input, expected ") + what);
    }
    return tokens_[pos_++];
  }

  void expect(std::string_view s) {
    const Token& t = take(std::string(s).c_str());
    if (t.text != s) fail(ErrorCode::Syntax, t, "expected '" + std::string(s) + "'");
  }

  [[noreturn]] void fail(ErrorCode code, const Token& t, const std::string& message) {
    throw Error(code, message + " at offset " + std::to_string(t.offset) + " ('" + t.text + "')");
  }

  // Leaves shared by both grammars; returns false if `t` is not one.
  bool leaf(const Token& t, ArgList& out) {
    if (VarIndex v = variableIndex(t.text)) {
      out = ArgList::variable(v);
      return true;
    }
    if (looksLikeVariable(t.text)) fail(ErrorCode::Lex, t, "malformed variable");
    if (t.text.front() == '$') {
      if (!isNameToken(t.text)) fail(ErrorCode::Lex, t, "empty name");
      out = ArgList::name(t.text);
      return true;
    }
    return false;
  }

  ArgList term() {
    const Token& t = take("an argument list");
    ArgList out = ArgList::variable(1);
    if (leaf(t, out)) return out;
    if (isDelimiter(t.text.front())) fail(ErrorCode::Syntax, t, "expected a term");
    if (peekIs("(")) {
      auto arity = spec_.functionArity(t.text);
      if (!arity) {
        fail(spec_.alphabet().count(t.text) ? ErrorCode::UnboundSymbol : ErrorCode::Lex, t,
             "not a function symbol");
      }
      ++pos_;
      std::vector<ArgList> children;
      while (!peekIs(")")) {
        if (pos_ >= tokens_.size()) throw Error(ErrorCode::Syntax, "unterminated application of " + t.text);
        children.push_back(term());
      }
      ++pos_;
      if (children.size() != *arity) {
        fail(ErrorCode::Arity, t,
             "'" + t.text + "' expects " + std::to_string(*arity) + " arguments, got " +
                 std::to_string(children.size()));
      }
      return ArgList::apply(t.text, children);
    }
    if (spec_.isConstant(t.text)) return ArgList::symbol(t.text);
    if (spec_.functionArity(t.text)) fail(ErrorCode::Arity, t, "function symbol used without arguments");
    if (spec_.alphabet().count(t.text)) fail(ErrorCode::UnboundSymbol, t, "symbol has no grammar rule");
    if (isReservedToken(t.text) || spec_.isPredicate(t.text)) fail(ErrorCode::Syntax, t, "expected a term");
    fail(ErrorCode::Lex, t, "unknown token");
  }

  ArgList string() {
    const Token& open = take("a string list");
    if (open.text != "[") fail(ErrorCode::Syntax, open, "string lists start with '['");
    std::vector<ArgList> leaves;
    while (!peekIs("]")) {
      const Token& t = take("']'");
      ArgList out = ArgList::variable(1);
      if (leaf(t, out)) {
        leaves.push_back(std::move(out));
        continue;
      }
      if (spec_.isAtom(t.text)) {
        if (!spec_.stringGrammar().atomsAreLists) fail(ErrorCode::UnboundSymbol, t, "atoms are not lists here");
        leaves.push_back(ArgList::symbol(t.text));
        continue;
      }
      if (spec_.alphabet().count(t.text)) fail(ErrorCode::UnboundSymbol, t, "symbol has no grammar rule");
      if (isDelimiter(t.text.front()) || isReservedToken(t.text) || spec_.isPredicate(t.text)) {
        fail(ErrorCode::Syntax, t, "expected a string leaf");
      }
      fail(ErrorCode::Lex, t, "unknown token");
    }
    ++pos_;
    if (leaves.empty()) fail(ErrorCode::Syntax, open, "empty string list");
    return ArgList::concat(leaves);
  }

  std::vector<Token> tokens_;
  const LanguageSpec& spec_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parseFormula(std::string_view text, const LanguageSpec& spec) {
  Parser parser(text, spec);
  Formula out = parser.formula();
  parser.finish();
  return out;
}

ArgList parseList(std::string_view text, const LanguageSpec& spec) {
  Parser parser(text, spec);
  ArgList out = parser.list();
  parser.finish();
  return out;
}

std::vector<Formula> parseFormulaFile(std::string_view text, const LanguageSpec& spec) {
  std::vector<Formula> out;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineNo;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(parseFormula(line, spec));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace fms
