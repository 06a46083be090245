#include "fms/structure.hpp"

#include <algorithm>

#include "fms/error.hpp"

namespace fms {

const char* truthName(Truth t) noexcept {
  switch (t) {
    case Truth::False: return "FALSE";
    case Truth::True: return "TRUE";
    case Truth::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

const char* stringPredicateName(StringPredicateKind kind) noexcept {
  switch (kind) {
    case StringPredicateKind::EqualLength: return "EqualLength";
    case StringPredicateKind::IsPrefix: return "IsPrefix";
    case StringPredicateKind::EqualsLiteral: return "EqualsLiteral";
    case StringPredicateKind::SameString: return "SameString";
  }
  return "?";
}

namespace {

const std::string* lookupBinding(const Assignment& assignment, VarIndex var) {
  for (auto it = assignment.rbegin(); it != assignment.rend(); ++it) {
    if (it->var == var) return &it->name;
  }
  return nullptr;
}

std::map<VarIndex, ArgList> bindingMap(const ArgList& list, const Assignment& assignment) {
  std::map<VarIndex, ArgList> reps;
  for (VarIndex v : list.variables()) {
    const std::string* name = lookupBinding(assignment, v);
    if (!name) throw Error(ErrorCode::NotClosed, "variable " + variableToken(v) + " is unbound");
    reps.emplace(v, ArgList::name(*name));
  }
  return reps;
}

}  // namespace

Element Structure::evalUnder(const ArgList& list, const Assignment& assignment) const {
  if (list.isGround()) return evalList(list);
  return evalList(substitute(list, bindingMap(list, assignment)));
}

// ---------------------------------------------------------------------------
// Finite term structures

FiniteTermStructure::FiniteTermStructure(const FiniteTermDefinition& def) : language_(def.language) {
  if (!language_.isTermGrammar()) throw Error(ErrorCode::InvalidDefinition, "finite structures need a term grammar");
  if (def.universe.empty()) throw Error(ErrorCode::InvalidDefinition, "the universe is empty");
  universe_ = def.universe;
  for (Index i = 0; i < universe_.size(); ++i) {
    if (universe_[i].empty()) throw Error(ErrorCode::InvalidDefinition, "empty element identifier");
    if (!index_.emplace(universe_[i], i).second) {
      throw Error(ErrorCode::InvalidDefinition, "duplicate element '" + universe_[i] + "'");
    }
  }
  for (const auto& [element, name] : def.names) {
    if (!index_.count(element)) throw Error(ErrorCode::InvalidDefinition, "name given for unknown element '" + element + "'");
    (void)name;
  }
  std::vector<std::string> names;
  for (const std::string& e : universe_) {
    auto it = def.names.find(e);
    names.push_back(it != def.names.end() ? it->second : "$" + e);
  }
  for (const std::string& n : names) {
    if (!isNameToken(n)) throw Error(ErrorCode::InvalidDefinition, "'" + n + "' is not a name ($ident)");
  }
  names_ = NameSet(names, "finite-term");
  language_ = hatExtend(def.language, names_);
  for (Index i = 0; i < names.size(); ++i) nameIndex_.emplace(names[i], i);

  auto element = [&](const std::string& e, const std::string& where) {
    auto it = index_.find(e);
    if (it == index_.end()) throw Error(ErrorCode::InvalidDefinition, where + ": '" + e + "' is not an element");
    return it->second;
  };

  const TermGrammar& grammar = language_.termGrammar();
  for (const std::string& c : grammar.constants) {
    auto it = def.constants.find(c);
    if (it == def.constants.end()) throw Error(ErrorCode::InvalidDefinition, "constant '" + c + "' has no value");
    constants_.emplace(c, element(it->second, "constant " + c));
  }
  for (const auto& [c, v] : def.constants) {
    if (!grammar.constants.count(c)) throw Error(ErrorCode::InvalidDefinition, "'" + c + "' is not a constant");
    (void)v;
  }

  const std::size_t n = universe_.size();
  for (const auto& [f, table] : def.functions) {
    if (!grammar.functions.count(f)) throw Error(ErrorCode::InvalidDefinition, "'" + f + "' is not a function symbol");
    (void)table;
  }
  for (const auto& [f, arity] : grammar.functions) {
    std::size_t cells = 1;
    for (std::uint32_t i = 0; i < arity; ++i) {
      if (cells > 1'000'000 / n) throw Error(ErrorCode::TooLarge, "table of '" + f + "' is too large");
      cells *= n;
    }
    auto it = def.functions.find(f);
    if (it == def.functions.end()) throw Error(ErrorCode::InvalidDefinition, "function '" + f + "' has no table");
    FunctionTable table{arity, std::vector<Index>(cells, static_cast<Index>(n))};
    for (const auto& [args, value] : it->second) {
      if (args.size() != arity) {
        throw Error(ErrorCode::InvalidDefinition, "entry of '" + f + "' has the wrong number of arguments");
      }
      std::size_t cell = 0;
      for (const std::string& a : args) cell = cell * n + element(a, "table of " + f);
      if (table.values[cell] != n) throw Error(ErrorCode::InvalidDefinition, "duplicate entry in table of '" + f + "'");
      table.values[cell] = element(value, "table of " + f);
    }
    if (std::count(table.values.begin(), table.values.end(), static_cast<Index>(n)) != 0) {
      throw Error(ErrorCode::InvalidDefinition, "table of '" + f + "' is not total");
    }
    functions_.emplace(f, std::move(table));
  }

  for (const auto& [key, tuples] : def.predicates) {
    const auto& [symbol, arity] = key;
    if (!language_.isPredicate(symbol)) throw Error(ErrorCode::InvalidDefinition, "'" + symbol + "' is not a predicate");
    if (arity == 0) throw Error(ErrorCode::InvalidDefinition, "nullary predicates take a truth value");
    auto& table = predicates_[key];
    for (const auto& tuple : tuples) {
      if (tuple.size() != arity) {
        throw Error(ErrorCode::InvalidDefinition, "tuple of " + symbol + "/" + std::to_string(arity) + " has the wrong size");
      }
      std::vector<Index> row;
      for (const std::string& e : tuple) row.push_back(element(e, "predicate " + symbol));
      table.insert(std::move(row));
    }
  }
  for (const auto& [symbol, value] : def.nullary) {
    if (!language_.isPredicate(symbol)) throw Error(ErrorCode::InvalidDefinition, "'" + symbol + "' is not a predicate");
    nullary_[symbol] = value;
  }

  for (Index i = 0; i < n; ++i) {
    if (evalIndex(ArgList::name(names[i])) != i) {
      throw Error(ErrorCode::InvalidDefinition, "name " + names[i] + " does not evaluate to its element");
    }
  }
}

FiniteTermStructure::Index FiniteTermStructure::indexOf(const Element& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw Error(ErrorCode::NotInLanguage, "'" + e + "' is not an element");
  return it->second;
}

FiniteTermStructure::Index FiniteTermStructure::indexOfName(std::string_view name) const {
  auto it = nameIndex_.find(std::string(name));
  if (it == nameIndex_.end()) throw Error(ErrorCode::NotInLanguage, "unknown name " + std::string(name));
  return it->second;
}

Element FiniteTermStructure::elementOf(std::string_view name) const { return universe_[indexOfName(name)]; }

std::string FiniteTermStructure::nameOf(const Element& e) const { return nameAt(indexOf(e)); }

std::uint32_t FiniteTermStructure::arity(const std::string& function) const {
  auto it = functions_.find(function);
  if (it == functions_.end()) throw Error(ErrorCode::NotInLanguage, "'" + function + "' is not a function symbol");
  return it->second.arity;
}

FiniteTermStructure::Index FiniteTermStructure::applyFunction(const std::string& function,
                                                              std::span<const Index> args) const {
  auto it = functions_.find(function);
  if (it == functions_.end() || it->second.arity != args.size()) {
    throw Error(ErrorCode::NotInLanguage, "bad application of '" + function + "'");
  }
  std::size_t cell = 0;
  for (Index a : args) cell = cell * universe_.size() + a;
  return it->second.values[cell];
}

FiniteTermStructure::Index FiniteTermStructure::evalTokens(std::span<const ArgToken> tokens, std::size_t& at,
                                                           const Assignment* assignment) const {
  const ArgToken& t = tokens[at++];
  switch (t.kind) {
    case ArgKind::Name:
      return indexOfName(t.text);
    case ArgKind::Symbol: {
      auto it = constants_.find(t.text);
      if (it == constants_.end()) throw Error(ErrorCode::NotInLanguage, "'" + t.text + "' is not a constant");
      return it->second;
    }
    case ArgKind::Variable: {
      const std::string* name = assignment ? lookupBinding(*assignment, t.count) : nullptr;
      if (!name) throw Error(ErrorCode::NotGround, "variable " + variableToken(t.count) + " in a list to evaluate");
      return indexOfName(*name);
    }
    case ArgKind::Apply: {
      auto it = functions_.find(t.text);
      if (it == functions_.end() || it->second.arity != t.count) {
        throw Error(ErrorCode::NotInLanguage, "bad application of '" + t.text + "'");
      }
      std::size_t cell = 0;
      for (std::uint32_t i = 0; i < t.count; ++i) cell = cell * universe_.size() + evalTokens(tokens, at, assignment);
      return it->second.values[cell];
    }
    case ArgKind::Concat:
      break;
  }
  throw Error(ErrorCode::NotInLanguage, "string list in a term structure");
}

FiniteTermStructure::Index FiniteTermStructure::evalIndex(const ArgList& ground) const {
  std::size_t at = 0;
  return evalTokens(ground.tokens(), at, nullptr);
}

Element FiniteTermStructure::evalList(const ArgList& ground) const { return universe_[evalIndex(ground)]; }

Element FiniteTermStructure::evalUnder(const ArgList& list, const Assignment& assignment) const {
  std::size_t at = 0;
  return universe_[evalTokens(list.tokens(), at, &assignment)];
}

bool FiniteTermStructure::predicateHolds(const std::string& symbol, std::span<const Element> args) const {
  if (args.empty()) return nullaryHolds(symbol);
  auto it = predicates_.find({symbol, args.size()});
  if (it == predicates_.end()) return false;
  std::vector<Index> row;
  for (const Element& e : args) row.push_back(indexOf(e));
  return it->second.count(row) > 0;
}

bool FiniteTermStructure::nullaryHolds(const std::string& symbol) const {
  auto it = nullary_.find(symbol);
  return it != nullary_.end() && it->second;
}

FiniteTermDefinition FiniteTermStructure::definition() const {
  FiniteTermDefinition def(language_);
  def.language = LanguageSpec(language_.alphabet(), language_.predicates(), language_.grammar());
  def.universe = universe_;
  for (Index i = 0; i < universe_.size(); ++i) def.names[universe_[i]] = nameAt(i);
  for (const auto& [c, v] : constants_) def.constants[c] = universe_[v];
  const std::size_t n = universe_.size();
  for (const auto& [f, table] : functions_) {
    auto& out = def.functions[f];
    for (std::size_t cell = 0; cell < table.values.size(); ++cell) {
      std::vector<std::string> args(table.arity);
      std::size_t rest = cell;
      for (std::size_t i = table.arity; i-- > 0;) {
        args[i] = universe_[rest % n];
        rest /= n;
      }
      out[args] = universe_[table.values[cell]];
    }
  }
  for (const auto& [key, rows] : predicates_) {
    auto& out = def.predicates[key];
    for (const auto& row : rows) {
      std::vector<std::string> tuple;
      for (Index i : row) tuple.push_back(universe_[i]);
      out.insert(std::move(tuple));
    }
  }
  def.nullary = nullary_;
  return def;
}

bool operator==(const FiniteTermStructure& a, const FiniteTermStructure& b) {
  if (&a == &b) return true;
  if (!(a.language_ == b.language_) || a.universe_ != b.universe_ || a.names_.names() != b.names_.names() ||
      a.constants_ != b.constants_ || a.nullary_ != b.nullary_) {
    return false;
  }
  if (a.functions_.size() != b.functions_.size()) return false;
  for (const auto& [f, table] : a.functions_) {
    auto it = b.functions_.find(f);
    if (it == b.functions_.end() || it->second.values != table.values) return false;
  }
  auto nonEmpty = [](const auto& tables) {
    std::map<FiniteTermStructure::PredicateKey, std::set<std::vector<FiniteTermStructure::Index>>> out;
    for (const auto& [k, rows] : tables) {
      if (!rows.empty()) out.emplace(k, rows);
    }
    return out;
  };
  return nonEmpty(a.predicates_) == nonEmpty(b.predicates_);
}

// ---------------------------------------------------------------------------
// String structures

namespace {

std::optional<std::vector<std::string>> decodeSpelling(std::string_view spelling,
                                                       const std::vector<std::string>& atoms, bool compact) {
  if (spelling.empty()) return std::nullopt;
  std::vector<std::string> out;
  auto isAtom = [&](std::string_view piece) { return std::find(atoms.begin(), atoms.end(), piece) != atoms.end(); };
  if (compact) {
    for (char c : spelling) {
      std::string_view piece(&c, 1);
      if (!isAtom(piece)) return std::nullopt;
      out.emplace_back(piece);
    }
    return out;
  }
  std::size_t start = 0;
  while (true) {
    std::size_t dot = spelling.find('.', start);
    std::string_view piece = spelling.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (!isAtom(piece)) return std::nullopt;
    out.emplace_back(piece);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

LanguageSpec stringLanguage(const std::vector<std::string>& atoms,
                            const std::map<StringStructure::PredicateKey, StringPredicate>& predicates) {
  std::set<std::string> symbols;
  for (const auto& [key, def] : predicates) symbols.insert(key.first);
  return LanguageSpec(std::set<std::string>(atoms.begin(), atoms.end()), symbols, StringGrammar{atoms, true});
}

}  // namespace

StringStructure::StringStructure(std::vector<std::string> atoms, std::map<PredicateKey, StringPredicate> predicates,
                                 int quantBound)
    : atoms_(std::move(atoms)),
      compact_(!atoms_.empty() && std::all_of(atoms_.begin(), atoms_.end(), [](const std::string& a) { return a.size() == 1; })),
      language_(stringLanguage(atoms_, predicates)),
      predicates_(std::move(predicates)),
      quantBound_(quantBound) {
  if (atoms_.empty()) throw Error(ErrorCode::InvalidDefinition, "a string structure needs at least one atom");
  if (!compact_) {
    for (const std::string& a : atoms_) {
      if (a.find('.') != std::string::npos) {
        throw Error(ErrorCode::InvalidDefinition, "multi-character atoms may not contain '.'");
      }
    }
  }
  if (quantBound_ < 1) throw Error(ErrorCode::InvalidDefinition, "quantBound must be >= 1");
  for (auto& [key, def] : predicates_) {
    const auto& [symbol, arity] = key;
    bool ok = arity >= 1;
    if (def.kind == StringPredicateKind::IsPrefix) ok = arity == 2;
    if (def.kind == StringPredicateKind::EqualsLiteral) {
      ok = arity == 1 && decode(def.literal).has_value();
      if (ok) def.literal = encode(*decode(def.literal));
    }
    if (!ok) {
      throw Error(ErrorCode::InvalidDefinition, std::string(stringPredicateName(def.kind)) + " cannot define " +
                                                    symbol + "/" + std::to_string(arity));
    }
  }
  std::vector<std::string> atomsCopy = atoms_;
  bool compact = compact_;
  names_ = NameSet::byPredicate(
      [atomsCopy, compact](std::string_view name) {
        return isNameToken(name) && decodeSpelling(name.substr(1), atomsCopy, compact).has_value();
      },
      "string");
  language_ = hatExtend(language_, names_);

  std::size_t count = 0;
  std::size_t layer = 1;
  for (int len = 1; len <= quantBound_; ++len) {
    layer *= atoms_.size();
    count += layer;
    if (count > kDefaultEnumerationCap) {
      throw Error(ErrorCode::ExplosionGuard, "quantBound " + std::to_string(quantBound_) + " scans too many strings");
    }
  }
  for (const Element& e : elementsUpTo(quantBound_)) quantifierNames_.push_back("$" + e);
}

std::optional<std::vector<std::string>> StringStructure::decode(std::string_view spelling) const {
  return decodeSpelling(spelling, atoms_, compact_);
}

Element StringStructure::encode(std::span<const std::string> atoms) const {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0 && !compact_) out += '.';
    out += atoms[i];
  }
  return out;
}

std::vector<Element> StringStructure::elementsUpTo(int maxLength) const {
  std::vector<Element> out;
  for (int len = 1; len <= maxLength; ++len) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
    while (true) {
      std::vector<std::string> word;
      for (std::size_t i : idx) word.push_back(atoms_[i]);
      out.push_back(encode(word));
      std::size_t pos = idx.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < atoms_.size()) break;
        idx[pos] = 0;
        if (pos == 0) goto next;
      }
      if (idx.empty()) break;
    }
  next:;
  }
  return out;
}

Element StringStructure::evalList(const ArgList& ground) const {
  if (!ground.isString()) throw Error(ErrorCode::NotInLanguage, toString(ground) + " is not a string list");
  std::vector<std::string> word;
  std::span<const ArgToken> tokens = ground.tokens();
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const ArgToken& t = tokens[i];
    switch (t.kind) {
      case ArgKind::Symbol:
        if (!language_.isAtom(t.text)) throw Error(ErrorCode::NotInLanguage, "'" + t.text + "' is not an atom");
        word.push_back(t.text);
        break;
      case ArgKind::Name: {
        auto decoded = isNameToken(t.text) ? decode(std::string_view(t.text).substr(1)) : std::nullopt;
        if (!decoded) throw Error(ErrorCode::NotInLanguage, "unknown name " + t.text);
        word.insert(word.end(), decoded->begin(), decoded->end());
        break;
      }
      case ArgKind::Variable:
        throw Error(ErrorCode::NotGround, "variable " + variableToken(t.count) + " in a list to evaluate");
      default:
        throw Error(ErrorCode::NotInLanguage, "malformed string list");
    }
  }
  return encode(word);
}

Element StringStructure::elementOf(std::string_view name) const {
  auto decoded = isNameToken(name) ? decode(name.substr(1)) : std::nullopt;
  if (!decoded) throw Error(ErrorCode::NotInLanguage, "unknown name " + std::string(name));
  return encode(*decoded);
}

std::string StringStructure::nameOf(const Element& e) const {
  if (!decode(e)) throw Error(ErrorCode::NotInLanguage, "'" + e + "' is not an element");
  return "$" + e;
}

std::vector<std::string> StringStructure::sampleNames(int bound) const {
  std::vector<std::string> out;
  for (const Element& e : elementsUpTo(bound)) out.push_back("$" + e);
  return out;
}

bool StringStructure::predicateHolds(const std::string& symbol, std::span<const Element> args) const {
  auto it = predicates_.find({symbol, args.size()});
  if (it == predicates_.end()) return false;
  std::vector<std::vector<std::string>> words;
  for (const Element& e : args) {
    auto decoded = decode(e);
    if (!decoded) throw Error(ErrorCode::NotInLanguage, "'" + e + "' is not an element");
    words.push_back(std::move(*decoded));
  }
  switch (it->second.kind) {
    case StringPredicateKind::EqualLength:
      return std::all_of(words.begin(), words.end(), [&](const auto& w) { return w.size() == words[0].size(); });
    case StringPredicateKind::SameString:
      return std::all_of(words.begin(), words.end(), [&](const auto& w) { return w == words[0]; });
    case StringPredicateKind::IsPrefix:
      return words[0].size() <= words[1].size() && std::equal(words[0].begin(), words[0].end(), words[1].begin());
    case StringPredicateKind::EqualsLiteral:
      return encode(words[0]) == it->second.literal;
  }
  return false;
}

bool StringStructure::reflexive(const std::string& symbol, std::size_t arity) const {
  auto it = predicates_.find({symbol, arity});
  return arity > 0 && it != predicates_.end() && it->second.kind != StringPredicateKind::EqualsLiteral;
}

// ---------------------------------------------------------------------------
// Truth

namespace {

Truth negate(Truth t) {
  if (t == Truth::Unknown) return t;
  return t == Truth::True ? Truth::False : Truth::True;
}

// Quantifiers substitute each quantifier name in turn. When the names do not
// cover the universe, a variable bound to the empty name stands for an
// arbitrary individual: atoms mentioning it are Unknown unless they are an
// equation or a reflexive predicate applied to one list throughout, and the
// Kleene connectives keep any definite answer sound for every individual.
class Evaluator {
 public:
  Evaluator(const Structure& structure, EvalStats* stats)
      : s_(structure), finite_(dynamic_cast<const FiniteTermStructure*>(&structure)), stats_(stats) {}

  Truth eval(const Formula& f, Assignment& asg) {
    switch (f.kind()) {
      case FormulaKind::Eq:
      case FormulaKind::Pred:
        return atom(f, asg);
      case FormulaKind::Not:
        return negate(eval(f.operand(0), asg));
      case FormulaKind::And: {
        Truth l = eval(f.operand(0), asg);
        if (l == Truth::False) return l;
        Truth r = eval(f.operand(1), asg);
        if (r == Truth::False) return r;
        return l == Truth::True && r == Truth::True ? Truth::True : Truth::Unknown;
      }
      case FormulaKind::Or: {
        Truth l = eval(f.operand(0), asg);
        if (l == Truth::True) return l;
        Truth r = eval(f.operand(1), asg);
        if (r == Truth::True) return r;
        return l == Truth::False && r == Truth::False ? Truth::False : Truth::Unknown;
      }
      case FormulaKind::Implies: {
        Truth l = eval(f.operand(0), asg);
        if (l == Truth::False) return Truth::True;
        Truth r = eval(f.operand(1), asg);
        if (r == Truth::True) return r;
        return l == Truth::True && r == Truth::False ? Truth::False : Truth::Unknown;
      }
      case FormulaKind::Iff: {
        Truth l = eval(f.operand(0), asg);
        Truth r = eval(f.operand(1), asg);
        if (l == Truth::Unknown || r == Truth::Unknown) return Truth::Unknown;
        return truthOf(l == r);
      }
      case FormulaKind::ForAll:
      case FormulaKind::Exists:
        return quantifier(f, asg);
    }
    return Truth::Unknown;
  }

 private:
  bool mentionsArbitrary(const ArgList& list, const Assignment& asg) const {
    for (VarIndex v : list.variables()) {
      const std::string* name = lookupBinding(asg, v);
      if (name && name->empty()) return true;
    }
    return false;
  }

  Truth atom(const Formula& f, Assignment& asg) {
    if (stats_) ++stats_->atomEvaluations;
    const std::vector<ArgList>& args = f.args();
    if (arbitrary_ > 0) {
      bool arbitrary = std::any_of(args.begin(), args.end(), [&](const ArgList& l) { return mentionsArbitrary(l, asg); });
      if (arbitrary) {
        bool same = std::all_of(args.begin(), args.end(), [&](const ArgList& l) { return l == args[0]; });
        if (same && (f.kind() == FormulaKind::Eq || s_.reflexive(f.predicate(), args.size()))) return Truth::True;
        return Truth::Unknown;
      }
    }
    if (finite_) {
      if (f.kind() == FormulaKind::Eq) {
        std::size_t a = 0, b = 0;
        return truthOf(finite_->evalUnderIndex(args[0], asg, a) == finite_->evalUnderIndex(args[1], asg, b));
      }
      if (args.empty()) return truthOf(finite_->nullaryHolds(f.predicate()));
      const auto& tables = finite_->predicateTables();
      auto it = tables.find({f.predicate(), args.size()});
      std::vector<FiniteTermStructure::Index> row;
      row.reserve(args.size());
      for (const ArgList& l : args) {
        std::size_t at = 0;
        row.push_back(finite_->evalUnderIndex(l, asg, at));
      }
      return truthOf(it != tables.end() && it->second.count(row) > 0);
    }
    if (f.kind() == FormulaKind::Eq) return truthOf(s_.evalUnder(args[0], asg) == s_.evalUnder(args[1], asg));
    if (args.empty()) return truthOf(s_.nullaryHolds(f.predicate()));
    std::vector<Element> values;
    for (const ArgList& l : args) values.push_back(s_.evalUnder(l, asg));
    return truthOf(s_.predicateHolds(f.predicate(), values));
  }

  Truth quantifier(const Formula& f, Assignment& asg) {
    const bool all = f.kind() == FormulaKind::ForAll;
    const Formula& body = f.operand(0);
    bool sawUnknown = false;
    for (const std::string& name : s_.quantifierNames()) {
      if (stats_) ++stats_->quantifierInstances;
      asg.push_back({f.boundVariable(), name});
      Truth t = eval(body, asg);
      asg.pop_back();
      if (all && t == Truth::False) return t;
      if (!all && t == Truth::True) return t;
      if (t == Truth::Unknown) sawUnknown = true;
    }
    if (s_.quantifiersExact()) {
      if (sawUnknown) return Truth::Unknown;
      return all ? Truth::True : Truth::False;
    }
    asg.push_back({f.boundVariable(), std::string()});
    ++arbitrary_;
    Truth t = eval(body, asg);
    --arbitrary_;
    asg.pop_back();
    if (all && t == Truth::True) return t;
    if (!all && t == Truth::False) return t;
    return Truth::Unknown;
  }

  const Structure& s_;
  const FiniteTermStructure* finite_;
  EvalStats* stats_;
  int arbitrary_ = 0;
};

}  // namespace

FiniteTermStructure::Index FiniteTermStructure::evalUnderIndex(const ArgList& list, const Assignment& assignment,
                                                               std::size_t& at) const {
  return evalTokens(list.tokens(), at, &assignment);
}

void requireInLanguage(const Structure& structure, const Formula& formula) {
  const LanguageSpec& spec = structure.language();
  std::vector<const Formula*> stack{&formula};
  while (!stack.empty()) {
    const Formula& f = *stack.back();
    stack.pop_back();
    if (f.kind() == FormulaKind::Pred && !spec.isPredicate(f.predicate())) {
      throw Error(ErrorCode::NotInLanguage, "'" + f.predicate() + "' is not a predicate symbol");
    }
    for (std::size_t i = 0; i < f.operandCount(); ++i) stack.push_back(&f.operand(i));
  }
  for (const ArgList& l : formula.argLists()) {
    if (!memberL(spec, l, spec.nameExtension())) {
      throw Error(ErrorCode::NotInLanguage, toString(l) + " is not a list of the structure's language");
    }
  }
}

Truth evalAssigned(const Structure& structure, const Formula& formula, const Assignment& assignment,
                   EvalStats* stats) {
  for (VarIndex v : formula.freeVariables()) {
    const std::string* name = lookupBinding(assignment, v);
    if (!name) throw Error(ErrorCode::NotClosed, "free variable " + variableToken(v) + " is unassigned");
    if (!structure.names().contains(*name)) throw Error(ErrorCode::NotInLanguage, "unknown name " + *name);
  }
  requireInLanguage(structure, formula);
  Assignment asg = assignment;
  return Evaluator(structure, stats).eval(formula, asg);
}

Truth evalClosed(const Structure& structure, const Formula& formula, EvalStats* stats) {
  if (!formula.isClosed()) throw Error(ErrorCode::NotClosed, toString(formula) + " has free variables");
  requireInLanguage(structure, formula);
  Assignment asg;
  return Evaluator(structure, stats).eval(formula, asg);
}

Formula universalClosure(const Formula& formula) {
  std::set<VarIndex> free = formula.freeVariables();
  Formula out = formula;
  for (auto it = free.rbegin(); it != free.rend(); ++it) out = Formula::forAll(*it, out);
  return out;
}

Truth isValid(const Structure& structure, const Formula& formula, EvalStats* stats) {
  return evalClosed(structure, universalClosure(formula), stats);
}

Formula instantiate(const Formula& formula, const Assignment& assignment) {
  std::map<VarIndex, ArgList> reps;
  for (const Binding& b : assignment) reps.insert_or_assign(b.var, ArgList::name(b.name));
  return substitute(formula, reps);
}

std::optional<Assignment> findFalsifyingAssignment(const Structure& structure, const Formula& formula) {
  requireInLanguage(structure, formula);
  std::set<VarIndex> free = formula.freeVariables();
  std::vector<VarIndex> vars(free.begin(), free.end());
  const std::vector<std::string>& names = structure.quantifierNames();
  Evaluator evaluator(structure, nullptr);
  if (vars.empty()) {
    Assignment asg;
    if (evaluator.eval(formula, asg) == Truth::False) return asg;
    return std::nullopt;
  }
  if (names.empty()) return std::nullopt;
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Assignment asg;
    for (std::size_t i = 0; i < vars.size(); ++i) asg.push_back({vars[i], names[idx[i]]});
    Assignment scratch = asg;
    if (evaluator.eval(formula, scratch) == Truth::False) return asg;
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < names.size()) break;
      idx[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

ModelVerdict isModel(const Structure& structure, const std::vector<Formula>& axioms, EvalStats* stats) {
  ModelVerdict verdict;
  std::optional<std::size_t> firstUnknown;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    Truth t = isValid(structure, axioms[i], stats);
    verdict.perAxiom.push_back(t);
    if (t == Truth::True) ++verdict.validCount;
    if (t == Truth::False && !verdict.axiomIndex) verdict.axiomIndex = i;
    if (t == Truth::Unknown && !firstUnknown) firstUnknown = i;
  }
  if (verdict.axiomIndex) {
    verdict.status = ModelVerdict::Status::Counterexample;
    const Formula& axiom = axioms[*verdict.axiomIndex];
    verdict.axiom = axiom;
    const Formula* body = &axiom;
    while (body->kind() == FormulaKind::ForAll) body = &body->operand(0);
    if (auto asg = findFalsifyingAssignment(structure, *body)) {
      verdict.assignment = *asg;
      verdict.instance = instantiate(*body, *asg);
    }
  } else if (firstUnknown) {
    verdict.status = ModelVerdict::Status::Undetermined;
    verdict.axiomIndex = firstUnknown;
    verdict.axiom = axioms[*firstUnknown];
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Condition (4)

Condition4Report checkCondition4(const Structure& structure, int bound, VarIndex var, std::size_t keepViolations) {
  if (bound < 0) throw Error(ErrorCode::InvalidDefinition, "bound must be >= 0");
  if (var == 0) throw Error(ErrorCode::InvalidDefinition, "variables start at x1");
  Condition4Report report;
  report.bound = bound;
  const LanguageSpec& spec = structure.language();
  const bool term = spec.isTermGrammar();
  std::vector<std::string> names = structure.sampleNames(2);
  std::vector<ArgList> groundLeaves = leafAlphabet(spec, names);
  std::vector<ArgList> openLeaves = leafAlphabet(spec, names, {ArgList::variable(var)});

  // A name as substituent makes both sides the same list, so only the other
  // ground lists are swept, grouped by depth.
  std::vector<std::vector<ArgList>> substituents(static_cast<std::size_t>(bound) + 1);
  const int minLength = term ? 0 : 1;
  for (int d = minLength; d <= bound; ++d) {
    forEachListOfDepth(spec, groundLeaves, d, [&](const ArgList& mu) {
      if (!(mu.kind() == ArgKind::Name || (mu.isString() && mu.tokens().size() == 2 && mu.tokens()[1].kind == ArgKind::Name))) {
        substituents[static_cast<std::size_t>(d)].push_back(mu);
      }
    });
  }

  auto check = [&](const ArgList& lambda, const ArgList& mu) {
    ++report.pairsChecked;
    Element direct = structure.evalList(substitute(lambda, var, mu));
    ArgList alpha = ArgList::name(structure.nameOf(structure.evalList(mu)));
    Element viaName = structure.evalList(substitute(lambda, var, alpha));
    if (direct != viaName) {
      ++report.violationCount;
      if (report.violations.size() < keepViolations) report.violations.push_back({lambda, mu, direct, viaName});
    }
  };

  for (int dl = minLength; dl <= bound; ++dl) {
    int maxMu = term ? bound - dl : bound;
    bool any = false;
    for (int dm = minLength; dm <= maxMu; ++dm) any = any || !substituents[static_cast<std::size_t>(dm)].empty();
    if (!any) continue;
    forEachListOfDepth(spec, openLeaves, dl, [&](const ArgList& lambda) {
      if (!lambda.containsVariable(var)) return;
      for (int dm = minLength; dm <= maxMu; ++dm) {
        for (const ArgList& mu : substituents[static_cast<std::size_t>(dm)]) check(lambda, mu);
      }
    });
  }
  return report;
}

}  // namespace fms
