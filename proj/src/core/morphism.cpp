#include "fms/morphism.hpp"

#include <algorithm>
#include <set>

#include "fms/error.hpp"

namespace fms {

namespace {

const FiniteTermStructure* asFinite(const Structure& s) { return dynamic_cast<const FiniteTermStructure*>(&s); }
const StringStructure* asString(const Structure& s) { return dynamic_cast<const StringStructure*>(&s); }

bool sameStringPredicates(const StringStructure& a, const StringStructure& b) {
  if (a.predicates().size() != b.predicates().size()) return false;
  auto ia = a.predicates().begin();
  auto ib = b.predicates().begin();
  for (; ia != a.predicates().end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.kind != ib->second.kind || ia->second.literal != ib->second.literal) {
      return false;
    }
  }
  return true;
}

void requireSameLanguage(const Structure& a, const Structure& b) {
  if (!(a.language() == b.language())) {
    throw Error(ErrorCode::LanguageMismatch, "source and target are structures of different languages");
  }
}

std::string joinTuple(const std::vector<Element>& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ",";
    out += tuple[i];
  }
  return out + ")";
}

}  // namespace

const char* morphismStatusName(MorphismVerdict::Status status) noexcept {
  switch (status) {
    case MorphismVerdict::Status::ExactHomomorphism: return "EXACT-HOMOMORPHISM";
    case MorphismVerdict::Status::ExactIsomorphism: return "EXACT-ISOMORPHISM";
    case MorphismVerdict::Status::BoundedVerified: return "BOUNDED-VERIFIED";
    case MorphismVerdict::Status::Counterexample: return "COUNTEREXAMPLE";
  }
  return "?";
}

bool sameStructure(const Structure& a, const Structure& b) {
  if (&a == &b) return true;
  const FiniteTermStructure* fa = asFinite(a);
  const FiniteTermStructure* fb = asFinite(b);
  if (fa && fb) return *fa == *fb;
  const StringStructure* sa = asString(a);
  const StringStructure* sb = asString(b);
  if (sa && sb) {
    return sa->atoms() == sb->atoms() && sa->quantBound() == sb->quantBound() && sameStringPredicates(*sa, *sb);
  }
  return false;
}

Morphism Morphism::table(StructurePtr source, StructurePtr target, std::map<Element, Element> map) {
  const FiniteTermStructure* src = asFinite(*source);
  const FiniteTermStructure* tgt = asFinite(*target);
  if (!src || !tgt) throw Error(ErrorCode::InvalidDefinition, "table maps need finite structures on both sides");
  requireSameLanguage(*src, *tgt);
  for (const auto& [from, to] : map) {
    if (!src->isElement(from)) throw Error(ErrorCode::InvalidDefinition, "'" + from + "' is not a source element");
    if (!tgt->isElement(to)) throw Error(ErrorCode::InvalidDefinition, "'" + to + "' is not a target element");
  }
  for (const Element& e : src->universe()) {
    if (!map.count(e)) throw Error(ErrorCode::InvalidDefinition, "the map is not defined on '" + e + "'");
  }
  Morphism out(std::move(source), std::move(target));
  out.map_ = std::move(map);
  return out;
}

Morphism Morphism::atomMap(StructurePtr source, StructurePtr target, std::map<std::string, std::string> atoms) {
  const StringStructure* src = asString(*source);
  const StringStructure* tgt = asString(*target);
  if (!src || !tgt) throw Error(ErrorCode::InvalidDefinition, "atom maps need string structures on both sides");
  requireSameLanguage(*src, *tgt);
  const auto& tgtAtoms = tgt->atoms();
  for (const std::string& a : src->atoms()) {
    auto it = atoms.find(a);
    if (it == atoms.end()) {
      atoms.emplace(a, a);
      continue;
    }
    if (std::find(tgtAtoms.begin(), tgtAtoms.end(), it->second) == tgtAtoms.end()) {
      throw Error(ErrorCode::InvalidDefinition, "'" + it->second + "' is not a target atom");
    }
  }
  for (const auto& [from, to] : atoms) {
    if (std::find(src->atoms().begin(), src->atoms().end(), from) == src->atoms().end()) {
      throw Error(ErrorCode::InvalidDefinition, "'" + from + "' is not a source atom");
    }
    (void)to;
  }
  Morphism out(std::move(source), std::move(target));
  out.isAtomMap_ = true;
  out.atoms_ = std::move(atoms);
  return out;
}

Morphism Morphism::identity(StructurePtr structure) {
  if (const FiniteTermStructure* f = asFinite(*structure)) {
    std::map<Element, Element> map;
    for (const Element& e : f->universe()) map.emplace(e, e);
    return table(structure, structure, std::move(map));
  }
  return atomMap(structure, structure, {});
}

Element Morphism::apply(const Element& e) const {
  if (!isAtomMap_) {
    auto it = map_.find(e);
    if (it == map_.end()) throw Error(ErrorCode::NotInLanguage, "'" + e + "' is not a source element");
    return it->second;
  }
  const StringStructure& src = *asString(*source_);
  const StringStructure& tgt = *asString(*target_);
  auto word = src.decode(e);
  if (!word) throw Error(ErrorCode::NotInLanguage, "'" + e + "' is not a source element");
  for (std::string& a : *word) a = atoms_.at(a);
  return tgt.encode(*word);
}

std::string Morphism::mapName(const std::string& sourceName) const {
  return target_->nameOf(apply(source_->elementOf(sourceName)));
}

bool operator==(const Morphism& a, const Morphism& b) {
  return a.isAtomMap_ == b.isAtomMap_ && a.map_ == b.map_ && a.atoms_ == b.atoms_ &&
         sameStructure(*a.source_, *b.source_) && sameStructure(*a.target_, *b.target_);
}

namespace {

void requireGroundSource(const Morphism& psi, const ArgList& ground) {
  if (!ground.isGround()) throw Error(ErrorCode::NotGround, toString(ground) + " has variables");
  const LanguageSpec& spec = psi.source().language();
  if (!memberL(spec, ground, spec.nameExtension())) {
    throw Error(ErrorCode::NotInLanguage, toString(ground) + " is not a list of the source language");
  }
}

}  // namespace

ArgList pushList(const Morphism& psi, const ArgList& ground) {
  requireGroundSource(psi, ground);
  Skeleton sk = skeleton(ground);
  std::map<VarIndex, ArgList> reps;
  for (std::size_t i = 0; i < sk.names.size(); ++i) reps.emplace(sk.variables[i], ArgList::name(psi.mapName(sk.names[i])));
  return substitute(sk.pattern, reps);
}

ArgList pushListByLeaves(const Morphism& psi, const ArgList& ground) {
  requireGroundSource(psi, ground);
  std::vector<ArgToken> tokens(ground.tokens().begin(), ground.tokens().end());
  for (ArgToken& t : tokens) {
    if (t.kind == ArgKind::Name) t.text = psi.mapName(t.text);
  }
  return ArgList::fromTokens(std::move(tokens));
}

ArgList pushDecomposition(const Morphism& psi, const ArgList& pattern, const std::map<VarIndex, std::string>& names) {
  std::map<VarIndex, ArgList> original;
  std::map<VarIndex, ArgList> pushed;
  for (const auto& [v, n] : names) {
    original.emplace(v, ArgList::name(n));
    pushed.emplace(v, ArgList::name(psi.mapName(n)));
  }
  ArgList ground = substitute(pattern, original);
  requireGroundSource(psi, ground);
  ArgList out = substitute(pattern, pushed);
  if (!out.isGround()) throw Error(ErrorCode::NotGround, "the decomposition leaves variables unassigned");
  return out;
}

namespace {

Formula mapLists(const Formula& f, const std::function<ArgList(const ArgList&)>& fn) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return Formula::eq(fn(f.args()[0]), fn(f.args()[1]));
    case FormulaKind::Pred: {
      std::vector<ArgList> args;
      for (const ArgList& l : f.args()) args.push_back(fn(l));
      return Formula::pred(f.predicate(), std::move(args));
    }
    case FormulaKind::Not:
      return Formula::negation(mapLists(f.operand(0), fn));
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      return Formula::quantified(f.kind(), f.boundVariable(), mapLists(f.operand(0), fn));
    default:
      return Formula::binary(f.kind(), mapLists(f.operand(0), fn), mapLists(f.operand(1), fn));
  }
}

}  // namespace

Formula pushFormula(const Morphism& psi, const Formula& formula) {
  return mapLists(formula, [&](const ArgList& l) {
    std::vector<ArgToken> tokens(l.tokens().begin(), l.tokens().end());
    for (ArgToken& t : tokens) {
      if (t.kind == ArgKind::Name) t.text = psi.mapName(t.text);
    }
    return ArgList::fromTokens(std::move(tokens));
  });
}

namespace {

MorphismVerdict commutingFailure(const ArgList& list, Element expected, Element actual) {
  MorphismVerdict v;
  v.status = MorphismVerdict::Status::Counterexample;
  v.failure = MorphismVerdict::Failure::Commuting;
  v.reason = "psi(D1(" + toString(list) + ")) = " + expected + " but D2(psi_*(" + toString(list) + ")) = " + actual;
  v.list = list;
  v.expected = std::move(expected);
  v.actual = std::move(actual);
  return v;
}

MorphismVerdict predicateFailure(const std::string& symbol, std::vector<Element> tuple, const std::string& why) {
  MorphismVerdict v;
  v.status = MorphismVerdict::Status::Counterexample;
  v.failure = MorphismVerdict::Failure::Predicate;
  v.predicate = symbol;
  v.reason = symbol + "/" + std::to_string(tuple.size()) + " " + joinTuple(tuple) + ": " + why;
  v.tuple = std::move(tuple);
  return v;
}

// Constants and function tables: psi(f1(v)) = f2(psi v) for every tuple.
std::optional<MorphismVerdict> checkGenerators(const Morphism& psi, const FiniteTermStructure& d1,
                                               const FiniteTermStructure& d2) {
  const TermGrammar& grammar = d1.language().termGrammar();
  for (const std::string& c : grammar.constants) {
    Element expected = psi.apply(d1.universe()[d1.constantValue(c)]);
    Element actual = d2.universe()[d2.constantValue(c)];
    if (expected != actual) return commutingFailure(ArgList::symbol(c), expected, actual);
  }
  const std::size_t n = d1.size();
  std::vector<FiniteTermStructure::Index> image(n);
  for (FiniteTermStructure::Index i = 0; i < n; ++i) image[i] = d2.indexOf(psi.apply(d1.universe()[i]));
  for (const auto& [f, arity] : grammar.functions) {
    std::vector<FiniteTermStructure::Index> args(arity, 0), mapped(arity);
    while (true) {
      for (std::size_t i = 0; i < arity; ++i) mapped[i] = image[args[i]];
      FiniteTermStructure::Index expected = image[d1.applyFunction(f, args)];
      FiniteTermStructure::Index actual = d2.applyFunction(f, mapped);
      if (expected != actual) {
        std::vector<ArgList> children;
        for (auto a : args) children.push_back(ArgList::name(d1.nameAt(a)));
        return commutingFailure(ArgList::apply(f, children), d2.universe()[expected], d2.universe()[actual]);
      }
      std::size_t pos = arity;
      while (pos > 0) {
        --pos;
        if (++args[pos] < n) break;
        args[pos] = 0;
        if (pos == 0) goto nextFunction;
      }
    }
  nextFunction:;
  }
  return std::nullopt;
}

std::vector<Element> elementsOf(const FiniteTermStructure& d, const std::vector<FiniteTermStructure::Index>& row) {
  std::vector<Element> out;
  for (auto i : row) out.push_back(d.universe()[i]);
  return out;
}

std::optional<MorphismVerdict> checkPredicates(const Morphism& psi, const FiniteTermStructure& d1,
                                               const FiniteTermStructure& d2, bool reflect) {
  for (const std::string& p : d1.language().predicates()) {
    bool p1 = d1.nullaryHolds(p);
    bool p2 = d2.nullaryHolds(p);
    if (p1 && !p2) return predicateFailure(p, {}, "holds in the source but not in the target");
    if (reflect && p2 && !p1) return predicateFailure(p, {}, "holds in the target but not in the source");
  }
  std::vector<FiniteTermStructure::Index> image(d1.size());
  for (FiniteTermStructure::Index i = 0; i < d1.size(); ++i) image[i] = d2.indexOf(psi.apply(d1.universe()[i]));
  std::set<FiniteTermStructure::PredicateKey> keys;
  for (const auto& [k, rows] : d1.predicateTables()) keys.insert(k);
  if (reflect) {
    for (const auto& [k, rows] : d2.predicateTables()) keys.insert(k);
  }
  static const std::set<std::vector<FiniteTermStructure::Index>> kEmpty;
  for (const auto& key : keys) {
    auto it1 = d1.predicateTables().find(key);
    auto it2 = d2.predicateTables().find(key);
    const auto& rows1 = it1 == d1.predicateTables().end() ? kEmpty : it1->second;
    const auto& rows2 = it2 == d2.predicateTables().end() ? kEmpty : it2->second;
    std::set<std::vector<FiniteTermStructure::Index>> mappedRows;
    for (const auto& row : rows1) {
      std::vector<FiniteTermStructure::Index> mapped;
      for (auto i : row) mapped.push_back(image[i]);
      if (!rows2.count(mapped)) {
        return predicateFailure(key.first, elementsOf(d1, row), "holds in the source but not for the image");
      }
      mappedRows.insert(std::move(mapped));
    }
    if (!reflect) continue;
    // With psi bijective, reflection means every target row is an image row.
    std::vector<FiniteTermStructure::Index> preimage(d2.size());
    for (FiniteTermStructure::Index i = 0; i < d1.size(); ++i) preimage[image[i]] = i;
    for (const auto& row : rows2) {
      if (mappedRows.count(row)) continue;
      std::vector<FiniteTermStructure::Index> back;
      for (auto i : row) back.push_back(preimage[i]);
      return predicateFailure(key.first, elementsOf(d1, back), "holds for the image but not in the source");
    }
  }
  return std::nullopt;
}

std::optional<MorphismVerdict> checkBijective(const Morphism& psi, const Structure& d1, const Structure& d2) {
  const FiniteTermStructure& f1 = *asFinite(d1);
  const FiniteTermStructure& f2 = *asFinite(d2);
  std::map<Element, Element> seen;
  for (const Element& e : f1.universe()) {
    Element img = psi.apply(e);
    auto [it, fresh] = seen.emplace(img, e);
    if (!fresh) {
      MorphismVerdict v;
      v.status = MorphismVerdict::Status::Counterexample;
      v.failure = MorphismVerdict::Failure::NotInjective;
      v.tuple = {it->second, e};
      v.reason = "not injective: " + it->second + " and " + e + " both map to " + img;
      return v;
    }
  }
  for (const Element& e : f2.universe()) {
    if (!seen.count(e)) {
      MorphismVerdict v;
      v.status = MorphismVerdict::Status::Counterexample;
      v.failure = MorphismVerdict::Failure::NotSurjective;
      v.tuple = {e};
      v.reason = "not surjective: " + e + " has no preimage";
      return v;
    }
  }
  return std::nullopt;
}

MorphismVerdict boundedStringCheck(const Morphism& psi, int depthBound, bool iso) {
  const StringStructure& d1 = *asString(psi.source());
  const StringStructure& d2 = *asString(psi.target());
  if (iso) {
    std::set<std::string> images;
    for (const auto& [from, to] : psi.atoms()) {
      if (!images.insert(to).second) {
        MorphismVerdict v;
        v.status = MorphismVerdict::Status::Counterexample;
        v.failure = MorphismVerdict::Failure::NotInjective;
        v.reason = "not injective: two atoms map to " + to;
        v.tuple = {to};
        return v;
      }
    }
    if (images.size() != d2.atoms().size()) {
      MorphismVerdict v;
      v.status = MorphismVerdict::Status::Counterexample;
      v.failure = MorphismVerdict::Failure::NotSurjective;
      v.reason = "not surjective: some target atom has no preimage";
      return v;
    }
  }
  NameSet sample(d1.sampleNames(2), "sample");
  for (const ArgList& l : enumerateGround(d1.language(), sample, std::max(depthBound, 1))) {
    Element expected = psi.apply(d1.evalList(l));
    Element actual = d2.evalList(pushList(psi, l));
    if (expected != actual) return commutingFailure(l, expected, actual);
  }
  std::vector<Element> elems = d1.elementsUpTo(std::min(std::max(depthBound, 1), 2));
  for (const auto& [key, def] : d1.predicates()) {
    const std::size_t arity = key.second;
    std::vector<std::size_t> idx(arity, 0);
    while (true) {
      std::vector<Element> tuple, mapped;
      for (auto i : idx) {
        tuple.push_back(elems[i]);
        mapped.push_back(psi.apply(elems[i]));
      }
      bool p1 = d1.predicateHolds(key.first, tuple);
      bool p2 = d2.predicateHolds(key.first, mapped);
      if (p1 && !p2) return predicateFailure(key.first, tuple, "holds in the source but not for the image");
      if (iso && p2 && !p1) return predicateFailure(key.first, tuple, "holds for the image but not in the source");
      std::size_t pos = arity;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < elems.size()) break;
        idx[pos] = 0;
        if (pos == 0) goto nextPredicate;
      }
    }
  nextPredicate:;
  }
  MorphismVerdict v;
  v.status = MorphismVerdict::Status::BoundedVerified;
  v.depth = std::max(depthBound, 1);
  return v;
}

}  // namespace

MorphismVerdict isHomomorphism(const Morphism& psi, int depthBound) {
  requireSameLanguage(psi.source(), psi.target());
  if (!psi.isTable()) return boundedStringCheck(psi, depthBound, false);
  const FiniteTermStructure& d1 = *asFinite(psi.source());
  const FiniteTermStructure& d2 = *asFinite(psi.target());
  if (auto failure = checkGenerators(psi, d1, d2)) return *failure;
  if (auto failure = checkPredicates(psi, d1, d2, false)) return *failure;
  return MorphismVerdict{};
}

MorphismVerdict isIsomorphism(const Morphism& psi, int depthBound) {
  requireSameLanguage(psi.source(), psi.target());
  if (!psi.isTable()) return boundedStringCheck(psi, depthBound, true);
  const FiniteTermStructure& d1 = *asFinite(psi.source());
  const FiniteTermStructure& d2 = *asFinite(psi.target());
  if (auto failure = checkBijective(psi, d1, d2)) return *failure;
  if (auto failure = checkGenerators(psi, d1, d2)) return *failure;
  if (auto failure = checkPredicates(psi, d1, d2, true)) return *failure;
  MorphismVerdict v;
  v.status = MorphismVerdict::Status::ExactIsomorphism;
  return v;
}

Morphism compose(const Morphism& phi, const Morphism& psi) {
  if (!sameStructure(psi.target(), phi.source())) {
    throw Error(ErrorCode::StructureMismatch, "the target of the first map is not the source of the second");
  }
  if (psi.isTable() != phi.isTable()) throw Error(ErrorCode::StructureMismatch, "maps of different kinds");
  if (psi.isTable()) {
    std::map<Element, Element> map;
    for (const auto& [from, mid] : psi.tableMap()) map.emplace(from, phi.apply(mid));
    return Morphism::table(psi.sourcePtr(), phi.targetPtr(), std::move(map));
  }
  std::map<std::string, std::string> atoms;
  for (const auto& [from, mid] : psi.atoms()) atoms.emplace(from, phi.atoms().at(mid));
  return Morphism::atomMap(psi.sourcePtr(), phi.targetPtr(), std::move(atoms));
}

Morphism invert(const Morphism& psi, int depthBound) {
  MorphismVerdict v = isIsomorphism(psi, depthBound);
  if (!v.holds()) throw Error(ErrorCode::NotInvertible, "not an isomorphism: " + v.reason);
  if (psi.isTable()) {
    std::map<Element, Element> map;
    for (const auto& [from, to] : psi.tableMap()) map.emplace(to, from);
    return Morphism::table(psi.targetPtr(), psi.sourcePtr(), std::move(map));
  }
  std::map<std::string, std::string> atoms;
  for (const auto& [from, to] : psi.atoms()) atoms.emplace(to, from);
  return Morphism::atomMap(psi.targetPtr(), psi.sourcePtr(), std::move(atoms));
}

namespace {

using Index = FiniteTermStructure::Index;

// Checks every constraint whose elements are all assigned and that involves
// the most recently assigned source element `k`.
bool consistentSoFar(const FiniteTermStructure& d1, const FiniteTermStructure& d2, const std::vector<Index>& image,
                     Index k) {
  const TermGrammar& grammar = d1.language().termGrammar();
  for (const std::string& c : grammar.constants) {
    Index v = d1.constantValue(c);
    if (v == k && image[v] != d2.constantValue(c)) return false;
  }
  for (const auto& [f, arity] : grammar.functions) {
    std::vector<Index> args(arity, 0), mapped(arity);
    while (true) {
      Index value = d1.applyFunction(f, args);
      bool involvesK = value == k || std::find(args.begin(), args.end(), k) != args.end();
      if (involvesK && value <= k) {
        for (std::size_t i = 0; i < arity; ++i) mapped[i] = image[args[i]];
        if (image[value] != d2.applyFunction(f, mapped)) return false;
      }
      std::size_t pos = arity;
      while (pos > 0) {
        --pos;
        if (++args[pos] <= k) break;
        args[pos] = 0;
        if (pos == 0) goto nextFunction;
      }
    }
  nextFunction:;
  }
  for (const auto& [key, rows] : d1.predicateTables()) {
    auto it2 = d2.predicateTables().find(key);
    for (const auto& row : rows) {
      if (std::any_of(row.begin(), row.end(), [k](Index i) { return i > k; })) continue;
      if (std::find(row.begin(), row.end(), k) == row.end()) continue;
      std::vector<Index> mapped;
      for (Index i : row) mapped.push_back(image[i]);
      if (it2 == d2.predicateTables().end() || !it2->second.count(mapped)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Morphism> enumerateMorphisms(const std::shared_ptr<const FiniteTermStructure>& source,
                                         const std::shared_ptr<const FiniteTermStructure>& target, MorphismMode mode,
                                         std::size_t universeCap) {
  requireSameLanguage(*source, *target);
  if (source->size() > universeCap) {
    throw Error(ErrorCode::UniverseTooLarge, "source universe has " + std::to_string(source->size()) +
                                                 " elements; the cap is " + std::to_string(universeCap));
  }
  const bool iso = mode == MorphismMode::Iso;
  std::vector<Morphism> out;
  if (iso && source->size() != target->size()) return out;
  const std::size_t n = source->size();
  const std::size_t m = target->size();
  std::vector<Index> image(n, 0);
  std::vector<bool> used(m, false);

  auto emit = [&] {
    std::map<Element, Element> map;
    for (Index i = 0; i < n; ++i) map.emplace(source->universe()[i], target->universe()[image[i]]);
    Morphism psi = Morphism::table(source, target, std::move(map));
    MorphismVerdict v = iso ? isIsomorphism(psi) : isHomomorphism(psi);
    if (v.holds()) out.push_back(std::move(psi));
  };

  std::function<void(Index)> extend = [&](Index k) {
    if (k == n) {
      emit();
      return;
    }
    for (Index t = 0; t < m; ++t) {
      if (iso && used[t]) continue;
      image[k] = t;
      if (!consistentSoFar(*source, *target, image, k)) continue;
      used[t] = true;
      extend(k + 1);
      used[t] = false;
    }
  };
  extend(0);
  return out;
}

}  // namespace fms
