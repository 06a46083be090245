#include "fms/report.hpp"

#include <sstream>

#include "fms/error.hpp"
#include "fms/hfset.hpp"
#include "fms/parser.hpp"

namespace fms {

namespace {

const FiniteTermStructure& requireFinite(const Structure& s, const char* what) {
  const auto* f = dynamic_cast<const FiniteTermStructure*>(&s);
  if (!f) throw Error(ErrorCode::InvalidDefinition, std::string(what) + " needs a finite structure");
  return *f;
}

std::string joinVariables(const std::set<VarIndex>& vars) {
  if (vars.empty()) return "-";
  std::string out;
  for (VarIndex v : vars) {
    if (!out.empty()) out += ' ';
    out += variableToken(v);
  }
  return out;
}

// For a false closed formula, strips its leading universal quantifiers and
// reports the first assignment falsifying what remains.
void falsifyingInstance(const Structure& s, const Formula& closed, std::ostringstream& out) {
  const Formula* body = &closed;
  while (body->kind() == FormulaKind::ForAll) body = &body->operand(0);
  if (body == &closed) return;
  if (auto asg = findFalsifyingAssignment(s, *body)) {
    out << "  assignment: " << formatAssignment(*asg) << "\n";
    out << "  instance: " << toString(instantiate(*body, *asg)) << "\n";
  }
}

}  // namespace

std::string formatAssignment(const Assignment& assignment) {
  if (assignment.empty()) return "-";
  std::string out;
  for (const Binding& b : assignment) {
    if (!out.empty()) out += ' ';
    out += variableToken(b.var) + "=" + b.name;
  }
  return out;
}

std::string formatMap(const Morphism& psi) {
  std::string out;
  if (psi.isTable()) {
    const auto& src = requireFinite(psi.source(), "a table map");
    for (const Element& e : src.universe()) {
      if (!out.empty()) out += ' ';
      out += e + "->" + psi.apply(e);
    }
    return out;
  }
  for (const auto& [from, to] : psi.atoms()) {
    if (!out.empty()) out += ' ';
    out += from + "->" + to;
  }
  return "atoms " + out;
}

Report reportParseFormula(const LanguageSpec& spec, std::string_view formula) {
  Formula f = parseFormula(formula, spec);
  std::ostringstream out;
  out << "FORMULA: " << toString(f) << "\n";
  out << "FREE: " << joinVariables(f.freeVariables()) << "\n";
  out << "CLOSED: " << (f.isClosed() ? "yes" : "no") << "\n";
  return {true, out.str()};
}

Report reportParseList(const LanguageSpec& spec, std::string_view list) {
  ArgList l = parseList(list, spec);
  std::ostringstream out;
  out << "LIST: " << toString(l) << "\n";
  out << "VARIABLES: " << joinVariables(l.variables()) << "\n";
  out << "GROUND: " << (l.isGround() ? "yes" : "no") << "\n";
  if (l.isGround()) {
    Skeleton sk = skeleton(l);
    out << "SKELETON: " << toString(sk.pattern);
    for (std::size_t i = 0; i < sk.names.size(); ++i) out << " " << variableToken(sk.variables[i]) << "=" << sk.names[i];
    out << "\n";
  }
  return {true, out.str()};
}

Report reportEval(const Structure& structure, std::string_view formula) {
  Formula f = parseFormula(formula, structure.language());
  Truth t = evalClosed(structure, f);
  std::ostringstream out;
  out << "FORMULA: " << toString(f) << "\n" << truthName(t) << "\n";
  if (t == Truth::False) {
    out << "COUNTEREXAMPLE\n  formula: " << toString(f) << "\n";
    falsifyingInstance(structure, f, out);
  } else if (t == Truth::Unknown) {
    out << "UNDETERMINED\n  no witness or counterexample among the quantifier names\n";
  }
  return {t == Truth::True, out.str()};
}

Report reportValid(const Structure& structure, std::string_view formula) {
  Formula f = parseFormula(formula, structure.language());
  Formula closure = universalClosure(f);
  Truth t = evalClosed(structure, closure);
  std::ostringstream out;
  out << "FORMULA: " << toString(f) << "\n";
  out << "CLOSURE: " << toString(closure) << "\n";
  if (t == Truth::True) {
    out << "VALID\n";
  } else if (t == Truth::False) {
    out << "NOT VALID\nCOUNTEREXAMPLE\n";
    if (auto asg = findFalsifyingAssignment(structure, f)) {
      out << "  assignment: " << formatAssignment(*asg) << "\n";
      out << "  instance: " << toString(instantiate(f, *asg)) << "\n";
    }
  } else {
    out << "UNDETERMINED\n  no counterexample among the quantifier names\n";
  }
  return {t == Truth::True, out.str()};
}

Report reportCheckModel(const Structure& structure, const std::vector<Formula>& axioms) {
  ModelVerdict v = isModel(structure, axioms);
  std::ostringstream out;
  switch (v.status) {
    case ModelVerdict::Status::Model:
      out << "MODEL: " << v.validCount << "/" << axioms.size() << " axioms valid\n";
      break;
    case ModelVerdict::Status::Counterexample:
      out << "NOT A MODEL: " << v.validCount << "/" << axioms.size() << " axioms valid\n";
      break;
    case ModelVerdict::Status::Undetermined:
      out << "UNDETERMINED: " << v.validCount << "/" << axioms.size() << " axioms valid\n";
      break;
  }
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    const char* verdict = v.perAxiom[i] == Truth::True ? "VALID" : v.perAxiom[i] == Truth::False ? "INVALID" : "UNKNOWN";
    out << "  [" << i + 1 << "] " << verdict << " " << toString(axioms[i]) << "\n";
  }
  if (v.status == ModelVerdict::Status::Counterexample) {
    out << "COUNTEREXAMPLE\n";
    out << "  axiom: [" << *v.axiomIndex + 1 << "] " << toString(*v.axiom) << "\n";
    out << "  assignment: " << formatAssignment(v.assignment) << "\n";
    if (v.instance) out << "  instance: " << toString(*v.instance) << "\n";
  }
  return {v.status == ModelVerdict::Status::Model, out.str()};
}

Report reportPush(const Morphism& psi, std::string_view list) {
  ArgList l = parseList(list, psi.source().language());
  Skeleton sk = skeleton(l);
  ArgList pushed = pushList(psi, l);
  std::ostringstream out;
  out << "LIST: " << toString(l) << "\n";
  out << "SKELETON: " << toString(sk.pattern);
  for (std::size_t i = 0; i < sk.names.size(); ++i) out << " " << variableToken(sk.variables[i]) << "=" << sk.names[i];
  out << "\nPUSHED: " << toString(pushed) << "\n";
  return {true, out.str()};
}

Report reportMorphism(const Morphism& psi, bool iso, int depthBound) {
  MorphismVerdict v = iso ? isIsomorphism(psi, depthBound) : isHomomorphism(psi, depthBound);
  std::ostringstream out;
  out << "MAP: " << formatMap(psi) << "\n";
  const char* what = iso ? "ISOMORPHISM" : "HOMOMORPHISM";
  switch (v.status) {
    case MorphismVerdict::Status::ExactHomomorphism:
    case MorphismVerdict::Status::ExactIsomorphism:
      out << what << ": EXACT\n";
      break;
    case MorphismVerdict::Status::BoundedVerified:
      out << what << ": BOUNDED-VERIFIED to depth " << v.depth << "\n";
      break;
    case MorphismVerdict::Status::Counterexample:
      out << what << ": NO\nCOUNTEREXAMPLE\n  " << v.reason << "\n";
      if (v.list) out << "  list: " << toString(*v.list) << "\n";
      break;
  }
  return {v.holds(), out.str()};
}

Report reportEnumerateMorphisms(const std::shared_ptr<const Structure>& source,
                                const std::shared_ptr<const Structure>& target, bool iso) {
  auto src = std::dynamic_pointer_cast<const FiniteTermStructure>(source);
  auto tgt = std::dynamic_pointer_cast<const FiniteTermStructure>(target);
  if (!src || !tgt) throw Error(ErrorCode::InvalidDefinition, "enumeration needs finite structures");
  std::vector<Morphism> found = enumerateMorphisms(src, tgt, iso ? MorphismMode::Iso : MorphismMode::Hom);
  std::ostringstream out;
  out << (iso ? "ISOMORPHISMS: " : "HOMOMORPHISMS: ") << found.size() << "\n";
  for (std::size_t i = 0; i < found.size(); ++i) out << "  [" << i + 1 << "] " << formatMap(found[i]) << "\n";
  if (found.empty()) out << "COUNTEREXAMPLE\n  no map passes the check\n";
  return {!found.empty(), out.str()};
}

Report reportHenkin(const Structure& structure, const FragmentBounds& bounds) {
  const FiniteTermStructure& d = requireFinite(structure, "henkin");
  FragmentPartition part = enumerateValidFragment(d, bounds);
  FragmentReport checks = fragmentConsistencyReport(d, bounds);
  std::ostringstream out;
  out << "BOUNDED FRAGMENT: connectiveDepth=" << bounds.connectiveDepth << " listDepth=" << bounds.listDepth
      << " maxQuantifiers=" << bounds.maxQuantifiers << " maxAtoms=" << bounds.maxAtoms
      << " maxNames=" << (bounds.maxNames < 0 ? std::string("all") : std::to_string(bounds.maxNames)) << "\n";
  out << "VALID " << part.valid.size() << "\n";
  for (const Formula& f : part.valid) out << toString(f) << "\n";
  out << "INVALID " << part.invalid.size() << "\n";
  for (const Formula& f : part.invalid) out << toString(f) << "\n";
  out << "CHECKS\n";
  out << "  partition: " << (checks.partitionOk ? "ok" : "FAILED") << "\n";
  out << "  complementarity: " << (checks.complementarityOk ? "ok" : "FAILED") << "\n";
  out << "  witnesses: " << (checks.witnessesOk ? "ok" : "FAILED") << " (" << checks.witnessesChecked << " checked)\n";
  if (!checks.ok()) {
    out << "COUNTEREXAMPLE\n";
    if (checks.partitionFailure) out << "  partition: " << toString(*checks.partitionFailure) << "\n";
    if (checks.complementFailure) out << "  complementarity: " << toString(*checks.complementFailure) << "\n";
    if (checks.witnessFailure) out << "  witness: " << toString(*checks.witnessFailure) << "\n";
  }
  return {checks.ok(), out.str()};
}

Report reportWitness(const Structure& structure, VarIndex var, std::string_view formula) {
  const FiniteTermStructure& d = requireFinite(structure, "henkin");
  Formula f = parseFormula(formula, d.language());
  std::string c = henkinWitness(d, var, f);
  Formula ex = Formula::exists(var, f);
  Formula instance = Formula::binary(FormulaKind::Iff, ex, substitute(f, var, ArgList::name(c)));
  Truth exTruth = evalClosed(d, ex);
  Truth t = isValid(d, instance);
  std::ostringstream out;
  out << "FORMULA: " << toString(f) << "\n";
  out << "EXISTS: " << truthName(exTruth) << "\n";
  out << "WITNESS: " << c << "\n";
  out << "INSTANCE: " << toString(instance) << "\n";
  out << (t == Truth::True ? "VALID" : "NOT VALID") << "\n";
  if (t != Truth::True) out << "COUNTEREXAMPLE\n  instance: " << toString(instance) << "\n";
  return {t == Truth::True, out.str()};
}

Report reportCondition4(const Structure& structure, int bound) {
  Condition4Report r = checkCondition4(structure, bound);
  std::ostringstream out;
  out << "CONDITION4: bound " << r.bound << ", " << r.pairsChecked << " pairs, " << r.violationCount
      << " violations\n";
  if (r.violationCount > 0) {
    out << "COUNTEREXAMPLE\n";
    for (const auto& v : r.violations) {
      out << "  list " << toString(v.list) << " with " << toString(v.substituent) << ": " << v.direct << " vs "
          << v.viaName << "\n";
    }
  }
  return {r.violationCount == 0, out.str()};
}

Report reportHF(std::string_view op, const std::vector<std::string>& operands) {
  std::vector<HFSet> sets;
  for (const std::string& s : operands) sets.push_back(parseHFSet(s));
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (sets.size() < lo || sets.size() > hi) {
      throw Error(ErrorCode::Syntax, "hf " + std::string(op) + " takes " + std::to_string(lo) +
                                         (lo == hi ? "" : "-" + std::to_string(hi)) + " set(s)");
    }
  };
  std::ostringstream out;
  auto result = [&](const HFSet& s) {
    out << "RESULT: " << toString(s) << "\n";
    out << "RANK: " << s.rank() << "\n";
    return Report{true, out.str()};
  };
  if (op == "tc") {
    arity(1, 1);
    return result(transitiveClosure(sets[0]));
  }
  if (op == "pow") {
    arity(1, 1);
    return result(powerSet(sets[0]));
  }
  if (op == "union") {
    arity(1, 2);
    return result(sets.size() == 1 ? bigUnion(sets[0]) : setUnion(sets[0], sets[1]));
  }
  if (op == "inter") {
    arity(2, 2);
    return result(setIntersection(sets[0], sets[1]));
  }
  if (op == "diff") {
    arity(2, 2);
    return result(setDifference(sets[0], sets[1]));
  }
  if (op == "pair") {
    arity(2, 2);
    return result(pairSet(sets[0], sets[1]));
  }
  if (op == "product") {
    arity(2, 2);
    return result(cartesianProduct(sets[0], sets[1]));
  }
  if (op == "choice") {
    arity(1, 1);
    return result(choiceSet(sets[0]));
  }
  if (op == "reg") {
    arity(1, 1);
    return result(regularityWitness(sets[0]));
  }
  if (op == "rank") {
    arity(1, 1);
    out << "RANK: " << sets[0].rank() << "\n";
    return {true, out.str()};
  }
  if (op == "transitive") {
    arity(1, 1);
    bool t = isTransitive(sets[0]);
    out << "TRANSITIVE: " << (t ? "yes" : "no") << "\n";
    if (!t) {
      for (const HFSet& y : sets[0].members()) {
        for (const HFSet& x : y.members()) {
          if (!sets[0].contains(x)) {
            out << "COUNTEREXAMPLE\n  " << toString(x) << " in " << toString(y) << " but not in the set\n";
            return {false, out.str()};
          }
        }
      }
    }
    return {t, out.str()};
  }
  if (op == "friendly") {
    arity(1, 1);
    SubsetFriendlyReport r = checkSubsetFriendly(sets[0]);
    out << "SET: " << toString(sets[0]) << "\n";
    out << "SUBSET-FRIENDLY: " << (r.friendly() ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
      out << "  condition " << i + 1 << ": " << (r.conditions[i].pass ? "pass" : "violated") << "\n";
    }
    if (!r.friendly()) {
      out << "COUNTEREXAMPLE\n";
      for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        if (!r.conditions[i].pass) out << "  condition " << i + 1 << ": " << r.conditions[i].witness << "\n";
      }
    }
    return {r.friendly(), out.str()};
  }
  throw Error(ErrorCode::Syntax, "unknown hf operation '" + std::string(op) + "'");
}

}  // namespace fms
