#include "fms/henkin.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "fms/error.hpp"

namespace fms {

namespace {

struct Item {
  Formula formula;
  std::uint64_t vars;  // bit i set when x_i occurs free
  int atoms;
  int quantifiers;
  int depth;
};

std::uint64_t variableMask(const std::set<VarIndex>& vars) {
  std::uint64_t mask = 0;
  for (VarIndex v : vars) mask |= std::uint64_t{1} << v;
  return mask;
}

class FragmentBuilder {
 public:
  FragmentBuilder(const FiniteTermStructure& structure, const FragmentBounds& bounds)
      : structure_(structure), bounds_(bounds) {
    if (bounds.connectiveDepth < 0 || bounds.listDepth < 0 || bounds.maxQuantifiers < 0 || bounds.maxAtoms < 1) {
      throw Error(ErrorCode::InvalidDefinition, "fragment bounds must be >= 0 and allow at least one atom");
    }
    const auto& all = structure.names().names();
    std::size_t keep = bounds.maxNames < 0 ? all.size() : std::min<std::size_t>(all.size(), bounds.maxNames);
    names_.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep));
  }

  std::vector<Formula> build(VarIndex freeVars) {
    if (freeVars + bounds_.maxQuantifiers >= 63) throw Error(ErrorCode::TooLarge, "too many variables in scope");
    std::vector<const Item*> items;
    for (int c = 0; c <= bounds_.connectiveDepth; ++c) {
      for (const Item& it : exact(freeVars, c)) items.push_back(&it);
    }
    std::vector<std::pair<std::pair<std::size_t, std::string>, const Item*>> keyed;
    keyed.reserve(items.size());
    for (const Item* it : items) keyed.push_back({{it->formula.size(), toString(it->formula)}, it});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Formula> out;
    out.reserve(keyed.size());
    for (const auto& k : keyed) out.push_back(k.second->formula);
    return out;
  }

 private:
  void charge(std::size_t more) {
    total_ += more;
    if (total_ > bounds_.cap) {
      throw Error(ErrorCode::ExplosionGuard, "the fragment exceeds the cap of " + std::to_string(bounds_.cap) +
                                                 " formulas; tighten the bounds");
    }
  }

  const std::vector<Item>& exact(VarIndex scope, int depth) {
    auto key = std::make_pair(scope, depth);
    auto found = memo_.find(key);
    if (found != memo_.end()) return found->second;
    std::vector<Item> out = depth == 0 ? atoms(scope) : compound(scope, depth);
    return memo_.emplace(key, std::move(out)).first->second;
  }

  std::vector<Item> atoms(VarIndex scope) {
    std::vector<ArgList> extra;
    for (VarIndex v = 1; v <= scope; ++v) extra.push_back(ArgList::variable(v));
    const LanguageSpec& spec = structure_.language();
    std::vector<ArgList> lists = enumerateLists(spec, leafAlphabet(spec, names_, extra), bounds_.listDepth, bounds_.cap);
    std::vector<std::uint64_t> masks;
    for (const ArgList& l : lists) masks.push_back(variableMask(l.variables()));

    std::vector<Item> out;
    charge(lists.size() * lists.size());
    for (std::size_t i = 0; i < lists.size(); ++i) {
      for (std::size_t j = 0; j < lists.size(); ++j) {
        out.push_back({Formula::eq(lists[i], lists[j]), masks[i] | masks[j], 1, 0, 0});
      }
    }
    for (const std::string& p : spec.predicates()) {
      charge(1);
      out.push_back({Formula::pred(p, {}), 0, 1, 0, 0});
    }
    for (const auto& [key, rows] : structure_.predicateTables()) {
      const std::size_t arity = key.second;
      std::vector<std::size_t> idx(arity, 0);
      while (true) {
        charge(1);
        std::vector<ArgList> args;
        std::uint64_t mask = 0;
        for (std::size_t i : idx) {
          args.push_back(lists[i]);
          mask |= masks[i];
        }
        out.push_back({Formula::pred(key.first, std::move(args)), mask, 1, 0, 0});
        std::size_t pos = arity;
        while (pos > 0) {
          --pos;
          if (++idx[pos] < lists.size()) break;
          idx[pos] = 0;
          if (pos == 0) goto nextPredicate;
        }
      }
    nextPredicate:;
    }
    return out;
  }

  std::vector<Item> compound(VarIndex scope, int depth) {
    std::vector<Item> out;
    for (const Item& it : exact(scope, depth - 1)) {
      charge(1);
      out.push_back({Formula::negation(it.formula), it.vars, it.atoms, it.quantifiers, depth});
    }

    std::vector<const Item*> below;
    for (int c = 0; c < depth; ++c) {
      for (const Item& it : exact(scope, c)) below.push_back(&it);
    }
    static constexpr FormulaKind kBinary[] = {FormulaKind::Implies, FormulaKind::Iff, FormulaKind::And, FormulaKind::Or};
    for (const Item* a : below) {
      for (const Item* b : below) {
        if (a->depth != depth - 1 && b->depth != depth - 1) continue;
        if (a->atoms + b->atoms > bounds_.maxAtoms) continue;
        charge(4);
        for (FormulaKind kind : kBinary) {
          out.push_back({Formula::binary(kind, a->formula, b->formula), a->vars | b->vars, a->atoms + b->atoms,
                         std::max(a->quantifiers, b->quantifiers), depth});
        }
      }
    }

    const VarIndex bound = scope + 1;
    const std::uint64_t bit = std::uint64_t{1} << bound;
    if (bounds_.maxQuantifiers > 0) {
      for (const Item& it : exact(bound, depth - 1)) {
        if (!(it.vars & bit) || it.quantifiers + 1 > bounds_.maxQuantifiers) continue;
        charge(2);
        out.push_back({Formula::forAll(bound, it.formula), it.vars & ~bit, it.atoms, it.quantifiers + 1, depth});
        out.push_back({Formula::exists(bound, it.formula), it.vars & ~bit, it.atoms, it.quantifiers + 1, depth});
      }
    }
    return out;
  }

  const FiniteTermStructure& structure_;
  FragmentBounds bounds_;
  std::vector<std::string> names_;
  std::map<std::pair<VarIndex, int>, std::vector<Item>> memo_;
  std::size_t total_ = 0;
};

}  // namespace

std::vector<Formula> enumerateFragment(const FiniteTermStructure& structure, const FragmentBounds& bounds,
                                       VarIndex freeVars) {
  return FragmentBuilder(structure, bounds).build(freeVars);
}

FragmentPartition enumerateValidFragment(const FiniteTermStructure& structure, const FragmentBounds& bounds) {
  FragmentPartition out;
  for (const Formula& f : enumerateFragment(structure, bounds)) {
    (evalClosed(structure, f) == Truth::True ? out.valid : out.invalid).push_back(f);
  }
  return out;
}

std::string henkinWitness(const FiniteTermStructure& structure, VarIndex var, const Formula& formula) {
  for (VarIndex v : formula.freeVariables()) {
    if (v != var) {
      throw Error(ErrorCode::NotClosedUnderX, toString(formula) + " has free variable " + variableToken(v) +
                                                  " besides " + variableToken(var));
    }
  }
  requireInLanguage(structure, formula);
  const auto& names = structure.names().names();
  for (const std::string& n : names) {
    if (evalAssigned(structure, formula, {{var, n}}) == Truth::True) return n;
  }
  return names.front();
}

FragmentReport fragmentConsistencyReport(const FiniteTermStructure& structure, const FragmentBounds& bounds,
                                         const ClosedEvaluator& evaluator) {
  ClosedEvaluator eval = evaluator ? evaluator : [&](const Formula& f) { return evalClosed(structure, f); };
  FragmentReport report;
  std::unordered_set<std::string> validSeen, invalidSeen;
  for (const Formula& f : enumerateFragment(structure, bounds)) {
    ++report.total;
    Truth t = eval(f);
    std::string printed = toString(f);
    if (t == Truth::True) {
      ++report.valid;
      validSeen.insert(printed);
    } else if (t == Truth::False) {
      ++report.invalid;
      invalidSeen.insert(printed);
    }
    bool inBoth = validSeen.count(printed) && invalidSeen.count(printed);
    if ((t == Truth::Unknown || inBoth) && report.partitionOk) {
      report.partitionOk = false;
      report.partitionFailure = f;
    }

    Truth tn = eval(Formula::negation(f));
    bool exactlyOne = t != Truth::Unknown && tn != Truth::Unknown && ((t == Truth::True) != (tn == Truth::True));
    if (!exactlyOne && report.complementarityOk) {
      report.complementarityOk = false;
      report.complementFailure = f;
    }

    if (t == Truth::True && f.kind() == FormulaKind::Exists) {
      ++report.existentials;
      const Formula& body = f.operand(0);
      std::string c = henkinWitness(structure, f.boundVariable(), body);
      Formula instance = Formula::binary(FormulaKind::Iff, f, substitute(body, f.boundVariable(), ArgList::name(c)));
      ++report.witnessesChecked;
      if (eval(instance) != Truth::True && report.witnessesOk) {
        report.witnessesOk = false;
        report.witnessFailure = instance;
      }
    }
  }
  return report;
}

}  // namespace fms
