// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fms/error.hpp"
#include "fms/henkin.hpp"
#include "fms/hfset.hpp"
#include "fms/io.hpp"
#include "fms/morphism.hpp"
#include "fms/parser.hpp"
#include "support.hpp"

using namespace fms;

namespace {

// Pinned limits.
constexpr std::uint64_t kModelCheckWorkLimit = 4 * 4 * 4 + 4 * (4 + 4 * 4);
constexpr double kModelCheckSeconds = 1.0;
constexpr double kAutomorphismSeconds = 1.0;
constexpr double kHFSeconds = 5.0;
constexpr int kCondition4Bound = 3;
constexpr std::size_t kQuantifiedFormulas = 100;
constexpr std::size_t kDecompositionLists = 500;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      failure_ = what;
    }
  }
  void note(const std::string& text) { notes_ << (notes_.tellp() > 0 ? ", " : "") << text; }
  Outcome done() {
    outcome_.detail = outcome_.pass ? notes_.str() : failure_;
    return outcome_;
  }

 private:
  Outcome outcome_;
  std::string failure_;
  std::ostringstream notes_;
};

double secondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << x;
  return out.str();
}

std::vector<ArgList> groundUpTo(const FiniteTermStructure& s, int depth) {
  std::vector<ArgList> leaves = leafAlphabet(s.language(), s.quantifierNames());
  std::vector<ArgList> out;
  for (int d = 0; d <= depth; ++d) forEachListOfDepth(s.language(), leaves, d, [&](const ArgList& l) { out.push_back(l); });
  return out;
}

std::shared_ptr<const FiniteTermStructure> klein() { return fmstest::loadFinite("klein.json"); }

Outcome kleinModelCheck() {
  Check c;
  auto k = klein();
  std::vector<Formula> axioms = loadFormulas(fmstest::dataPath("groups.fml"), k->language());
  auto start = std::chrono::steady_clock::now();
  EvalStats stats;
  ModelVerdict v = isModel(*k, axioms, &stats);
  double seconds = secondsSince(start);
  c.require(v.status == ModelVerdict::Status::Model, "Klein is not accepted as a model");
  c.require(stats.atomEvaluations <= kModelCheckWorkLimit,
            "work " + std::to_string(stats.atomEvaluations) + " exceeds " + std::to_string(kModelCheckWorkLimit));
  c.require(seconds < kModelCheckSeconds, "took " + fixed(seconds) + " s");
  c.note("work " + std::to_string(stats.atomEvaluations) + "/" + std::to_string(kModelCheckWorkLimit));
  c.note(fixed(seconds) + " s");

  auto corrupt = fmstest::loadFinite("klein_corrupt.json");
  ModelVerdict bad = isModel(*corrupt, axioms);
  c.require(bad.status == ModelVerdict::Status::Counterexample && bad.axiomIndex == 0u,
            "corrupted table gives no counterexample for associativity");
  c.require(bad.assignment.size() == 3 && bad.instance && evalClosed(*corrupt, *bad.instance) == Truth::False,
            "counterexample is not a falsifying triple");
  if (bad.assignment.size() == 3) {
    c.note("corrupted triple " + bad.assignment[0].name + " " + bad.assignment[1].name + " " + bad.assignment[2].name);
  }
  return c.done();
}

Outcome automorphismCount() {
  Check c;
  auto k = klein();
  auto start = std::chrono::steady_clock::now();
  std::vector<Morphism> isos = enumerateMorphisms(k, k, MorphismMode::Iso);
  double seconds = secondsSince(start);
  c.require(isos.size() == 6, std::to_string(isos.size()) + " automorphisms");
  std::set<std::string> images;
  for (const Morphism& m : isos) {
    c.require(m.apply("e") == "e", "an automorphism moves e");
    std::string abc = m.apply("a") + m.apply("b") + m.apply("c");
    std::string sorted = abc;
    std::sort(sorted.begin(), sorted.end());
    c.require(sorted == "abc", "not a permutation of a,b,c: " + abc);
    images.insert(abc);
  }
  c.require(images.size() == 6, "automorphisms are not distinct");
  c.require(seconds < kAutomorphismSeconds, "took " + fixed(seconds) + " s");
  c.note(std::to_string(isos.size()) + " maps");
  c.note(fixed(seconds) + " s");
  return c.done();
}

Outcome condition4() {
  Check c;
  Condition4Report kr = checkCondition4(*klein(), kCondition4Bound);
  Condition4Report sr = checkCondition4(*fmstest::loadStrings("strings_ab.json"), kCondition4Bound);
  fmstest::NestedBlindStructure broken(klein());
  Condition4Report br = checkCondition4(broken, kCondition4Bound);
  c.require(kr.violationCount == 0, "Klein has violations");
  c.require(sr.violationCount == 0, "strings have violations");
  c.require(br.violationCount >= 1, "broken evaluator passes");
  c.require(kr.pairsChecked > 0 && sr.pairsChecked > 0, "no pairs checked");
  c.note("Klein " + std::to_string(kr.pairsChecked) + " pairs");
  c.note("strings " + std::to_string(sr.pairsChecked) + " pairs");
  c.note("broken " + std::to_string(br.violationCount) + " violations");
  return c.done();
}

Outcome substitutionLemma() {
  Check c;
  auto k = klein();
  for (const Element& d : k->universe()) {
    c.require(k->evalList(ArgList::name(k->nameOf(d))) == d, "name of " + d + " does not evaluate to it");
  }
  // The whole depth-2 fragment is too large, so it is covered by three slices
  // that each relax a single bound.
  std::vector<Formula> open;
  std::set<std::string> seen;
  for (auto [quantifiers, names, atoms] : {std::array{1, 0, 1}, std::array{0, 1, 1}, std::array{0, 0, 2}}) {
    FragmentBounds b;
    b.connectiveDepth = 2;
    b.listDepth = 2;
    b.maxQuantifiers = quantifiers;
    b.maxNames = names;
    b.maxAtoms = atoms;
    for (Formula& h : enumerateFragment(*k, b, 1)) {
      if (h.freeVariables().count(1) && seen.insert(toString(h)).second) open.push_back(std::move(h));
    }
  }
  std::vector<ArgList> mus = groundUpTo(*k, 2);
  std::size_t pairs = 0;
  for (const Formula& h : open) {
    for (const ArgList& mu : mus) {
      ArgList alpha = ArgList::name(k->nameOf(k->evalList(mu)));
      if (evalClosed(*k, substitute(h, 1, mu)) != evalClosed(*k, substitute(h, 1, alpha))) {
        c.require(false, toString(h) + " with " + toString(mu));
      }
      ++pairs;
    }
  }
  c.require(pairs > 0, "no pairs enumerated");
  c.note(std::to_string(k->universe().size()) + " elements");
  c.note(std::to_string(open.size()) + " open formulas");
  c.note(std::to_string(pairs) + " (H, mu) pairs");
  return c.done();
}

Outcome quantifierReduction() {
  Check c;
  auto k = klein();
  FragmentBounds b;
  b.connectiveDepth = 2;
  b.listDepth = 1;
  b.maxQuantifiers = 1;
  b.maxAtoms = 2;
  b.maxNames = 1;
  std::vector<ArgList> ground = groundUpTo(*k, 2);
  std::size_t checked = 0;
  for (const Formula& f : enumerateFragment(*k, b)) {
    if (checked == kQuantifiedFormulas) break;
    if (!isQuantifier(f.kind())) continue;
    bool existential = f.kind() == FormulaKind::Exists;
    bool some = false, every = true;
    for (const ArgList& l : ground) {
      bool t = evalClosed(*k, substitute(f.operand(0), f.boundVariable(), l)) == Truth::True;
      some = some || t;
      every = every && t;
    }
    c.require(evalClosed(*k, f) == truthOf(existential ? some : every), toString(f));
    ++checked;
  }
  c.require(checked == kQuantifiedFormulas, "only " + std::to_string(checked) + " quantified formulas");
  c.note(std::to_string(checked) + " formulas against " + std::to_string(ground.size()) + " ground lists");
  return c.done();
}

Outcome morphismAlgebra() {
  Check c;
  auto k = klein();
  std::vector<Morphism> autos = enumerateMorphisms(k, k, MorphismMode::Iso);
  Morphism id = Morphism::identity(k);
  c.require(autos.size() == 6, "automorphism count");
  for (const Morphism& psi : autos) {
    Morphism inv = invert(psi);
    c.require(isIsomorphism(inv).status == MorphismVerdict::Status::ExactIsomorphism, "inverse is not an isomorphism");
    c.require(compose(inv, psi) == id, "inverse after map is not the identity");
    for (const Morphism& phi : autos) {
      c.require(isIsomorphism(compose(phi, psi)).status == MorphismVerdict::Status::ExactIsomorphism,
                "composite is not an isomorphism");
    }
  }
  std::vector<Morphism> inverses;
  std::vector<std::vector<Morphism>> composites;
  for (const Morphism& psi : autos) {
    inverses.push_back(invert(psi));
    composites.emplace_back();
    for (const Morphism& phi : autos) composites.back().push_back(compose(phi, psi));
  }
  std::vector<ArgList> leaves = leafAlphabet(k->language(), k->quantifierNames());
  std::size_t lists = 0;
  for (int d = 0; d <= 3; ++d) {
    forEachListOfDepth(k->language(), leaves, d, [&](const ArgList& l) {
      ++lists;
      if (pushList(id, l) != l) c.require(false, "identity moves " + toString(l));
      for (std::size_t i = 0; i < autos.size(); ++i) {
        ArgList once = pushList(autos[i], l);
        if (pushList(inverses[i], once) != l) c.require(false, "inverse does not undo " + toString(l));
        for (std::size_t j = 0; j < autos.size(); ++j) {
          if (pushList(composites[i][j], l) != pushList(autos[j], once)) {
            c.require(false, "functoriality fails on " + toString(l));
          }
        }
      }
    });
  }
  c.note("36 composites");
  c.note(std::to_string(lists) + " ground lists of depth <= 3");
  return c.done();
}

Outcome decompositions(std::uint64_t seed) {
  Check c;
  auto k = klein();
  std::vector<ArgList> pool = groundUpTo(*k, 3);
  std::mt19937_64 g(seed);
  std::vector<ArgList> chosen;
  // Every depth <= 2 list, then a seeded sample of deeper ones.
  for (const ArgList& l : pool) {
    if (l.depth() <= 2) chosen.push_back(l);
  }
  std::vector<ArgList> deep;
  for (const ArgList& l : pool) {
    if (l.depth() == 3) deep.push_back(l);
  }
  std::shuffle(deep.begin(), deep.end(), g);
  for (std::size_t i = 0; chosen.size() < kDecompositionLists && i < deep.size(); ++i) chosen.push_back(deep[i]);

  std::vector<Morphism> maps = enumerateMorphisms(k, k, MorphismMode::Hom);
  std::size_t repeated = 0;
  for (const ArgList& l : chosen) {
    std::vector<ArgToken> tokens(l.tokens().begin(), l.tokens().end());
    std::map<VarIndex, std::string> perOccurrence;
    std::map<std::string, VarIndex> shared;
    std::map<VarIndex, std::string> perName;
    std::vector<ArgToken> occurrencePattern = tokens, namePattern = tokens;
    VarIndex next = 1;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].kind != ArgKind::Name) continue;
      perOccurrence[next] = tokens[i].text;
      occurrencePattern[i] = ArgToken{ArgKind::Variable, next++, {}};
      auto [it, fresh] = shared.emplace(tokens[i].text, static_cast<VarIndex>(shared.size() + 1));
      perName[it->second] = tokens[i].text;
      namePattern[i] = ArgToken{ArgKind::Variable, it->second, {}};
    }
    if (perOccurrence.size() > perName.size()) ++repeated;
    for (const Morphism& psi : maps) {
      ArgList leaf = pushListByLeaves(psi, l);
      c.require(pushList(psi, l) == leaf, "skeleton push differs on " + toString(l));
      c.require(pushDecomposition(psi, ArgList::fromTokens(occurrencePattern), perOccurrence) == leaf,
                "per-occurrence decomposition differs on " + toString(l));
      c.require(pushDecomposition(psi, ArgList::fromTokens(namePattern), perName) == leaf,
                "shared-variable decomposition differs on " + toString(l));
    }
  }
  c.require(chosen.size() == kDecompositionLists, "only " + std::to_string(chosen.size()) + " lists");
  c.require(repeated > 0, "no list repeats a name");
  c.note(std::to_string(chosen.size()) + " lists");
  c.note(std::to_string(repeated) + " with repeated names");
  c.note(std::to_string(maps.size()) + " maps");
  return c.done();
}

Outcome henkinFragment() {
  Check c;
  auto k = klein();
  FragmentBounds b;
  b.connectiveDepth = 2;
  b.listDepth = 1;
  b.maxQuantifiers = 1;
  b.maxAtoms = 2;
  b.maxNames = 1;
  FragmentReport r = fragmentConsistencyReport(*k, b);
  c.require(r.partitionOk && r.total == r.valid + r.invalid, "partition is not total and disjoint");
  c.require(r.complementarityOk, "complementarity fails");
  c.require(r.witnessesOk && r.witnessesChecked == r.existentials && r.existentials > 0, "a witness fails");

  // Recheck witnesses here rather than trusting the report.
  FragmentPartition p = enumerateValidFragment(*k, b);
  std::set<std::string> valid;
  for (const Formula& f : p.valid) valid.insert(toString(f));
  for (const Formula& f : p.invalid) c.require(!valid.count(toString(f)), "formula in both parts: " + toString(f));
  std::size_t witnessed = 0;
  for (const Formula& f : p.valid) {
    if (f.kind() != FormulaKind::Exists) continue;
    std::string w = henkinWitness(*k, f.boundVariable(), f.operand(0));
    Formula iff = Formula::binary(FormulaKind::Iff, f, substitute(f.operand(0), f.boundVariable(), ArgList::name(w)));
    c.require(isValid(*k, iff) == Truth::True, "witness biconditional fails for " + toString(f));
    ++witnessed;
  }
  c.note(std::to_string(r.total) + " formulas");
  c.note(std::to_string(r.valid) + " valid");
  c.note(std::to_string(witnessed) + " valid existentials witnessed");
  return c.done();
}

Outcome hereditarilyFinite() {
  Check c;
  auto start = std::chrono::steady_clock::now();
  HFSet empty;
  c.require(powerSet(empty) == HFSet::singleton(empty), "P(0) != {0}");
  HFSet one = HFSet::singleton(empty);
  c.require(transitiveClosure(HFSet::singleton(one)) == HFSet::of({one, empty}), "TC({{0}}) != {{0},0}");

  std::vector<HFSet> all = allSetsUpToRank(3);
  std::vector<HFSet> small = allSetsUpToRank(2);
  for (const HFSet& x : small) {
    for (const HFSet& y : small) {
      HFSet family = HFSet::of({HFSet::singleton(x), HFSet::singleton(y)});
      c.require(choiceSet(family) == bigUnion(family), "choice on singletons of " + toString(x) + ", " + toString(y));
    }
  }
  std::size_t friendly = 0;
  for (const HFSet& u : all) {
    SubsetFriendlyReport r = checkSubsetFriendly(u);
    if (r.friendly()) ++friendly;
    bool witnessed = false;
    for (const auto& cond : r.conditions) witnessed = witnessed || (!cond.pass && !cond.witness.empty());
    c.require(witnessed, "no violating witness for " + toString(u));
    c.require(powerSet(u).rank() == u.rank() + 1, "rank law fails for " + toString(u));
  }
  double seconds = secondsSince(start);
  c.require(friendly == 0, std::to_string(friendly) + " subset-friendly sets found");
  c.require(seconds < kHFSeconds, "took " + fixed(seconds) + " s");
  c.note(std::to_string(all.size()) + " sets of rank <= 3");
  c.note(fixed(seconds) + " s");
  return c.done();
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured runCli(const std::string& cli, const std::string& args) {
  Captured r;
  std::string command = "\"" + cli + "\" " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cliDeterminism(const std::string& cli) {
  Check c;
  if (cli.empty()) {
    c.require(false, "no --cli path given");
    return c.done();
  }
  auto d = [](const char* f) { return "'" + fmstest::dataPath(f) + "'"; };
  const std::vector<std::pair<std::string, int>> cases = {
      {"parse --language " + d("klein_lang.json") + " --formula 'all x1 ~ *(x1 x1) , x2'", 0},
      {"parse --structure " + d("klein.json") + " --list '*($a *($b $a))'", 0},
      {"parse --language " + d("klein_lang.json") + " --formula '~ x1 ,'", 2},
      {"eval --structure " + d("klein.json") + " --formula '~ *($a $b) , $c'", 0},
      {"eval --structure " + d("klein.json") + " --formula '~ *($a $b) , $e'", 1},
      {"valid --structure " + d("klein.json") + " --formula '~ *(x1 x2) , *(x2 x1)'", 0},
      {"valid --structure " + d("strings_ab.json") + " --formula 'eqlen [x1] , [x1]'", 0},
      {"check-model --structure " + d("klein.json") + " --axioms " + d("groups.fml"), 0},
      {"check-model --structure " + d("klein_corrupt.json") + " --axioms " + d("groups.fml"), 1},
      {"push --morphism " + d("klein_cycle.json") + " --list '*($a *($b $c))'", 0},
      {"hom --morphism " + d("klein_collapse.json"), 0},
      {"hom --morphism " + d("klein_bad.json"), 1},
      {"iso --morphism " + d("klein_swap_ab.json"), 0},
      {"iso --morphism " + d("marked_forward.json"), 1},
      {"hom --morphism " + d("strings_swap.json"), 1},
      {"enum-morphisms --from " + d("klein.json") + " --to " + d("klein.json") + " --iso", 0},
      {"henkin --structure " + d("klein.json"), 0},
      {"henkin --structure " + d("klein.json") + " --formula '~ *(x1 $b) , $e'", 0},
      {"cond4 --structure " + d("klein.json") + " --bound 2", 0},
      {"cond4 --structure " + d("strings_ab.json") + " --bound 2", 0},
      {"hf tc '{{{}}}'", 0},
      {"hf friendly '{{}}'", 1},
      {"hf choice '{{{}},{{},{{}}}}'", 2},
      {"eval --structure " + d("missing.json") + " --formula '~ $a , $a'", 2},
      {"", 2},
  };
  for (const auto& [args, expected] : cases) {
    Captured first = runCli(cli, args);
    Captured second = runCli(cli, args);
    c.require(first.out == second.out, "output differs between runs: " + args);
    c.require(first.code == second.code, "exit code differs between runs: " + args);
    c.require(first.code == expected,
              "exit " + std::to_string(first.code) + " instead of " + std::to_string(expected) + ": " + args);
  }
  c.note(std::to_string(cases.size()) + " invocations run twice");
  return c.done();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string cli;
  std::uint64_t seed = fmstest::testSeed();
  app.add_option("--cli", cli, "Path to the fmsbench executable");
  app.add_option("--seed", seed, "Seed for sampled checks");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Klein model check", kleinModelCheck},
      {"automorphism count", automorphismCount},
      {"substitution condition oracle", condition4},
      {"substitution lemma", substitutionLemma},
      {"quantifier reduction", quantifierReduction},
      {"morphism algebra", morphismAlgebra},
      {"pushforward well-definedness", [seed] { return decompositions(seed); }},
      {"Henkin fragment", henkinFragment},
      {"hereditarily finite sets", hereditarilyFinite},
      {"CLI determinism", [&cli] { return cliDeterminism(cli); }},
  };
  std::cout << "seed " << seed << "\n";
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.detail << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
