#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fms/fms.h"

namespace {

constexpr int kAffirmative = 0;
constexpr int kNegative = 1;
constexpr int kFailure = 2;

int fail(fms_status status) {
  std::cerr << "error: " << fms_last_error();
  if (*fms_last_error() == '\0') std::cerr << fms_status_name(status);
  std::cerr << "\n";
  return kFailure;
}

// Prints a report produced by the library and maps it onto the exit code.
int finish(fms_status status, char* report, int affirmative) {
  if (status != FMS_OK) return fail(status);
  std::fputs(report, stdout);
  std::fflush(stdout);
  fms_free_string(report);
  return affirmative ? kAffirmative : kNegative;
}

struct StructureHandle {
  fms_structure* ptr = nullptr;
  ~StructureHandle() { fms_structure_free(ptr); }
};

struct MorphismHandle {
  fms_morphism* ptr = nullptr;
  ~MorphismHandle() { fms_morphism_free(ptr); }
};

struct LanguageHandle {
  fms_language* ptr = nullptr;
  ~LanguageHandle() { fms_language_free(ptr); }
};

struct Options {
  std::string language;
  std::string structure;
  std::string formula;
  std::string list;
  std::string axioms;
  std::string morphism;
  std::string from;
  std::string to;
  std::string var = "x1";
  bool iso = false;
  int depth = 3;
  int bound = 3;
  fms_fragment_bounds fragment{1, 1, 1, 2, 1};
  std::string op;
  std::vector<std::string> sets;
};

int runParse(const Options& o) {
  LanguageHandle lang;
  fms_status st;
  if (!o.language.empty()) {
    st = fms_language_load(o.language.c_str(), &lang.ptr);
  } else {
    StructureHandle s;
    st = fms_structure_load(o.structure.c_str(), &s.ptr);
    if (st == FMS_OK) st = fms_structure_language(s.ptr, &lang.ptr);
  }
  if (st != FMS_OK) return fail(st);
  char* report = nullptr;
  int affirmative = 0;
  if (!o.list.empty()) {
    st = fms_report_parse_list(lang.ptr, o.list.c_str(), &report, &affirmative);
  } else {
    st = fms_report_parse(lang.ptr, o.formula.c_str(), &report, &affirmative);
  }
  return finish(st, report, affirmative);
}

template <typename Call>
int withStructure(const std::string& path, Call call) {
  StructureHandle s;
  fms_status st = fms_structure_load(path.c_str(), &s.ptr);
  if (st != FMS_OK) return fail(st);
  char* report = nullptr;
  int affirmative = 0;
  st = call(s.ptr, &report, &affirmative);
  return finish(st, report, affirmative);
}

template <typename Call>
int withMorphism(const std::string& path, Call call) {
  MorphismHandle m;
  fms_status st = fms_morphism_load(path.c_str(), &m.ptr);
  if (st != FMS_OK) return fail(st);
  char* report = nullptr;
  int affirmative = 0;
  st = call(m.ptr, &report, &affirmative);
  return finish(st, report, affirmative);
}

int runEnumerate(const Options& o) {
  StructureHandle from, to;
  fms_status st = fms_structure_load(o.from.c_str(), &from.ptr);
  if (st == FMS_OK) st = fms_structure_load(o.to.c_str(), &to.ptr);
  if (st != FMS_OK) return fail(st);
  char* report = nullptr;
  int affirmative = 0;
  st = fms_report_enum_morphisms(from.ptr, to.ptr, o.iso ? 1 : 0, &report, &affirmative);
  return finish(st, report, affirmative);
}

int runHF(const Options& o) {
  std::vector<const char*> operands;
  for (const std::string& s : o.sets) operands.push_back(s.c_str());
  char* report = nullptr;
  int affirmative = 0;
  fms_status st = fms_report_hf(o.op.c_str(), operands.data(), operands.size(), &report, &affirmative);
  return finish(st, report, affirmative);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check formulas, structures, morphisms and hereditarily finite sets."};
  app.require_subcommand(1);
  Options o;

  auto* parse = app.add_subcommand("parse", "Parse a formula or an argument list and print its canonical form");
  auto* parseSource = parse->add_option_group("source");
  parseSource->add_option("--language", o.language, "Language definition (JSON)")->check(CLI::ExistingFile);
  parseSource->add_option("--structure", o.structure, "Use the language of this structure, names included")
      ->check(CLI::ExistingFile);
  parseSource->require_option(1);
  auto* parseInput = parse->add_option_group("input");
  parseInput->add_option("--formula", o.formula, "Formula in prefix notation");
  parseInput->add_option("--list", o.list, "Argument list");
  parseInput->require_option(1);

  auto* eval = app.add_subcommand("eval", "Evaluate a closed formula in a structure");
  eval->add_option("--structure", o.structure, "Structure definition (JSON)")->required()->check(CLI::ExistingFile);
  eval->add_option("--formula", o.formula, "Closed formula")->required();

  auto* valid = app.add_subcommand("valid", "Decide validity of a formula via its universal closure");
  valid->add_option("--structure", o.structure, "Structure definition (JSON)")->required()->check(CLI::ExistingFile);
  valid->add_option("--formula", o.formula, "Formula, free variables allowed")->required();

  auto* model = app.add_subcommand("check-model", "Check that every axiom in a file is valid");
  model->add_option("--structure", o.structure, "Structure definition (JSON)")->required()->check(CLI::ExistingFile);
  model->add_option("--axioms", o.axioms, "Axiom file, one formula per line")->required()->check(CLI::ExistingFile);

  auto* push = app.add_subcommand("push", "Push a ground list forward along a morphism");
  push->add_option("--morphism", o.morphism, "Morphism definition (JSON)")->required()->check(CLI::ExistingFile);
  push->add_option("--list", o.list, "Ground list over the source names")->required();

  auto* hom = app.add_subcommand("hom", "Check that a map is a homomorphism");
  hom->add_option("--morphism", o.morphism, "Morphism definition (JSON)")->required()->check(CLI::ExistingFile);
  hom->add_option("--depth", o.depth, "List depth for bounded checks")->check(CLI::Range(1, 6));

  auto* iso = app.add_subcommand("iso", "Check that a map is an isomorphism");
  iso->add_option("--morphism", o.morphism, "Morphism definition (JSON)")->required()->check(CLI::ExistingFile);
  iso->add_option("--depth", o.depth, "List depth for bounded checks")->check(CLI::Range(1, 6));

  auto* enumerate = app.add_subcommand("enum-morphisms", "List all homomorphisms or isomorphisms between finite structures");
  enumerate->add_option("--from", o.from, "Source structure")->required()->check(CLI::ExistingFile);
  enumerate->add_option("--to", o.to, "Target structure")->required()->check(CLI::ExistingFile);
  enumerate->add_flag("--iso", o.iso, "Only isomorphisms");

  auto* henkin = app.add_subcommand("henkin", "Split a bounded formula fragment into valid and invalid parts");
  henkin->add_option("--structure", o.structure, "Finite structure (JSON)")->required()->check(CLI::ExistingFile);
  henkin->add_option("--connective-depth", o.fragment.connective_depth, "Nesting depth of connectives and quantifiers")
      ->check(CLI::Range(0, 4));
  henkin->add_option("--list-depth", o.fragment.list_depth, "Depth of argument lists inside atoms")
      ->check(CLI::Range(0, 3));
  henkin->add_option("--max-quantifiers", o.fragment.max_quantifiers, "Quantifiers per formula")
      ->check(CLI::Range(0, 3));
  henkin->add_option("--max-atoms", o.fragment.max_atoms, "Atoms per formula")->check(CLI::Range(1, 4));
  henkin->add_option("--max-names", o.fragment.max_names, "Names usable in lists, -1 for all")
      ->check(CLI::Range(-1, 64));
  auto* witnessFormula = henkin->add_option("--formula", o.formula, "Report a witness for ex VAR FORMULA instead");
  henkin->add_option("--var", o.var, "Variable bound by the existential")->needs(witnessFormula);

  auto* cond4 = app.add_subcommand("cond4", "Check the substitution condition on sampled lists");
  cond4->add_option("--structure", o.structure, "Structure definition (JSON)")->required()->check(CLI::ExistingFile);
  cond4->add_option("--bound", o.bound, "Depth or length bound")->check(CLI::Range(1, 4));

  auto* hf = app.add_subcommand("hf", "Operations on hereditarily finite sets, e.g. hf pow \"{{}}\"");
  hf->add_option("op", o.op, "tc, pow, union, inter, diff, pair, product, choice, reg, rank, transitive, friendly")
      ->required();
  hf->add_option("sets", o.sets, "Operands written like {{},{{}}}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kFailure;
  }

  if (parse->parsed()) return runParse(o);
  if (eval->parsed()) {
    return withStructure(o.structure, [&](fms_structure* s, char** r, int* a) {
      return fms_report_eval(s, o.formula.c_str(), r, a);
    });
  }
  if (valid->parsed()) {
    return withStructure(o.structure, [&](fms_structure* s, char** r, int* a) {
      return fms_report_valid(s, o.formula.c_str(), r, a);
    });
  }
  if (model->parsed()) {
    return withStructure(o.structure, [&](fms_structure* s, char** r, int* a) {
      return fms_report_check_model(s, o.axioms.c_str(), r, a);
    });
  }
  if (push->parsed()) {
    return withMorphism(o.morphism, [&](fms_morphism* m, char** r, int* a) {
      return fms_report_push(m, o.list.c_str(), r, a);
    });
  }
  if (hom->parsed() || iso->parsed()) {
    int wantIso = iso->parsed() ? 1 : 0;
    return withMorphism(o.morphism, [&](fms_morphism* m, char** r, int* a) {
      return fms_report_morphism(m, wantIso, o.depth, r, a);
    });
  }
  if (enumerate->parsed()) return runEnumerate(o);
  if (henkin->parsed()) {
    return withStructure(o.structure, [&](fms_structure* s, char** r, int* a) {
      if (!o.formula.empty()) return fms_report_witness(s, o.var.c_str(), o.formula.c_str(), r, a);
      return fms_report_henkin(s, &o.fragment, r, a);
    });
  }
  if (cond4->parsed()) {
    return withStructure(o.structure, [&](fms_structure* s, char** r, int* a) {
      return fms_report_cond4(s, o.bound, r, a);
    });
  }
  if (hf->parsed()) return runHF(o);
  return kFailure;
}
