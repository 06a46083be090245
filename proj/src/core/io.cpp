#include "fms/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fms/error.hpp"
#include "fms/parser.hpp"

namespace fms {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& message) { throw Error(ErrorCode::InvalidDefinition, message); }

json parseJson(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Syntax, what + ": " + e.what());
  }
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema(where + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) schema(where + " lacks \"" + key + "\"");
  return *it;
}

std::string asText(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> textArray(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const json& x : j) out.push_back(asText(x, where));
  return out;
}

// "p/2" -> ("p", 2)
std::pair<std::string, std::size_t> predicateKey(const std::string& key) {
  std::size_t slash = key.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == key.size()) {
    schema("predicate key '" + key + "' must look like name/arity");
  }
  std::size_t arity = 0;
  for (char c : key.substr(slash + 1)) {
    if (c < '0' || c > '9') schema("predicate key '" + key + "' has a malformed arity");
    arity = arity * 10 + static_cast<std::size_t>(c - '0');
  }
  return {key.substr(0, slash), arity};
}

std::vector<std::string> splitTuple(const std::string& key) {
  std::vector<std::string> out;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  if (!key.empty() && key.back() == ',') out.push_back("");
  return out;
}

LanguageSpec languageFromJson(const json& j) {
  std::vector<std::string> alphabet = textArray(field(j, "alphabet", "language"), "language.alphabet");
  std::vector<std::string> predicates;
  if (j.contains("predicates")) predicates = textArray(j["predicates"], "language.predicates");
  const json& g = field(j, "grammar", "language");
  std::string kind = asText(field(g, "kind", "language.grammar"), "language.grammar.kind");
  Grammar grammar;
  if (kind == "term") {
    TermGrammar term;
    if (g.contains("constants")) {
      for (const std::string& c : textArray(g["constants"], "grammar.constants")) term.constants.insert(c);
    }
    if (g.contains("functions")) {
      if (!g["functions"].is_object()) schema("grammar.functions must map symbols to arities");
      for (const auto& [f, arity] : g["functions"].items()) {
        if (!arity.is_number_unsigned()) schema("arity of '" + f + "' must be a positive integer");
        term.functions.emplace(f, arity.get<std::uint32_t>());
      }
    }
    grammar = term;
  } else if (kind == "string") {
    StringGrammar str;
    str.atoms = textArray(field(g, "atoms", "language.grammar"), "grammar.atoms");
    if (g.contains("atomsAreLists")) {
      if (!g["atomsAreLists"].is_boolean()) schema("grammar.atomsAreLists must be a boolean");
      str.atomsAreLists = g["atomsAreLists"].get<bool>();
    }
    grammar = str;
  } else {
    schema("grammar.kind must be \"term\" or \"string\"");
  }
  return LanguageSpec(std::set<std::string>(alphabet.begin(), alphabet.end()),
                      std::set<std::string>(predicates.begin(), predicates.end()), grammar);
}

json resolve(const json& j, const std::filesystem::path& baseDir, std::filesystem::path& docDir) {
  if (j.is_string()) {
    std::filesystem::path p = baseDir / j.get<std::string>();
    docDir = p.parent_path();
    return parseJson(readTextFile(p), p.string());
  }
  docDir = baseDir;
  return j;
}

std::shared_ptr<const Structure> stringStructureFromJson(const json& j) {
  std::vector<std::string> atoms = textArray(field(j, "atoms", "string structure"), "atoms");
  std::map<StringStructure::PredicateKey, StringPredicate> predicates;
  if (j.contains("predicates")) {
    if (!j["predicates"].is_object()) schema("predicates must be an object");
    for (const auto& [key, value] : j["predicates"].items()) {
      std::string def = asText(value, "predicate " + key);
      StringPredicate p{StringPredicateKind::EqualLength, {}};
      if (def == "EqualLength") {
        p.kind = StringPredicateKind::EqualLength;
      } else if (def == "IsPrefix") {
        p.kind = StringPredicateKind::IsPrefix;
      } else if (def == "SameString") {
        p.kind = StringPredicateKind::SameString;
      } else if (def.rfind("EqualsLiteral:", 0) == 0) {
        p.kind = StringPredicateKind::EqualsLiteral;
        p.literal = def.substr(std::string("EqualsLiteral:").size());
      } else {
        schema("unknown string predicate '" + def + "'");
      }
      predicates.emplace(predicateKey(key), p);
    }
  }
  int quantBound = 4;
  if (j.contains("quantBound")) {
    if (!j["quantBound"].is_number_integer()) schema("quantBound must be an integer");
    quantBound = j["quantBound"].get<int>();
  }
  return std::make_shared<StringStructure>(std::move(atoms), std::move(predicates), quantBound);
}

std::shared_ptr<const Structure> structureFromJson(const json& j, const std::filesystem::path& baseDir) {
  if (!j.is_object()) schema("a structure must be a JSON object");
  if (j.contains("kind")) {
    std::string kind = asText(j["kind"], "kind");
    if (kind == "string") return stringStructureFromJson(j);
    if (kind != "finite-term" && kind != "term") schema("unknown structure kind '" + kind + "'");
  }
  std::filesystem::path langDir;
  FiniteTermDefinition def(languageFromJson(resolve(field(j, "language", "structure"), baseDir, langDir)));
  def.universe = textArray(field(j, "universe", "structure"), "universe");
  for (const std::string& e : def.universe) {
    if (e.find(',') != std::string::npos) schema("element '" + e + "' contains a comma");
  }
  if (j.contains("names")) {
    if (!j["names"].is_object()) schema("names must map elements to names");
    for (const auto& [e, n] : j["names"].items()) def.names.emplace(e, asText(n, "name of " + e));
  }
  if (j.contains("constants")) {
    if (!j["constants"].is_object()) schema("constants must map symbols to elements");
    for (const auto& [c, v] : j["constants"].items()) def.constants.emplace(c, asText(v, "constant " + c));
  }
  if (j.contains("functions")) {
    if (!j["functions"].is_object()) schema("functions must map symbols to tables");
    for (const auto& [f, table] : j["functions"].items()) {
      if (!table.is_object()) schema("table of '" + f + "' must be an object");
      auto& out = def.functions[f];
      for (const auto& [args, value] : table.items()) {
        if (!out.emplace(splitTuple(args), asText(value, "table of " + f)).second) {
          schema("duplicate entry '" + args + "' in table of " + f);
        }
      }
    }
  }
  if (j.contains("predicates")) {
    if (!j["predicates"].is_object()) schema("predicates must be an object");
    for (const auto& [key, value] : j["predicates"].items()) {
      auto pk = predicateKey(key);
      if (pk.second == 0) {
        if (!value.is_boolean()) schema("nullary predicate " + key + " needs true or false");
        def.nullary[pk.first] = value.get<bool>();
        continue;
      }
      if (!value.is_array()) schema("predicate " + key + " needs an array of tuples");
      auto& rows = def.predicates[pk];
      for (const json& row : value) rows.insert(textArray(row, "tuple of " + key));
    }
  }
  return std::make_shared<FiniteTermStructure>(def);
}

}  // namespace

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LanguageSpec parseLanguageJson(std::string_view text) { return languageFromJson(parseJson(text, "language")); }

std::shared_ptr<const Structure> parseStructureJson(std::string_view text, const std::filesystem::path& baseDir) {
  return structureFromJson(parseJson(text, "structure"), baseDir);
}

Morphism parseMorphismJson(std::string_view text, const std::filesystem::path& baseDir) {
  json j = parseJson(text, "morphism");
  std::filesystem::path srcDir, tgtDir;
  auto source = structureFromJson(resolve(field(j, "source", "morphism"), baseDir, srcDir), srcDir);
  auto target = structureFromJson(resolve(field(j, "target", "morphism"), baseDir, tgtDir), tgtDir);
  const json& map = field(j, "map", "morphism");
  if (map.is_string()) {
    if (map.get<std::string>() != "identity") schema("map must be an object or \"identity\"");
    if (!sameStructure(*source, *target)) schema("the identity map needs equal source and target");
    return Morphism::identity(source);
  }
  if (!map.is_object()) schema("map must be an object");
  if (map.contains("kind")) {
    std::string kind = asText(map["kind"], "map.kind");
    if (kind != "atom-map") schema("unknown map kind '" + kind + "'");
    std::map<std::string, std::string> atoms;
    if (map.contains("atoms")) {
      if (!map["atoms"].is_object()) schema("map.atoms must be an object");
      for (const auto& [a, b] : map["atoms"].items()) atoms.emplace(a, asText(b, "image of atom " + a));
    }
    return Morphism::atomMap(source, target, std::move(atoms));
  }
  std::map<Element, Element> table;
  for (const auto& [from, to] : map.items()) table.emplace(from, asText(to, "image of " + from));
  return Morphism::table(source, target, std::move(table));
}

LanguageSpec loadLanguage(const std::filesystem::path& path) { return parseLanguageJson(readTextFile(path)); }

std::shared_ptr<const Structure> loadStructure(const std::filesystem::path& path) {
  return parseStructureJson(readTextFile(path), path.parent_path());
}

Morphism loadMorphism(const std::filesystem::path& path) {
  return parseMorphismJson(readTextFile(path), path.parent_path());
}

std::vector<Formula> loadFormulas(const std::filesystem::path& path, const LanguageSpec& spec) {
  return parseFormulaFile(readTextFile(path), spec);
}

}  // namespace fms
