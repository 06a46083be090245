#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fms/language.hpp"
#include "fms/morphism.hpp"
#include "fms/structure.hpp"

namespace fms {

std::string readTextFile(const std::filesystem::path& path);

// Relative paths inside a document resolve against `baseDir`.
LanguageSpec parseLanguageJson(std::string_view text);
std::shared_ptr<const Structure> parseStructureJson(std::string_view text, const std::filesystem::path& baseDir);
Morphism parseMorphismJson(std::string_view text, const std::filesystem::path& baseDir);

LanguageSpec loadLanguage(const std::filesystem::path& path);
std::shared_ptr<const Structure> loadStructure(const std::filesystem::path& path);
Morphism loadMorphism(const std::filesystem::path& path);
std::vector<Formula> loadFormulas(const std::filesystem::path& path, const LanguageSpec& spec);

}  // namespace fms
