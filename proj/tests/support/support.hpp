#pragma once

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fms/io.hpp"
#include "fms/structure.hpp"

namespace fmstest {

inline std::string dataPath(const std::string& file) { return std::string(FMS_DATA_DIR) + "/" + file; }

// Property tests draw from this seed; override with FMS_TEST_SEED.
inline std::uint64_t testSeed() {
  if (const char* s = std::getenv("FMS_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261015;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(testSeed() ^ (salt * 0x9E3779B97F4A7C15ull)); }

inline std::shared_ptr<const fms::FiniteTermStructure> loadFinite(const std::string& file) {
  auto s = std::dynamic_pointer_cast<const fms::FiniteTermStructure>(fms::loadStructure(dataPath(file)));
  if (!s) throw std::runtime_error(file + " is not a finite structure");
  return s;
}

inline std::shared_ptr<const fms::StringStructure> loadStrings(const std::string& file) {
  auto s = std::dynamic_pointer_cast<const fms::StringStructure>(fms::loadStructure(dataPath(file)));
  if (!s) throw std::runtime_error(file + " is not a string structure");
  return s;
}

// A Klein evaluation that is right on shallow lists and answers the first
// element for every list of depth two or more.
class NestedBlindStructure : public fms::Structure {
 public:
  explicit NestedBlindStructure(std::shared_ptr<const fms::FiniteTermStructure> base) : base_(std::move(base)) {}
  std::string kindName() const override { return "broken"; }
  const fms::LanguageSpec& language() const override { return base_->language(); }
  const fms::NameSet& names() const override { return base_->names(); }
  fms::Element evalList(const fms::ArgList& ground) const override {
    if (ground.depth() >= 2) return base_->universe().front();
    return base_->evalList(ground);
  }
  bool isElement(const fms::Element& e) const override { return base_->isElement(e); }
  fms::Element elementOf(std::string_view name) const override { return base_->elementOf(name); }
  std::string nameOf(const fms::Element& e) const override { return base_->nameOf(e); }
  const std::vector<std::string>& quantifierNames() const override { return base_->quantifierNames(); }
  bool quantifiersExact() const override { return true; }
  std::vector<std::string> sampleNames(int bound) const override { return base_->sampleNames(bound); }
  bool predicateHolds(const std::string& p, std::span<const fms::Element> args) const override {
    return base_->predicateHolds(p, args);
  }
  bool nullaryHolds(const std::string& p) const override { return base_->nullaryHolds(p); }

 private:
  std::shared_ptr<const fms::FiniteTermStructure> base_;
};

// The Klein four-group as bit vectors under xor: e=0, a=1, b=2, c=3.
namespace klein {

inline int ofName(std::string_view name) {
  static const std::string letters = "eabc";
  if (name.size() != 2 || name[0] != '$') throw std::invalid_argument(std::string(name));
  return static_cast<int>(letters.find(name[1]));
}

inline std::string nameOf(int v) { return std::string("$") + "eabc"[v]; }

// Evaluates a printed ground term such as *($a *($b $c)) without the library.
inline int evalPrinted(std::string_view text, std::size_t& at) {
  while (text[at] == ' ') ++at;
  if (text[at] == '$') {
    int v = ofName(text.substr(at, 2));
    at += 2;
    return v;
  }
  if (text.substr(at, 2) != "*(") throw std::invalid_argument(std::string(text));
  at += 2;
  int l = evalPrinted(text, at);
  int r = evalPrinted(text, at);
  while (text[at] == ' ') ++at;
  if (text[at] != ')') throw std::invalid_argument(std::string(text));
  ++at;
  return l ^ r;
}

inline int evalPrinted(std::string_view text) {
  std::size_t at = 0;
  return evalPrinted(text, at);
}

}  // namespace klein

// Replaces every whole-word occurrence of `from` in printed syntax.
inline std::string rewriteToken(const std::string& text, const std::string& from, const std::string& to) {
  auto boundary = [&](std::size_t i) {
    if (i >= text.size()) return true;
    char c = text[i];
    return c == ' ' || c == '(' || c == ')' || c == '[' || c == ']' || c == ',';
  };
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, from.size(), from) == 0 && (i == 0 || boundary(i - 1)) && boundary(i + from.size())) {
      out += to;
      i += from.size();
    } else {
      out += text[i++];
    }
  }
  return out;
}

}  // namespace fmstest
