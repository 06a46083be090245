#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fms/structure.hpp"
#include "fms/syntax.hpp"

namespace fms {

// A total map between the universes of two structures over the same language.
// Finite structures carry an explicit table; string structures carry a map on
// atoms, extended letter by letter to strings.
class Morphism {
 public:
  using StructurePtr = std::shared_ptr<const Structure>;

  static Morphism table(StructurePtr source, StructurePtr target, std::map<Element, Element> map);
  static Morphism atomMap(StructurePtr source, StructurePtr target, std::map<std::string, std::string> atoms);
  static Morphism identity(StructurePtr structure);

  const Structure& source() const { return *source_; }
  const Structure& target() const { return *target_; }
  const StructurePtr& sourcePtr() const { return source_; }
  const StructurePtr& targetPtr() const { return target_; }

  bool isTable() const { return !isAtomMap_; }
  // Finite structures: one entry per source element, in source universe order.
  const std::map<Element, Element>& tableMap() const { return map_; }
  const std::map<std::string, std::string>& atoms() const { return atoms_; }

  Element apply(const Element& e) const;
  // beta_{psi(d)} for the source name alpha_d.
  std::string mapName(const std::string& sourceName) const;

  friend bool operator==(const Morphism& a, const Morphism& b);

 private:
  Morphism(StructurePtr source, StructurePtr target) : source_(std::move(source)), target_(std::move(target)) {}

  StructurePtr source_;
  StructurePtr target_;
  bool isAtomMap_ = false;
  std::map<Element, Element> map_;
  std::map<std::string, std::string> atoms_;
};

// True when both refer to the same structure value.
bool sameStructure(const Structure& a, const Structure& b);

struct MorphismVerdict {
  enum class Status { ExactHomomorphism, ExactIsomorphism, BoundedVerified, Counterexample };
  enum class Failure { None, Commuting, Predicate, NotInjective, NotSurjective };

  Status status = Status::ExactHomomorphism;
  int depth = 0;  // BoundedVerified only
  Failure failure = Failure::None;
  std::string reason;
  // Commuting failures: the list, psi(D1(list)) and D2(psi_*(list)).
  std::optional<ArgList> list;
  Element expected;
  Element actual;
  // Predicate failures: the symbol and source tuple; injectivity and
  // surjectivity failures: the offending elements.
  std::string predicate;
  std::vector<Element> tuple;

  bool holds() const { return status != Status::Counterexample; }
};

const char* morphismStatusName(MorphismVerdict::Status status) noexcept;

// psi_* via the skeleton: abstract the names, then substitute their images.
ArgList pushList(const Morphism& psi, const ArgList& ground);
// psi_* by rewriting every name leaf in place.
ArgList pushListByLeaves(const Morphism& psi, const ArgList& ground);
// psi_* via an arbitrary decomposition: `pattern` with `names` substituted
// for its variables gives the list; names may repeat.
ArgList pushDecomposition(const Morphism& psi, const ArgList& pattern, const std::map<VarIndex, std::string>& names);
// Every name in the formula replaced by the name of its image.
Formula pushFormula(const Morphism& psi, const Formula& formula);

// Exact for finite structures; for string structures the commuting condition
// is checked on ground lists of length <= depthBound and predicates on
// elements of length <= 2.
MorphismVerdict isHomomorphism(const Morphism& psi, int depthBound = 3);
MorphismVerdict isIsomorphism(const Morphism& psi, int depthBound = 3);

// phi o psi; requires psi.target to be phi.source.
Morphism compose(const Morphism& phi, const Morphism& psi);
Morphism invert(const Morphism& psi, int depthBound = 3);

enum class MorphismMode { Hom, Iso };

inline constexpr std::size_t kDefaultMorphismUniverseCap = 8;

// All homomorphisms (or isomorphisms) between two finite structures, in
// lexicographic order of the image sequence.
std::vector<Morphism> enumerateMorphisms(const std::shared_ptr<const FiniteTermStructure>& source,
                                         const std::shared_ptr<const FiniteTermStructure>& target, MorphismMode mode,
                                         std::size_t universeCap = kDefaultMorphismUniverseCap);

}  // namespace fms
