#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fms {

// A hereditarily finite set. Members are kept sorted and duplicate-free, so
// structural equality is extensional equality.
class HFSet {
 public:
  HFSet();
  static HFSet of(std::vector<HFSet> members);
  static HFSet singleton(const HFSet& member);

  const std::vector<HFSet>& members() const { return node_->members; }
  bool empty() const { return node_->members.empty(); }
  std::size_t size() const { return node_->members.size(); }
  int rank() const { return node_->rank; }

  bool contains(const HFSet& x) const;
  bool isSubsetOf(const HFSet& other) const;

  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b);
  friend bool operator==(const HFSet& a, const HFSet& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    std::vector<HFSet> members;
    int rank = 0;
  };
  explicit HFSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// `{}`, `{{}}`, `{{},{{}}}`; whitespace is ignored.
HFSet parseHFSet(std::string_view text);
std::string toString(const HFSet& set);

inline constexpr std::size_t kDefaultPowerSetCap = 10;

bool isTransitive(const HFSet& u);
HFSet transitiveClosure(const HFSet& a);
HFSet powerSet(const HFSet& y, std::size_t cap = kDefaultPowerSetCap);

HFSet setUnion(const HFSet& a, const HFSet& b);
HFSet setIntersection(const HFSet& a, const HFSet& b);
HFSet setDifference(const HFSet& a, const HFSet& b);
HFSet pairSet(const HFSet& a, const HFSet& b);
HFSet bigUnion(const HFSet& a);
// <x,y> = {{x},{x,y}}
HFSet kuratowskiPair(const HFSet& x, const HFSet& y);
HFSet cartesianProduct(const HFSet& a, const HFSet& b);

HFSet subsetComprehension(const HFSet& a, const std::function<bool(const HFSet&)>& property);

// The member of least rank (then least in canonical order) disjoint from u.
HFSet regularityWitness(const HFSet& u);

// Picks the least element of every member; members must be nonempty and
// pairwise disjoint.
HFSet choiceSet(const HFSet& u);

struct ConditionResult {
  bool pass = true;
  std::string witness;  // empty when the condition holds
};

struct SubsetFriendlyReport {
  // 1: the empty set is a member; 2: transitive; 3: closed under power set;
  // 4: any two members lie in a common transitive member.
  std::array<ConditionResult, 4> conditions;

  bool friendly() const;
};

SubsetFriendlyReport checkSubsetFriendly(const HFSet& u);

// Every set of rank <= maxRank, in canonical order; maxRank is at most 4.
std::vector<HFSet> allSetsUpToRank(int maxRank);

}  // namespace fms
