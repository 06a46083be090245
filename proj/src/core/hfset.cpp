#include "fms/hfset.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "fms/error.hpp"

namespace fms {

HFSet::HFSet() {
  static const std::shared_ptr<const Node> kEmpty = std::make_shared<Node>();
  node_ = kEmpty;
}

HFSet HFSet::of(std::vector<HFSet> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto node = std::make_shared<Node>();
  for (const HFSet& m : members) node->rank = std::max(node->rank, m.rank() + 1);
  node->members = std::move(members);
  return HFSet(std::move(node));
}

HFSet HFSet::singleton(const HFSet& member) { return of({member}); }

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(node_->members.begin(), node_->members.end(), x);
}

bool HFSet::isSubsetOf(const HFSet& other) const {
  return std::includes(other.members().begin(), other.members().end(), members().begin(), members().end());
}

std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  return std::lexicographical_compare_three_way(a.members().begin(), a.members().end(), b.members().begin(),
                                                b.members().end());
}

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view text) : text_(text) {}

  HFSet parse() {
    HFSet out = set();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return out;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) {
    throw Error(ErrorCode::Syntax, message + " at offset " + std::to_string(pos_));
  }

  HFSet set() {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != '{') fail("expected '{'");
    ++pos_;
    std::vector<HFSet> members;
    skip();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return HFSet();
    }
    while (true) {
      members.push_back(set());
      skip();
      if (pos_ >= text_.size()) fail("unterminated set");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == '}') {
        ++pos_;
        break;
      }
      fail("expected ',' or '}'");
    }
    return HFSet::of(std::move(members));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const HFSet& s, std::string& out) {
  out += '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    print(s.members()[i], out);
  }
  out += '}';
}

}  // namespace

HFSet parseHFSet(std::string_view text) { return SetParser(text).parse(); }

std::string toString(const HFSet& set) {
  std::string out;
  print(set, out);
  return out;
}

bool isTransitive(const HFSet& u) {
  return std::all_of(u.members().begin(), u.members().end(), [&](const HFSet& y) { return y.isSubsetOf(u); });
}

HFSet transitiveClosure(const HFSet& a) {
  std::set<HFSet> seen;
  std::vector<HFSet> stack(a.members().begin(), a.members().end());
  while (!stack.empty()) {
    HFSet x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    for (const HFSet& m : x.members()) stack.push_back(m);
  }
  return HFSet::of(std::vector<HFSet>(seen.begin(), seen.end()));
}

HFSet powerSet(const HFSet& y, std::size_t cap) {
  if (y.size() > cap) {
    throw Error(ErrorCode::TooLarge, "power set of a set with " + std::to_string(y.size()) +
                                         " members exceeds the cap of " + std::to_string(cap));
  }
  std::vector<HFSet> subsets;
  const std::size_t n = y.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<HFSet> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) chosen.push_back(y.members()[i]);
    }
    subsets.push_back(HFSet::of(std::move(chosen)));
  }
  return HFSet::of(std::move(subsets));
}

HFSet setUnion(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> out;
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(), std::back_inserter(out));
  return HFSet::of(std::move(out));
}

HFSet setIntersection(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                        std::back_inserter(out));
  return HFSet::of(std::move(out));
}

HFSet setDifference(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> out;
  std::set_difference(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                      std::back_inserter(out));
  return HFSet::of(std::move(out));
}

HFSet pairSet(const HFSet& a, const HFSet& b) { return HFSet::of({a, b}); }

HFSet bigUnion(const HFSet& a) {
  std::vector<HFSet> out;
  for (const HFSet& m : a.members()) out.insert(out.end(), m.members().begin(), m.members().end());
  return HFSet::of(std::move(out));
}

HFSet kuratowskiPair(const HFSet& x, const HFSet& y) { return pairSet(HFSet::singleton(x), pairSet(x, y)); }

HFSet cartesianProduct(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> out;
  for (const HFSet& x : a.members()) {
    for (const HFSet& y : b.members()) out.push_back(kuratowskiPair(x, y));
  }
  return HFSet::of(std::move(out));
}

HFSet subsetComprehension(const HFSet& a, const std::function<bool(const HFSet&)>& property) {
  std::vector<HFSet> out;
  for (const HFSet& y : a.members()) {
    if (property(y)) out.push_back(y);
  }
  return HFSet::of(std::move(out));
}

HFSet regularityWitness(const HFSet& u) {
  if (u.empty()) throw Error(ErrorCode::EmptyInput, "the empty set has no members");
  const HFSet* best = nullptr;
  for (const HFSet& y : u.members()) {
    if (!setIntersection(u, y).empty()) continue;
    if (!best || y.rank() < best->rank()) best = &y;
  }
  if (!best) throw Error(ErrorCode::PreconditionViolated, "no member is disjoint from " + toString(u));
  return *best;
}

HFSet choiceSet(const HFSet& u) {
  std::vector<HFSet> chosen;
  for (const HFSet& a : u.members()) {
    if (a.empty()) throw Error(ErrorCode::PreconditionViolated, "member {} is empty");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      HFSet common = setIntersection(u.members()[i], u.members()[j]);
      if (!common.empty()) {
        throw Error(ErrorCode::PreconditionViolated, "members " + toString(u.members()[i]) + " and " +
                                                         toString(u.members()[j]) + " share " +
                                                         toString(common.members().front()));
      }
    }
  }
  for (const HFSet& a : u.members()) chosen.push_back(a.members().front());
  return HFSet::of(std::move(chosen));
}

bool SubsetFriendlyReport::friendly() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
}

SubsetFriendlyReport checkSubsetFriendly(const HFSet& u) {
  SubsetFriendlyReport report;
  const HFSet empty;

  if (!u.contains(empty)) report.conditions[0] = {false, "{} is not a member"};

  for (const HFSet& y : u.members()) {
    for (const HFSet& x : y.members()) {
      if (!u.contains(x)) {
        report.conditions[1] = {false, "Y=" + toString(y) + " has member " + toString(x) + " outside U"};
        goto transitiveDone;
      }
    }
  }
transitiveDone:

  // P(Y) is a member iff some member W has 2^|Y| members, all subsets of Y.
  for (const HFSet& y : u.members()) {
    bool found = false;
    if (y.size() < 63) {
      const std::size_t want = std::size_t{1} << y.size();
      for (const HFSet& w : u.members()) {
        if (w.size() != want) continue;
        if (std::all_of(w.members().begin(), w.members().end(), [&](const HFSet& v) { return v.isSubsetOf(y); })) {
          found = true;
          break;
        }
      }
    }
    if (!found) {
      std::string power = y.size() <= kDefaultPowerSetCap ? toString(powerSet(y)) : "P(Y)";
      report.conditions[2] = {false, "Y=" + toString(y) + ": " + power + " is not a member"};
      break;
    }
  }

  std::vector<const HFSet*> transitiveMembers;
  for (const HFSet& v : u.members()) {
    if (isTransitive(v)) transitiveMembers.push_back(&v);
  }
  for (const HFSet& y : u.members()) {
    for (const HFSet& z : u.members()) {
      bool covered = std::any_of(transitiveMembers.begin(), transitiveMembers.end(),
                                 [&](const HFSet* v) { return v->contains(y) && v->contains(z); });
      if (!covered) {
        report.conditions[3] = {false, "Y=" + toString(y) + ", Z=" + toString(z) +
                                           ": no transitive member contains both"};
        goto coverDone;
      }
    }
  }
coverDone:
  return report;
}

std::vector<HFSet> allSetsUpToRank(int maxRank) {
  if (maxRank < 0) return {};
  if (maxRank > 4) throw Error(ErrorCode::TooLarge, "sets of rank <= " + std::to_string(maxRank) + " are too many");
  // V_{r+1} = P(V_r); the sets of rank <= r are the members of V_{r+1}.
  HFSet level;
  for (int r = 0; r <= maxRank; ++r) level = powerSet(level, 16);
  return level.members();
}

}  // namespace fms
