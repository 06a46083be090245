#include <gtest/gtest.h>

#include <algorithm>

#include "fms/error.hpp"
#include "fms/hfset.hpp"
#include "support.hpp"

using namespace fms;

namespace {

HFSet S(const char* text) { return parseHFSet(text); }

// Subsets by bitmask, independent of powerSet.
std::vector<HFSet> subsetsOracle(const HFSet& y) {
  std::vector<HFSet> out;
  const auto& m = y.members();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m.size()); ++mask) {
    std::vector<HFSet> pick;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (mask >> i & 1) pick.push_back(m[i]);
    }
    out.push_back(HFSet::of(pick));
  }
  return out;
}

HFSet randomSet(std::mt19937_64& g, int rank) {
  if (rank == 0) return HFSet();
  std::uniform_int_distribution<int> n(0, 3);
  std::vector<HFSet> members;
  for (int k = n(g); k > 0; --k) members.push_back(randomSet(g, rank - 1));
  return HFSet::of(members);
}

}  // namespace

TEST(HFSet, ParsePrintCanonical) {
  EXPECT_EQ(toString(S("{ {{}} , {} }")), "{{},{{}}}");
  EXPECT_EQ(S("{{},{}}"), S("{{}}"));
  EXPECT_EQ(S("{}").rank(), 0);
  EXPECT_EQ(S("{{{}}}").rank(), 2);
  EXPECT_THROW(parseHFSet("{{}"), Error);
  EXPECT_THROW(parseHFSet("{a}"), Error);
}

TEST(HFSet, Transitivity) {
  EXPECT_TRUE(isTransitive(S("{}")));
  EXPECT_TRUE(isTransitive(S("{{},{{}}}")));
  EXPECT_FALSE(isTransitive(S("{{{}}}")));
}

TEST(HFSet, TransitiveClosure) {
  EXPECT_EQ(transitiveClosure(S("{}")), S("{}"));
  EXPECT_EQ(transitiveClosure(S("{{{}}}")), S("{{{}},{}}"));
  HFSet t = S("{{},{{}},{{},{{}}}}");
  EXPECT_EQ(transitiveClosure(t), t);
}

TEST(HFSet, PowerSet) {
  EXPECT_EQ(powerSet(S("{}")), S("{{}}"));
  EXPECT_EQ(powerSet(S("{{}}")), S("{{},{{}}}"));
  HFSet y = S("{{},{{}},{{{}}}}");
  EXPECT_EQ(powerSet(y).size(), 8u);
  EXPECT_EQ(powerSet(y), HFSet::of(subsetsOracle(y)));
  std::vector<HFSet> eleven;
  HFSet cur;
  for (int i = 0; i < 11; ++i) {
    eleven.push_back(cur);
    cur = HFSet::singleton(cur);
  }
  try {
    powerSet(HFSet::of(eleven));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(HFSet, Algebra) {
  EXPECT_EQ(pairSet(S("{}"), S("{}")), S("{{}}"));
  EXPECT_EQ(bigUnion(S("{{{}},{{{}}}}")), S("{{},{{}}}"));
  EXPECT_EQ(kuratowskiPair(S("{}"), S("{}")), S("{{{}}}"));
  EXPECT_EQ(cartesianProduct(S("{{}}"), S("{{}}")), HFSet::singleton(kuratowskiPair(S("{}"), S("{}"))));
  EXPECT_EQ(setUnion(S("{{}}"), S("{{{}}}")), S("{{},{{}}}"));
  EXPECT_EQ(setIntersection(S("{{},{{}}}"), S("{{{}}}")), S("{{{}}}"));
  EXPECT_EQ(setDifference(S("{{},{{}}}"), S("{{{}}}")), S("{{}}"));
}

TEST(HFSet, Comprehension) {
  HFSet a = S("{{},{{{}}}}");
  EXPECT_EQ(subsetComprehension(a, [](const HFSet&) { return false; }), HFSet());
  EXPECT_EQ(subsetComprehension(a, [](const HFSet& y) { return isTransitive(y); }), S("{{}}"));
  EXPECT_EQ(subsetComprehension(a, [](const HFSet&) { return true; }), a);
}

TEST(HFSet, Regularity) {
  EXPECT_EQ(regularityWitness(S("{{}}")), S("{}"));
  EXPECT_EQ(regularityWitness(S("{{},{{}}}")), S("{}"));
  EXPECT_EQ(regularityWitness(S("{{{}}}")), S("{{}}"));
  try {
    regularityWitness(HFSet());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(HFSet, Choice) {
  EXPECT_EQ(choiceSet(S("{{{}},{{{}}}}")), S("{{},{{}}}"));
  EXPECT_EQ(choiceSet(HFSet()), HFSet());
  try {
    choiceSet(S("{{{}},{{},{{}}}}"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
  EXPECT_THROW(choiceSet(S("{{}}")), Error);
}

TEST(HFSet, SubsetFriendlyExamples) {
  SubsetFriendlyReport one = checkSubsetFriendly(S("{{}}"));
  EXPECT_TRUE(one.conditions[0].pass);
  EXPECT_TRUE(one.conditions[1].pass);
  EXPECT_FALSE(one.conditions[2].pass);
  EXPECT_NE(one.conditions[2].witness.find("Y={}"), std::string::npos);
  EXPECT_FALSE(checkSubsetFriendly(HFSet()).conditions[0].pass);
  SubsetFriendlyReport two = checkSubsetFriendly(S("{{},{{}}}"));
  EXPECT_FALSE(two.conditions[2].pass);
  EXPECT_FALSE(two.friendly());
}

TEST(HFSet, RankUpToThreeIsSixteenSets) {
  std::vector<HFSet> all = allSetsUpToRank(3);
  EXPECT_EQ(all.size(), 16u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  for (const HFSet& u : all) EXPECT_LE(u.rank(), 3);
  EXPECT_EQ(allSetsUpToRank(4).size(), 65536u);
}

TEST(HFSetProperties, RankLaws) {
  auto g = fmstest::rng(31);
  for (int i = 0; i < 300; ++i) {
    HFSet a = randomSet(g, 3);
    HFSet b = randomSet(g, 3);
    ASSERT_EQ(powerSet(a).rank(), a.rank() + 1);
    ASSERT_EQ(transitiveClosure(a).rank(), a.rank());
    ASSERT_EQ(setUnion(a, b).rank(), std::max(a.rank(), b.rank()));
    ASSERT_EQ(parseHFSet(toString(a)), a);
  }
}

TEST(HFSetProperties, TransitiveClosureIsLeast) {
  auto g = fmstest::rng(32);
  std::vector<HFSet> transitive;
  for (const HFSet& t : allSetsUpToRank(4)) {
    if (isTransitive(t)) transitive.push_back(t);
  }
  for (int i = 0; i < 200; ++i) {
    HFSet a = randomSet(g, 3);
    HFSet tc = transitiveClosure(a);
    ASSERT_TRUE(isTransitive(tc));
    ASSERT_TRUE(a.isSubsetOf(tc));
    for (const HFSet& t : transitive) {
      if (a.isSubsetOf(t)) {
        ASSERT_TRUE(tc.isSubsetOf(t));
      }
    }
  }
}

TEST(HFSetProperties, ChoicePicksOneFromEach) {
  auto g = fmstest::rng(33);
  for (int i = 0; i < 300; ++i) {
    std::vector<HFSet> pool = allSetsUpToRank(3);
    std::shuffle(pool.begin(), pool.end(), g);
    std::vector<HFSet> family;
    std::size_t at = 0;
    for (int k = std::uniform_int_distribution<int>(0, 3)(g); k > 0 && at < pool.size(); --k) {
      std::size_t take = std::uniform_int_distribution<std::size_t>(1, 3)(g);
      std::vector<HFSet> part(pool.begin() + static_cast<long>(at),
                              pool.begin() + static_cast<long>(std::min(pool.size(), at + take)));
      at += take;
      if (!part.empty()) family.push_back(HFSet::of(part));
    }
    HFSet u = HFSet::of(family);
    HFSet y = choiceSet(u);
    for (const HFSet& a : u.members()) ASSERT_EQ(setIntersection(y, a).size(), 1u);
  }
}
