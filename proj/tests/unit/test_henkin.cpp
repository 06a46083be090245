#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fms/error.hpp"
#include "fms/henkin.hpp"
#include "fms/parser.hpp"
#include "support.hpp"

using namespace fms;

namespace {

class Fragment : public ::testing::Test {
 protected:
  std::shared_ptr<const FiniteTermStructure> klein = fmstest::loadFinite("klein.json");
  Formula parse(const std::string& text) const { return parseFormula(text, klein->language()); }

  static bool contains(const std::vector<Formula>& fs, const Formula& f) {
    return std::find(fs.begin(), fs.end(), f) != fs.end();
  }
};

FragmentBounds bounds(int connective, int list, int quantifiers, int atoms, int names) {
  FragmentBounds b;
  b.connectiveDepth = connective;
  b.listDepth = list;
  b.maxQuantifiers = quantifiers;
  b.maxAtoms = atoms;
  b.maxNames = names;
  return b;
}

}  // namespace

TEST_F(Fragment, TableFactsLandInTheRightPart) {
  FragmentPartition p = enumerateValidFragment(*klein, bounds(0, 1, 0, 1, 3));
  EXPECT_TRUE(contains(p.valid, parse("~ $e , $e")));
  EXPECT_TRUE(contains(p.valid, parse("~ *($a $a) , $e")));
  EXPECT_TRUE(contains(p.invalid, parse("~ *($a $b) , $e")));
  EXPECT_FALSE(contains(p.valid, parse("~ *($a $b) , $e")));
}

TEST_F(Fragment, OrderedBySizeThenText) {
  std::vector<Formula> fs = enumerateFragment(*klein, bounds(1, 1, 1, 2, 2));
  ASSERT_GT(fs.size(), 10u);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    ASSERT_TRUE(fs[i].isClosed());
    ASSERT_TRUE(seen.insert(toString(fs[i])).second);
    if (i == 0) continue;
    auto key = [](const Formula& f) { return std::make_pair(f.size(), toString(f)); };
    ASSERT_LT(key(fs[i - 1]), key(fs[i]));
  }
}

TEST_F(Fragment, QuantifiersBindTheirVariable) {
  for (const Formula& f : enumerateFragment(*klein, bounds(2, 1, 1, 2, 1))) {
    if (isQuantifier(f.kind())) {
      ASSERT_TRUE(f.operand(0).freeVariables().count(f.boundVariable())) << toString(f);
    }
  }
}

TEST_F(Fragment, Witnesses) {
  EXPECT_EQ(henkinWitness(*klein, 1, parse("~ *(x1 $b) , $e")), "$b");
  EXPECT_EQ(henkinWitness(*klein, 1, parse("~ *(x1 x1) , $a")), "$e");
  EXPECT_EQ(henkinWitness(*klein, 1, parse("~ x1 , x1")), "$e");
  try {
    henkinWitness(*klein, 1, parse("~ *(x1 x2) , $e"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosedUnderX);
  }
}

TEST_F(Fragment, WitnessBiconditionalIsValid) {
  std::vector<Formula> open = enumerateFragment(*klein, bounds(1, 1, 1, 2, 2), 1);
  std::size_t checked = 0;
  for (const Formula& f : open) {
    if (!(f.freeVariables() == std::set<VarIndex>{1})) continue;
    std::string c = henkinWitness(*klein, 1, f);
    Formula iff = Formula::binary(FormulaKind::Iff, Formula::exists(1, f), substitute(f, 1, ArgList::name(c)));
    ASSERT_EQ(isValid(*klein, iff), Truth::True) << toString(f);
    ++checked;
  }
  EXPECT_GT(checked, 50u);
}

TEST_F(Fragment, ConsistencyReportPasses) {
  FragmentReport r = fragmentConsistencyReport(*klein, bounds(2, 1, 1, 2, 1));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.total, r.valid + r.invalid);
  EXPECT_GT(r.existentials, 0u);
  EXPECT_EQ(r.witnessesChecked, r.existentials);
}

TEST(OneElement, EveryClosedEquationIsValid) {
  auto trivial = fmstest::loadFinite("trivial.json");
  FragmentBounds b = bounds(1, 2, 1, 2, -1);
  FragmentReport r = fragmentConsistencyReport(*trivial, b);
  EXPECT_TRUE(r.ok());
  for (const Formula& f : enumerateFragment(*trivial, b)) {
    if (f.kind() == FormulaKind::Eq) {
      ASSERT_EQ(evalClosed(*trivial, f), Truth::True);
    }
  }
}

TEST_F(Fragment, CorruptedEvaluatorBreaksComplementarity) {
  FragmentReport r = fragmentConsistencyReport(*klein, bounds(1, 1, 1, 2, 1), [](const Formula&) { return Truth::True; });
  EXPECT_FALSE(r.complementarityOk);
  EXPECT_TRUE(r.complementFailure.has_value());
  EXPECT_FALSE(r.ok());
}

TEST_F(Fragment, EnlargingBoundsKeepsVerdicts) {
  FragmentPartition small = enumerateValidFragment(*klein, bounds(1, 1, 1, 2, 1));
  FragmentPartition large = enumerateValidFragment(*klein, bounds(2, 1, 1, 2, 1));
  std::set<std::string> valid, invalid;
  for (const Formula& f : large.valid) valid.insert(toString(f));
  for (const Formula& f : large.invalid) invalid.insert(toString(f));
  for (const Formula& f : small.valid) ASSERT_TRUE(valid.count(toString(f))) << toString(f);
  for (const Formula& f : small.invalid) ASSERT_TRUE(invalid.count(toString(f))) << toString(f);
}

TEST_F(Fragment, ExplosionGuard) {
  FragmentBounds b = bounds(3, 2, 2, 4, -1);
  b.cap = 1000;
  try {
    enumerateFragment(*klein, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ExplosionGuard);
  }
}
