#include <gtest/gtest.h>

#include <string>

#include "fms/fms.h"

namespace {

std::string data(const char* file) { return std::string(FMS_DATA_DIR) + "/" + file; }

struct Owned {
  char* text = nullptr;
  ~Owned() { fms_free_string(text); }
};

class CApi : public ::testing::Test {
 protected:
  void SetUp() override { ASSERT_EQ(fms_structure_load(data("klein.json").c_str(), &klein), FMS_OK); }
  void TearDown() override { fms_structure_free(klein); }
  fms_structure* klein = nullptr;
};

}  // namespace

TEST_F(CApi, TruthQueries) {
  fms_truth t = FMS_UNKNOWN;
  ASSERT_EQ(fms_eval_truth(klein, "~ *($a $b) , $c", &t), FMS_OK);
  EXPECT_EQ(t, FMS_TRUE);
  ASSERT_EQ(fms_eval_truth(klein, "ex x1 ~ *(x1 x1) , $a", &t), FMS_OK);
  EXPECT_EQ(t, FMS_FALSE);
  ASSERT_EQ(fms_valid_truth(klein, "~ *(x1 x2) , *(x2 x1)", &t), FMS_OK);
  EXPECT_EQ(t, FMS_TRUE);
  size_t n = 0;
  ASSERT_EQ(fms_structure_size(klein, &n), FMS_OK);
  EXPECT_EQ(n, 4u);
  Owned e;
  ASSERT_EQ(fms_eval_list(klein, "*($a *($b $c))", &e.text), FMS_OK);
  EXPECT_STREQ(e.text, "e");
}

TEST_F(CApi, ErrorsCarryCodesAndMessages) {
  fms_truth t;
  EXPECT_EQ(fms_eval_truth(klein, "~ *($a) , $c", &t), FMS_ERR_ARITY);
  EXPECT_NE(std::string(fms_last_error()).find("ArityError"), std::string::npos);
  EXPECT_EQ(fms_eval_truth(klein, "~ x1 , $c", &t), FMS_ERR_NOT_CLOSED);
  EXPECT_EQ(fms_eval_truth(klein, "~ $a , $c", &t), FMS_OK);
  EXPECT_STREQ(fms_last_error(), "");
  EXPECT_EQ(fms_eval_truth(nullptr, "~ $a , $c", &t), FMS_ERR_INVALID_ARGUMENT);
  fms_structure* missing = nullptr;
  EXPECT_EQ(fms_structure_load(data("missing.json").c_str(), &missing), FMS_ERR_IO);
  EXPECT_EQ(missing, nullptr);
  EXPECT_EQ(fms_structure_from_json("{", nullptr, &missing), FMS_ERR_SYNTAX);
  EXPECT_STREQ(fms_status_name(FMS_ERR_NOT_INVERTIBLE), "NotInvertible");
  EXPECT_STREQ(fms_status_name(FMS_OK), "OK");
}

TEST_F(CApi, Reports) {
  Owned r;
  int yes = -1;
  ASSERT_EQ(fms_report_check_model(klein, data("groups.fml").c_str(), &r.text, &yes), FMS_OK);
  EXPECT_EQ(yes, 1);
  EXPECT_EQ(std::string(r.text).rfind("MODEL: 2/2 axioms valid\n", 0), 0u);

  Owned e;
  ASSERT_EQ(fms_report_enum_morphisms(klein, klein, 1, &e.text, &yes), FMS_OK);
  EXPECT_EQ(std::string(e.text).rfind("ISOMORPHISMS: 6\n", 0), 0u);

  fms_fragment_bounds b{1, 1, 1, 2, 1};
  Owned h;
  ASSERT_EQ(fms_report_henkin(klein, &b, &h.text, &yes), FMS_OK);
  EXPECT_EQ(yes, 1);

  Owned w;
  ASSERT_EQ(fms_report_witness(klein, "x1", "~ *(x1 $b) , $e", &w.text, &yes), FMS_OK);
  EXPECT_NE(std::string(w.text).find("WITNESS: $b"), std::string::npos);
  EXPECT_EQ(fms_report_witness(klein, "y", "~ x1 , $e", &w.text, &yes), FMS_ERR_INVALID_ARGUMENT);

  const char* ops[] = {"{{}}"};
  Owned f;
  ASSERT_EQ(fms_report_hf("friendly", ops, 1, &f.text, &yes), FMS_OK);
  EXPECT_EQ(yes, 0);
  Owned bad;
  const char* disjoint[] = {"{{{}},{{},{{}}}}"};
  EXPECT_EQ(fms_report_hf("choice", disjoint, 1, &bad.text, &yes), FMS_ERR_PRECONDITION_VIOLATED);
}

TEST(CApiMorphisms, LoadCheckPushAndLanguage) {
  fms_morphism* m = nullptr;
  ASSERT_EQ(fms_morphism_load(data("klein_cycle.json").c_str(), &m), FMS_OK);
  Owned pushed;
  ASSERT_EQ(fms_push_list(m, "*($a $a)", &pushed.text), FMS_OK);
  EXPECT_STREQ(pushed.text, "*($b $b)");
  Owned r;
  int yes = 0;
  ASSERT_EQ(fms_report_morphism(m, 1, 3, &r.text, &yes), FMS_OK);
  EXPECT_EQ(yes, 1);
  fms_morphism_free(m);

  fms_language* lang = nullptr;
  ASSERT_EQ(fms_language_load(data("klein_lang.json").c_str(), &lang), FMS_OK);
  Owned p;
  ASSERT_EQ(fms_report_parse(lang, "all x1 ~ x1 , x1", &p.text, &yes), FMS_OK);
  EXPECT_NE(std::string(p.text).find("CLOSED: yes"), std::string::npos);
  EXPECT_EQ(fms_report_parse(lang, "all x1 ~ x1 ,", &p.text, &yes), FMS_ERR_SYNTAX);
  fms_language_free(lang);

  fms_structure* strings = nullptr;
  ASSERT_EQ(fms_structure_load(data("strings_ab.json").c_str(), &strings), FMS_OK);
  size_t n = 0;
  EXPECT_EQ(fms_structure_size(strings, &n), FMS_ERR_TOO_LARGE);
  Owned s;
  ASSERT_EQ(fms_eval_list(strings, "[$ab b]", &s.text), FMS_OK);
  EXPECT_STREQ(s.text, "abb");
  fms_structure_free(strings);
}
