#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

std::string data(const std::string& file) { return std::string(FMS_DATA_DIR) + "/" + file; }

// Runs the CLI with stderr folded into the captured text only when asked.
Outcome cli(const std::string& args, bool withStderr = false) {
  std::string command = std::string("\"") + FMS_CLI + "\" " + args + (withStderr ? " 2>&1" : " 2>/dev/null");
  Outcome r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, AffirmativeVerdictsExitZero) {
  Outcome model = cli("check-model --structure " + data("klein.json") + " --axioms " + data("groups.fml"));
  EXPECT_EQ(model.code, 0);
  EXPECT_EQ(model.out.rfind("MODEL: 2/2 axioms valid", 0), 0u);
  Outcome eval = cli("eval --structure " + data("klein.json") + " --formula '~ *($a $b) , $c'");
  EXPECT_EQ(eval.code, 0);
  EXPECT_NE(eval.out.find("TRUE"), std::string::npos);
  Outcome iso = cli("enum-morphisms --from " + data("klein.json") + " --to " + data("klein.json") + " --iso");
  EXPECT_EQ(iso.code, 0);
  EXPECT_EQ(iso.out.rfind("ISOMORPHISMS: 6", 0), 0u);
  EXPECT_EQ(cli("hf pow '{{}}'").out, "RESULT: {{},{{}}}\nRANK: 2\n");
}

TEST(Cli, NegativeVerdictsExitOneWithCounterexample) {
  Outcome corrupt = cli("check-model --structure " + data("klein_corrupt.json") + " --axioms " + data("groups.fml"));
  EXPECT_EQ(corrupt.code, 1);
  EXPECT_NE(corrupt.out.find("COUNTEREXAMPLE"), std::string::npos);
  EXPECT_NE(corrupt.out.find("x1=$a x2=$b x3=$c"), std::string::npos);
  Outcome bad = cli("hom --morphism " + data("klein_bad.json"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("COUNTEREXAMPLE"), std::string::npos);
  EXPECT_EQ(cli("iso --morphism " + data("klein_collapse.json")).code, 1);
  EXPECT_EQ(cli("hf friendly '{{}}'").code, 1);
}

TEST(Cli, ErrorsExitTwoOnStderr) {
  Outcome missing = cli("eval --structure " + data("nowhere.json") + " --formula '~ $a , $a'", true);
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.out.find("nowhere.json"), std::string::npos);
  EXPECT_EQ(cli("eval --structure " + data("nowhere.json") + " --formula '~ $a , $a'").out, "");
  Outcome arity = cli("eval --structure " + data("klein.json") + " --formula '~ *($a) , $a'", true);
  EXPECT_EQ(arity.code, 2);
  EXPECT_EQ(arity.out.rfind("error: ", 0), 0u);
  EXPECT_EQ(cli("eval --structure " + data("klein.json") + " --formula '~ $a ,'").out, "");
  EXPECT_EQ(cli("eval --structure " + data("klein.json") + " --formula '~ $a ,'").code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("hom").code, 2);
  EXPECT_EQ(cli("hf nope '{}'").code, 2);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const std::string& args :
       {"henkin --structure " + data("klein.json"),
        "cond4 --structure " + data("klein.json") + " --bound 2",
        "iso --morphism " + data("klein_cycle.json"),
        "check-model --structure " + data("klein.json") + " --axioms " + data("abelian.fml")}) {
    Outcome first = cli(args);
    Outcome second = cli(args);
    EXPECT_EQ(first.code, second.code) << args;
    EXPECT_EQ(first.out, second.out) << args;
    EXPECT_FALSE(first.out.empty()) << args;
  }
}
