#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "xmodkit/io.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(XMODKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string sample(const std::string& f) { return std::string(XMODKIT_SAMPLES_DIR) + "/" + f; }

json report(const Outcome& r) {
  json j = json::parse(r.out);
  EXPECT_EQ(j["exit_code"], r.code);
  return j;
}

}  // namespace

TEST(Cli, CheckPasses) {
  const Outcome r = run("check " + sample("s3_conjugation.xmk"));
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = report(r);
  EXPECT_EQ(j["tool"], "xmodkit");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["results"].size(), 2u);
  for (const auto& x : j["results"]) EXPECT_TRUE(x["routes_agree"].get<bool>());
}

TEST(Cli, PeifferViolationHasWitness) {
  const Outcome r = run("check " + sample("peiffer_violation.xmk"));
  ASSERT_EQ(r.code, 1);
  const json j = report(r);
  const json& pf = j["results"][0]["axioms"]["peiffer"];
  EXPECT_FALSE(pf["pass"].get<bool>());
  ASSERT_TRUE(pf.contains("witness"));
  EXPECT_NE(pf["lhs"], pf["rhs"]);
  EXPECT_FALSE(j["results"][0]["wordlevel"]["condition2"]["pass"].get<bool>());
}

TEST(Cli, Pi0OfDiscreteModule) {
  const Outcome r = run("pi0 " + sample("discrete_z4.xmk") + " D-Z4");
  ASSERT_EQ(r.code, 0);
  const json j = report(r);
  ASSERT_EQ(j["results"].size(), 1u);
  EXPECT_EQ(j["results"][0]["pi0"]["order"], 4);
  EXPECT_EQ(j["results"][0]["coequalizer_order"], 4);
}

TEST(Cli, MalformedInputIsLocated) {
  const Outcome r = run("check " + sample("malformed.xmk"));
  ASSERT_EQ(r.code, 2);
  const json j = report(r);
  EXPECT_EQ(j["verdict"], "error");
  EXPECT_EQ(j["error"]["line"], 10);
  EXPECT_EQ(j["error"]["column"], 22);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("check " + sample("s3_conjugation.xmk") + " nosuch").code, 2);
  EXPECT_EQ(run("condp bogus").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check /nonexistent/file.xmk").code, 2);
}

TEST(Cli, LiftVerdicts) {
  const Outcome bad = run("lift " + sample("no_section.xmk"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(report(bad)["results"][0]["certificate"]["status"], "no-equivariant-section");
  EXPECT_EQ(run("lift " + sample("lift_fixtures.xmk")).code, 0);
  EXPECT_EQ(run("lift " + sample("lift_fixtures.xmk") + " --algorithm pullback-section").code, 0);
  EXPECT_EQ(run("lift " + sample("lift_fixtures.xmk") + " --budget 1").code, 3);
}

TEST(Cli, AuditVerdicts) {
  EXPECT_EQ(run("audit " + sample("module_arrows.xmk") + " free-arrow").code, 0);
  EXPECT_EQ(run("audit " + sample("module_arrows.xmk") + " doubling").code, 1);
  EXPECT_EQ(run("audit " + sample("module_arrows.xmk") + " free-arrow --budget 1").code, 3);
  EXPECT_EQ(run("audit " + sample("sse_family.xmk") + " Z4xZ2 --family reductions").code, 0);
  EXPECT_EQ(run("audit " + sample("sse_family.xmk") + " Z2xZ2 --family reductions").code, 1);
}

TEST(Cli, ConditionPSuites) {
  EXPECT_EQ(run("condp z4-pipeline " + sample("set_maps.xmk")).code, 0);
  const Outcome ns = run("condp non-schreier");
  ASSERT_EQ(ns.code, 0);
  EXPECT_EQ(report(ns)["results"][0]["obstruction"], "16^2 = 256 != 64");
  EXPECT_EQ(run("condp transfer --count 10").code, 0);
  EXPECT_EQ(run("condp preservation").code, 0);
}

TEST(Cli, SummaryMode) {
  const Outcome r = run("check " + sample("peiffer_violation.xmk") + " --summary");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("check: fail (exit 1)", 0), 0u) << r.out;
}

TEST(Cli, ReportsAreDeterministic) {
  for (const std::string& args : {"check " + sample("s3_conjugation.xmk"), std::string("condp non-schreier --seed 3"),
                                 "lift " + sample("lift_fixtures.xmk")}) {
    json a = json::parse(run(args).out), b = json::parse(run(args).out);
    a.erase("timing_ms");
    b.erase("timing_ms");
    EXPECT_EQ(a, b) << args;
  }
}

TEST(Cli, CanonicalInputReparses) {
  const json j = json::parse(run("check " + sample("s3_conjugation.xmk")).out);
  const std::string canon = j["inputs"]["canonical"];
  EXPECT_EQ(xmodkit::digest_hex(canon), j["inputs"]["digest"]);
  EXPECT_EQ(xmodkit::canonical_text(xmodkit::load_definitions(canon)), canon);
}
