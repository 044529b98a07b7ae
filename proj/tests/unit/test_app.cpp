#include <gtest/gtest.h>

#include <json.hpp>

#include "lpverify_app/app.hpp"

using namespace lpv;
using namespace lpv::app;

namespace {

SuiteConfig config(std::vector<std::string> suites, std::string manifest = "example3") {
  SuiteConfig c;
  c.manifest = std::move(manifest);
  c.suites = std::move(suites);
  c.sample_count = 16;
  return c;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(App, ResolveSuites) {
  const Manifest ambient = resolve_manifest("example3");
  const Manifest leaf = resolve_manifest("example3-leaf");
  EXPECT_EQ(resolve_suites(config({}), ambient).size(), 11u);
  EXPECT_EQ(resolve_suites(config({}), leaf).size(), known_suites().size());
  EXPECT_EQ(resolve_suites(config({"torsion", "axioms"}), ambient), (std::vector<std::string>{"axioms", "torsion"}));
  EXPECT_THROW(resolve_suites(config({"nosuch"}), ambient), UsageError);
  EXPECT_THROW(resolve_suites(config({"lemma54"}), ambient), UsageError);
  SuiteConfig few = config({});
  few.sample_count = 7;
  EXPECT_THROW(resolve_suites(few, ambient), UsageError);
  SuiteConfig tol = config({});
  tol.tolerance_overrides["nosuch"] = 1e-3;
  EXPECT_THROW(resolve_suites(tol, ambient), UsageError);
  tol.tolerance_overrides = {{"axioms", -1.0}};
  EXPECT_THROW(resolve_suites(tol, ambient), UsageError);
}

TEST(App, GridIsCartesianProduct) {
  SuiteConfig c = config({});
  EXPECT_EQ(grid_of(c).size(), 5u);
  c.alpha_values = {0, 1};
  c.beta_values = {0.5, 1, 2};
  const auto g = grid_of(c);
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g[1].alpha, 0.0);
  EXPECT_EQ(g[1].beta, 1.0);
  c.beta_values.clear();
  EXPECT_EQ(grid_of(c).size(), 2u);
}

TEST(App, AllPassExample) {
  SuiteConfig c = config({"axioms", "connection", "curvature"});
  c.alpha_values = {1};
  c.beta_values = {0};
  c.seed = 7;
  const Report r = run(c);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.summary.fail, 0u);
  EXPECT_NE(emit_text(r).find("result: PASS"), std::string::npos);
}

TEST(App, FailingRowMarked) {
  SuiteConfig c = config({"curvature"});
  c.alpha_values = {0};
  c.beta_values = {1};
  const Report r = run(c);
  EXPECT_FALSE(r.passed());
  const std::string text = emit_text(r);
  EXPECT_NE(text.find("closed_form                     "), std::string::npos);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
}

TEST(App, JsonSchemaAndFlags) {
  SuiteConfig c = config({"torsion", "lemma3", "integrability"}, "example3-leaf");
  const Report r = run(c);
  const auto j = nlohmann::json::parse(emit_json(r));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["tool"], "lpverify");
  EXPECT_EQ(j["results"].size(), 5u);
  EXPECT_EQ(j["config"]["samples"], 16);
  const auto flags = j["flags"].get<std::vector<std::string>>();
  EXPECT_TRUE(has(flags, "lemma42_minus_a_read_as_alpha"));
  EXPECT_TRUE(has(flags, "torsion_model_phi_U_reading"));
  EXPECT_TRUE(has(flags, "empty_d_perp"));
  EXPECT_TRUE(std::is_sorted(flags.begin(), flags.end()));
  EXPECT_GT(j["summary"]["vacuous"].get<int>(), 0);
  EXPECT_EQ(j["passed"], r.passed());
}

TEST(App, DeterministicAcrossRunsAndWorkers) {
  SuiteConfig c = config({});
  c.seed = 42;
  const std::string a = emit_json(run(c));
  const std::string b = emit_json(run(c));
  c.jobs = 3;
  const std::string d = emit_json(run(c));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
  c.seed = 43;
  EXPECT_NE(a, emit_json(run(c)));
}

TEST(App, ToleranceOverrideApplies) {
  SuiteConfig c = config({"curvature"});
  c.alpha_values = {0};
  c.beta_values = {1};
  c.tolerance_overrides["curvature"] = 10.0;
  EXPECT_TRUE(run(c).passed());
}
