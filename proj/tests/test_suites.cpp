#include <gtest/gtest.h>

#include "qchar/suites.hpp"

using namespace qchar;
using namespace qchar::suites;

TEST(SeriesJson, SortedRationalStrings) {
  Series2 s({1, 1}, 2, -1, 3);
  s.add_term(1, 0, 2, Rational(-3, 4));
  s.add_term(0, 1, 0, 5);
  s.add_term(0, 0, 3, 1);
  auto j = series_json(s);
  EXPECT_EQ(j["orientation"], json::array({1, 1}));
  EXPECT_EQ(j["qwindow"], json::array({-1, 3}));
  ASSERT_EQ(j["terms"].size(), 3u);
  EXPECT_EQ(j["terms"][0]["m2"], 0);
  EXPECT_EQ(j["terms"][1]["c"], "5/1");
  EXPECT_EQ(j["terms"][2]["c"], "-3/4");
}

TEST(Report, FailingCheckCarriesCounterexample) {
  Report r{"x", {{"a", {{"k", 1}}, true, nullptr}, {"b", {{"k", 2}}, false, {{"q", 3}}}}, 0};
  EXPECT_EQ(r.failed(), 1u);
  auto j = to_json(r, RunConfig{});
  EXPECT_FALSE(j["checks"][0].contains("counterexample"));
  EXPECT_EQ(j["checks"][1]["counterexample"]["q"], 3);
  EXPECT_EQ(j["summary"]["pass"], false);
  EXPECT_EQ(j["config"]["seed"], 20240607u);
}

TEST(Suites, UsageErrors) {
  RunConfig c;
  c.k1 = 3;
  c.k2 = 2;
  EXPECT_THROW(run_suite("ses", c), UsageError);
  EXPECT_THROW(run_suite("nope", RunConfig{}), UsageError);
}

TEST(Suites, Deterministic) {
  RunConfig c;
  c.d1 = 2;
  auto a = to_json(run_suite("terms", c), c).dump();
  auto b = to_json(run_suite("terms", c), c).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"pass\":true"), std::string::npos);
}

TEST(Suites, OverridesFilterSweep) {
  RunConfig c;
  c.d1 = 1;
  c.d2 = 3;
  auto r = run_suite("toda", c);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].params["d2"], 3);
}
