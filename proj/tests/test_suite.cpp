#include <gtest/gtest.h>

#include "partialop/errors.hpp"
#include "partialop/suite.hpp"

using namespace partialop;

class NamedSuite : public ::testing::TestWithParam<std::string> {};

TEST_P(NamedSuite, PassesAtDefaultTolerance) {
  const SuiteReport r = run_suite(GetParam());
  EXPECT_FALSE(r.checks.empty());
  EXPECT_TRUE(r.all_passed()) << r.text();
  EXPECT_EQ(r.exit_code(), 0);
}

TEST_P(NamedSuite, ZeroToleranceScaleFails) {
  const SuiteReport r = run_suite(GetParam(), SuiteOptions{SuiteOptions{}.seed, 0.0});
  EXPECT_FALSE(r.all_passed());
  EXPECT_EQ(r.exit_code(), 1);
}

INSTANTIATE_TEST_SUITE_P(All, NamedSuite,
                         ::testing::Values("neumann", "graph", "cfunc", "shift"));

TEST(Suite, SeedChangesNothingStructural) {
  const SuiteReport a = run_suite("shift", SuiteOptions{1, 1.0});
  const SuiteReport b = run_suite("shift", SuiteOptions{2, 1.0});
  ASSERT_EQ(a.checks.size(), b.checks.size());
  EXPECT_TRUE(a.all_passed());
  EXPECT_TRUE(b.all_passed());
}

TEST(Suite, SameSeedSameReport) {
  EXPECT_EQ(run_suite("neumann").text(), run_suite("neumann").text());
}

TEST(Suite, ReportFormat) {
  const std::string t = run_suite("graph").text();
  EXPECT_EQ(t.rfind("PASS  graph: ", 0), 0u);
  EXPECT_NE(t.find("checks passed"), std::string::npos);
}

TEST(Suite, UnknownNameThrows) {
  EXPECT_THROW(run_suite("bogus"), InvalidArgument);
  EXPECT_EQ(suite_names().back(), "all");
}
