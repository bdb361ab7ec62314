#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "orlicz/report.hpp"

using namespace orlicz;

TEST(Classify, Semantics) {
  EXPECT_EQ(classify(0.0, 1e-12, 0.0), Verdict::holds);
  EXPECT_EQ(classify(-5e-13, 1e-12, 0.0), Verdict::holds);
  EXPECT_EQ(classify(-1e-9, 1e-12, 1e-8), Verdict::indeterminate);
  EXPECT_EQ(classify(-1e-6, 1e-12, 1e-8), Verdict::fails);
  EXPECT_EQ(classify(NAN, 1e-12, 0.0), Verdict::indeterminate);
  EXPECT_EQ(classify(std::numeric_limits<double>::infinity(), 1e-12, 0.0), Verdict::holds);
}

TEST(MakeReport, SlackAndTolerance) {
  const auto r = make_report(InequalityId::hn1, "s", 2.0, 3.0, 0.0, {{"C", 1.0}});
  EXPECT_EQ(r.slack, 1.0);
  EXPECT_EQ(r.tolerance, 3e-12);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.key(), "hn1|s");
  EXPECT_TRUE(r.ok());
  const auto bad = make_report(InequalityId::hn1, "s", 3.0, 2.0, 0.0);
  EXPECT_EQ(bad.verdict, Verdict::fails);
  EXPECT_FALSE(bad.ok());
  EXPECT_EQ(make_report(InequalityId::hn1, "s", 1.0, 0.5, 1e-12).tolerance, 1e-12);
}

TEST(Json, NonFiniteValuesAreStrings) {
  auto r = make_report(InequalityId::mazya_gaussian, "x", 0.0,
                       std::numeric_limits<double>::infinity(), 0.0);
  r.terms["nan"] = NAN;
  r.terms["neg"] = -std::numeric_limits<double>::infinity();
  const auto j = to_json(r);
  EXPECT_EQ(j.at("rhs"), "inf");
  EXPECT_EQ(j.at("terms").at("nan"), "nan");
  EXPECT_EQ(j.at("terms").at("neg"), "-inf");
  EXPECT_EQ(j.at("verdict"), "holds");
  EXPECT_EQ(j.at("id"), "mazya_gaussian");
  // output must be valid JSON
  EXPECT_NO_THROW((void)nlohmann::json::parse(canonical_dump(j)));
}

TEST(Json, CanonicalDumpSortsKeysAndRoundTrips) {
  nlohmann::json a = {{"b", 0.1}, {"a", {{"z", 1}, {"y", 1.0 / 3.0}}}};
  nlohmann::json b;
  b["a"]["y"] = 1.0 / 3.0;
  b["a"]["z"] = 1;
  b["b"] = 0.1;
  EXPECT_EQ(canonical_dump(a), canonical_dump(b));
  const auto text = canonical_dump(a, 0);
  EXPECT_LT(text.find("\"a\""), text.find("\"b\""));
  const auto back = nlohmann::json::parse(text);
  EXPECT_EQ(back.at("a").at("y").get<double>(), 1.0 / 3.0);
  EXPECT_EQ(back.at("b").get<double>(), 0.1);
}

TEST(Json, ComparisonDropsMetadata) {
  nlohmann::json a = {{"x", 1}, {"metadata", {{"timestamp", "t1"}}}};
  nlohmann::json b = {{"x", 1}, {"metadata", {{"timestamp", "t2"}}}};
  EXPECT_EQ(canonical_for_comparison(a), canonical_for_comparison(b));
  EXPECT_NE(canonical_dump(a), canonical_dump(b));
}

TEST(TrivialReport, Fields) {
  const auto r = trivial_report(InequalityId::term1, "zero", "u = 0");
  EXPECT_EQ(r.verdict, Verdict::trivial);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(to_json(r).at("note"), "u = 0");
}
