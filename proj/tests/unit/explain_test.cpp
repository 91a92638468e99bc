#include <gtest/gtest.h>

#include "reference.hpp"
#include "reppact/explain.hpp"
#include "reppact/io.hpp"
#include "reppact/serialize.hpp"

namespace reppact {
namespace {

struct Expected {
  const char* attribute;
  const char* category;
  int difference;
};

TEST(Deficits, TableFourPartialCommittee) {
  const auto config = reftest::monthey_config();
  const std::vector<CandidateId> partial = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "T", "Z"};
  const DeficitReport r = deficit_report(partial, config);
  const std::vector<Expected> want = {
      {"region", "Region 1", 3}, {"region", "Region 2", 0}, {"region", "Region 3", -2}, {"region", "Region 4", 0},
      {"gender", "Male", -1},    {"gender", "Female", -1},  {"age", "18-30", 0},         {"age", "31-65", 0},
      {"age", "+65", 0},
  };
  ASSERT_EQ(r.rows.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(r.rows[i].attribute, want[i].attribute);
    EXPECT_EQ(r.rows[i].category, want[i].category);
    EXPECT_EQ(r.rows[i].difference, want[i].difference) << want[i].category;
  }
  const auto unmet = r.unmet();
  ASSERT_EQ(unmet.size(), 3u);
  EXPECT_EQ(unmet[0].category, "Region 3");
  EXPECT_EQ(r.find("gender", "Male")->reached, 7);
  EXPECT_EQ(r.find("gender", "Nobody"), nullptr);
}

TEST(Deficits, AtMostReportsHeadroomAndExactOvershootIsUnmet) {
  ElectionConfig c;
  c.seats = 3;
  c.roster = {{"a", "", {{"g", "x"}}}, {"b", "", {{"g", "x"}}}, {"c", "", {{"g", "y"}}}};
  c.criteria = {{"g", {{"x", Bound::at_most(1)}, {"y", Bound::exact(0)}}, 1}};
  const std::vector<CandidateId> committee = {"a", "c"};
  const DeficitReport r = deficit_report(committee, c);
  EXPECT_EQ(r.rows[0].difference, 0);
  EXPECT_TRUE(r.rows[0].met);
  EXPECT_EQ(r.rows[1].difference, 1);
  EXPECT_FALSE(r.rows[1].met);
  const std::vector<CandidateId> bad = {"a", "zz"};
  EXPECT_THROW(deficit_report(bad, c), Error);
}

TEST(Price, MontheyFigures) {
  const PriceReport p = price_report(reftest::monthey_tally(), reftest::monthey_config());
  EXPECT_EQ(p.total_votes_cast, 1931);
  EXPECT_EQ(p.unconstrained_objective, 1507);
  EXPECT_EQ(p.constrained_objective, 1440);
  EXPECT_EQ(p.price, 67);
  EXPECT_EQ(p.lost_votes_unconstrained, 424);
  EXPECT_EQ(p.lost_votes_constrained, 491);
  EXPECT_EQ(p.lost_unconstrained_pct_tenths, 220);
  EXPECT_EQ(p.lost_constrained_pct_tenths, 254);
  EXPECT_EQ(p.price_pct_tenths, 34);
}

TEST(Price, SharesAlwaysAddUp) {
  for (std::int64_t total : {1, 7, 100, 1931, 99991}) {
    for (std::int64_t u = 0; u <= total; u += std::max<std::int64_t>(total / 13, 1)) {
      for (std::int64_t c = 0; c <= u; c += std::max<std::int64_t>(u / 7, 1)) {
        const PriceReport p = price_from_objectives(u, c, total);
        EXPECT_EQ(p.price, u - c);
        EXPECT_EQ(p.lost_constrained_pct_tenths - p.lost_unconstrained_pct_tenths, p.price_pct_tenths);
        EXPECT_GE(p.price_pct_tenths, 0);
      }
    }
  }
  const PriceReport zero = price_from_objectives(0, 0, 0);
  EXPECT_EQ(zero.price_pct_tenths, 0);
}

TEST(Price, InfeasibleThrows) {
  ElectionConfig c = reftest::monthey_config();
  c.criteria[0].categories[0].bound = Bound::at_least(17);
  try {
    price_report(reftest::monthey_tally(), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(Displacement, MontheyExplainsEveryPromotion) {
  const auto config = reftest::monthey_config();
  const auto tally = reftest::monthey_tally();
  const SolveOutcome out = solve(tally, config);
  const DisplacementReport d = displacement_report(out, tally, config);
  EXPECT_EQ(d.cut_line_votes, 56);
  EXPECT_EQ(d.top_elected.size(), 13u);
  EXPECT_EQ(d.partial_committee.size(), 15u);
  ASSERT_EQ(d.records.size(), 4u);
  const std::vector<std::pair<std::string, DisplacementReason>> want = {
      {"S", DisplacementReason::kDeficit},
      {"T", DisplacementReason::kForced},
      {"W", DisplacementReason::kDeficit},
      {"Z", DisplacementReason::kForced}};
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(d.records[i].candidate_id, want[i].first);
    EXPECT_EQ(d.records[i].reason, want[i].second);
    EXPECT_FALSE(d.records[i].categories.empty());
  }
  EXPECT_EQ(d.records[0].outranked, (std::vector<CandidateId>{"N", "O", "P", "Q", "R"}));
  EXPECT_EQ(d.records[0].categories.front(), (DeficitCitation{"region", "Region 3", -2}));
  EXPECT_EQ(d.records[1].categories.front(), (DeficitCitation{"age", "+65", -2}));
  EXPECT_EQ(d.partial_deficits.find("region", "Region 3")->difference, -2);
}

TEST(Displacement, NothingToExplainWithoutCriteria) {
  auto config = reftest::monthey_config();
  config.criteria.clear();
  const auto tally = reftest::monthey_tally();
  const DisplacementReport d = displacement_report(solve(tally, config), tally, config);
  EXPECT_TRUE(d.records.empty());
}

class Rendering : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto config = reftest::monthey_config();
    const auto tally = reftest::monthey_tally();
    report_ = build_report(tally, config, solve(tally, config));
  }
  ElectionReport report_;
};

TEST_F(Rendering, TextCarriesHeadlineFigures) {
  const std::string text = render_report(report_, ReportFormat::kText);
  for (const char* needle : {"1440", "1507", "67 votes", "3.4%", "22.0%", "25.4%", "I, M, T, Z", "Region 3"}) {
    EXPECT_NE(text.find(needle), std::string::npos) << needle;
  }
}

TEST_F(Rendering, MarkdownUsesPipeTables) {
  const std::string md = render_report(report_, ReportFormat::kMarkdown);
  EXPECT_NE(md.find("| Candidate"), std::string::npos);
  EXPECT_NE(md.find("| --- |"), std::string::npos);
  EXPECT_NE(md.find("# "), std::string::npos);
}

TEST_F(Rendering, JsonMatchesGoldenFixture) {
  const Json got = parse_json(render_report(report_, ReportFormat::kJson));
  const Json golden = parse_json(io::read_file(reftest::data_dir() / "monthey" / "report.json"));
  EXPECT_EQ(got, golden);
  EXPECT_EQ(got["price"]["price"], 67);
  EXPECT_DOUBLE_EQ(got["price"]["price_pct"].get<double>(), 3.4);
}

TEST(RenderingEdge, EmptyRosterIsHeaderOnly) {
  ElectionReport r;
  r.config.election_id = "empty";
  const std::string text = render_report(r, ReportFormat::kText);
  EXPECT_NE(text.find("empty"), std::string::npos);
  EXPECT_EQ(text.find("Results"), std::string::npos);
  EXPECT_THROW(parse_report_format("pdf"), Error);
  EXPECT_EQ(parse_report_format("markdown"), ReportFormat::kMarkdown);
}

}  // namespace
}  // namespace reppact
