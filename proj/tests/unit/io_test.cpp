#include <gtest/gtest.h>

#include <filesystem>

#include "reppact/io.hpp"

namespace reppact {
namespace {

using io::parse_csv;

TEST(Csv, QuotedFieldsAndEscapes) {
  const auto rows = parse_csv("a,b\n\"x,1\",\"say \"\"hi\"\"\"\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "x,1");
  EXPECT_EQ(rows[1][1], "say \"hi\"");
}

TEST(Csv, CrLfBomAndBlankLines) {
  const auto rows = parse_csv("\xEF\xBB\xBFh1,h2\r\n\r\n1,2\r\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "h1");
  EXPECT_EQ(rows[1][1], "2");
}

TEST(Csv, EmbeddedNewlineInQuotes) {
  const auto rows = parse_csv("a\n\"two\nlines\"\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "two\nlines");
}

TEST(Csv, MalformedQuotesThrow) {
  EXPECT_THROW(parse_csv("a\n\"open\n"), Error);
  EXPECT_THROW(parse_csv("a\nab\"c\n"), Error);
}

TEST(Csv, FieldQuotingRoundTrip) {
  const std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"", "", "multi\nline"};
  const auto rows = parse_csv(io::csv_row(fields));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], fields);
  EXPECT_EQ(io::csv_field("plain"), "plain");
}

TEST(Candidates, ParseAndWriteRoundTrip) {
  const std::string text =
      "candidate_id,display_name,gender,region\n"
      "A,\"Doe, Jane\",Female,North\n"
      "B,Bob,Male,\n";
  const auto roster = io::parse_candidates_csv(text);
  ASSERT_EQ(roster.size(), 2u);
  EXPECT_EQ(roster[0].display_name, "Doe, Jane");
  EXPECT_EQ(*roster[0].attribute("region"), "North");
  EXPECT_EQ(roster[1].attribute("region"), nullptr);
  EXPECT_EQ(io::parse_candidates_csv(io::write_candidates_csv(roster)), roster);
}

TEST(Candidates, BadHeaderOrWidth) {
  EXPECT_THROW(io::parse_candidates_csv("id,name\nA,B\n"), Error);
  EXPECT_THROW(io::parse_candidates_csv("candidate_id,display_name,g\nA,B\n"), Error);
}

TEST(Ballots, ParseSelectionsAndReceipt) {
  const auto file = io::parse_ballots_csv(
      "ballot_id,selections,receipt\n"
      "b1,c2|c1,\n"
      "b2,,abc\n"
      "b3, c1 | c1 ,\n");
  ASSERT_EQ(file.ballots.size(), 3u);
  EXPECT_EQ(file.ballots[0].selections, (std::set<CandidateId>{"c1", "c2"}));
  EXPECT_FALSE(file.ballots[0].receipt.has_value());
  EXPECT_TRUE(file.ballots[1].selections.empty());
  EXPECT_EQ(file.ballots[1].receipt.value_or(""), "abc");
  EXPECT_EQ(file.ballots[2].selections, (std::set<CandidateId>{"c1"}));
  ASSERT_EQ(file.warnings.size(), 1u);
  EXPECT_NE(file.warnings[0].find("b3"), std::string::npos);
}

TEST(Ballots, HeaderMustBeExact) {
  EXPECT_THROW(io::parse_ballots_csv("ballot_id,selections\nb1,c1\n"), Error);
  EXPECT_THROW(io::parse_ballots_csv("ballot_id,selections,receipt,extra\nb1,c1,,x\n"), Error);
  EXPECT_THROW(io::parse_ballots_csv("ballot_id,selections,receipt\nb1,c1,,x\n"), Error);
}

TEST(Ballots, WriteThenParse) {
  std::vector<Ballot> ballots = {{"b1", {"c2", "c1"}, std::nullopt}, {"b,2", {}, std::string(64, 'a')}};
  EXPECT_EQ(io::parse_ballots_csv(io::write_ballots_csv(ballots)).ballots, ballots);
}

TEST(Tally, RoundTripOrdersByVotes) {
  TallyResult t;
  t.votes = {{"a", 3}, {"b", 7}, {"c", 3}};
  t.total_votes_cast = 13;
  const std::string csv = io::write_tally_csv(t);
  EXPECT_EQ(csv, "candidate_id,votes\nb,7\na,3\nc,3\n");
  const TallyResult back = io::parse_tally_csv(csv);
  EXPECT_EQ(back.votes, t.votes);
  EXPECT_EQ(back.total_votes_cast, 13);
}

TEST(Tally, RejectsBadCounts) {
  EXPECT_THROW(io::parse_tally_csv("candidate_id,votes\na,-1\n"), Error);
  EXPECT_THROW(io::parse_tally_csv("candidate_id,votes\na,x\n"), Error);
  EXPECT_THROW(io::parse_tally_csv("candidate_id,votes\na,1\na,2\n"), Error);
}

TEST(Files, MissingFileIsIoError) {
  try {
    io::read_file("/nonexistent/reppact/file.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Files, WriteThenRead) {
  const auto path = std::filesystem::temp_directory_path() / "reppact_io_test.txt";
  io::write_file(path, "hello\n");
  EXPECT_EQ(io::read_file(path), "hello\n");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace reppact
