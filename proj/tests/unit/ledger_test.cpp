#include <gtest/gtest.h>

#include <random>

#include "reference.hpp"
#include "reppact/io.hpp"
#include "reppact/ledger.hpp"
#include "sha256_ref.hpp"

namespace reppact {
namespace {

const std::string kZeroSalt(32, '0');

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(reftest::sha256_reference("abc"), sha256_hex("abc"));
  EXPECT_EQ(reftest::sha256_reference(""), sha256_hex(""));
}

TEST(Sha256, AgreesWithReferenceAcrossBlockBoundaries) {
  std::mt19937_64 rng(5);
  for (std::size_t len = 0; len < 300; ++len) {
    std::string s(len, '\0');
    for (auto& ch : s) ch = static_cast<char>(rng() & 0xff);
    ASSERT_EQ(sha256_hex(s), reftest::sha256_reference(s)) << len;
  }
}

TEST(Salt, HexRoundTripAndErrors) {
  SaltSource seeded(42);
  const Salt s = seeded.next();
  EXPECT_EQ(parse_salt(to_hex(s)), s);
  EXPECT_EQ(to_hex(parse_salt(kZeroSalt)), kZeroSalt);
  EXPECT_THROW(parse_salt(std::string(33, '0')), Error);
  EXPECT_THROW(parse_salt(std::string(32, 'g')), Error);
  EXPECT_EQ(to_hex(parse_salt(std::string(32, 'A'))), std::string(32, 'a'));
}

TEST(Salt, SeededSourceIsReproducibleAndEntropyIsNot) {
  SaltSource a(7);
  SaltSource b(7);
  EXPECT_EQ(a.next(), b.next());
  SaltSource r1;
  SaltSource r2;
  EXPECT_NE(r1.next(), r2.next());
}

TEST(Receipt, CanonicalFormAndFrozenDigest) {
  const Ballot b{"b1", {"c2", "c1"}, std::nullopt};
  EXPECT_EQ(canonical_ballot(b, kZeroSalt), "b1\nc1|c2\n" + kZeroSalt);
  const Receipt r = make_receipt(b, parse_salt(kZeroSalt));
  // Computed once with coreutils sha256sum over the canonical bytes.
  EXPECT_EQ(r.digest, "db838bd76b0c0dad766e1dd692ce19fedf9beb05a43bb34ec1dc3b7d0cf3bf56");
  EXPECT_EQ(r.digest, reftest::sha256_reference(canonical_ballot(b, kZeroSalt)));
  EXPECT_EQ(r.salt, kZeroSalt);
}

TEST(Receipt, EmptySelectionStillHashes) {
  const Ballot b{"blank", {}, std::nullopt};
  EXPECT_EQ(make_receipt(b, parse_salt(kZeroSalt)).digest,
            reftest::sha256_reference("blank\n\n" + kZeroSalt));
}

TEST(Receipt, MatchAndNoMatch) {
  SaltSource salts(1);
  const std::vector<Ballot> raw = {{"v1", {"a", "b"}, std::nullopt}, {"v2", {"c"}, std::nullopt}};
  Publication pub = publish_ballots(raw, salts);
  ASSERT_EQ(pub.receipts.size(), 2u);
  for (const auto& r : pub.receipts) EXPECT_EQ(verify_receipt(r, pub.ballots), ReceiptCheck::kMatch);

  Receipt wrong_salt = pub.receipts[0];
  wrong_salt.salt[0] = wrong_salt.salt[0] == '0' ? '1' : '0';
  EXPECT_EQ(verify_receipt(wrong_salt, pub.ballots), ReceiptCheck::kNoMatch);

  auto altered = pub.ballots;
  altered[0].selections = {"a"};
  EXPECT_EQ(verify_receipt(pub.receipts[0], altered), ReceiptCheck::kNoMatch);

  auto dropped = pub.ballots;
  dropped.erase(dropped.begin());
  EXPECT_EQ(verify_receipt(pub.receipts[0], dropped), ReceiptCheck::kNoMatch);
}

TEST(Receipt, PublishedFileCarriesDigestNotSalt) {
  SaltSource salts(3);
  const std::vector<Ballot> raw = {{"v1", {"a"}, std::nullopt}};
  const Publication pub = publish_ballots(raw, salts);
  const std::string csv = io::write_ballots_csv(pub.ballots);
  EXPECT_NE(csv.find(pub.receipts[0].digest), std::string::npos);
  EXPECT_EQ(csv.find(pub.receipts[0].salt), std::string::npos);
  EXPECT_EQ(parse_receipts_csv(write_receipts_csv(pub.receipts)), pub.receipts);
  EXPECT_THROW(parse_receipts_csv("id,salt\n"), Error);
}

TEST(Receipt, MontheyFixtureDigestsAgreeWithReference) {
  const auto dir = reftest::data_dir() / "monthey";
  const auto receipts = parse_receipts_csv(io::read_file(dir / "receipts.csv"));
  const auto published = io::parse_ballots_csv(io::read_file(dir / "ballots.csv")).ballots;
  ASSERT_EQ(receipts.size(), published.size());
  for (std::size_t i = 0; i < receipts.size(); ++i) {
    EXPECT_EQ(receipts[i].ballot_id, published[i].ballot_id);
    EXPECT_EQ(reftest::sha256_reference(canonical_ballot(published[i], receipts[i].salt)), receipts[i].digest);
    EXPECT_EQ(published[i].receipt.value_or(""), receipts[i].digest);
    EXPECT_EQ(verify_receipt(receipts[i], published), ReceiptCheck::kMatch);
  }
}

class CountCheck : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto dir = reftest::data_dir() / "monthey";
    config_ = reftest::monthey_config();
    ballots_ = io::parse_ballots_csv(io::read_file(dir / "ballots.csv")).ballots;
    claim_ = published_outcome_from_json(parse_json(io::read_file(dir / "outcome.json")));
  }
  ElectionConfig config_;
  std::vector<Ballot> ballots_;
  PublishedOutcome claim_;
};

TEST_F(CountCheck, FixtureConfirms) {
  const CountVerification v = verify_count(ballots_, config_, claim_);
  EXPECT_TRUE(v.confirmed);
  EXPECT_TRUE(v.diffs.empty());
  EXPECT_EQ(claim_.ledger_digest, ledger_digest(ballots_));
}

TEST_F(CountCheck, ChangedCommitteeIsItemized) {
  claim_.outcome.committee.back() = "Y";
  claim_.outcome.objective = 1442;
  const CountVerification v = verify_count(ballots_, config_, claim_);
  EXPECT_FALSE(v.confirmed);
  std::set<std::string> fields;
  for (const auto& d : v.diffs) fields.insert(d.field);
  EXPECT_TRUE(fields.count("committee"));
  EXPECT_TRUE(fields.count("objective"));
  EXPECT_FALSE(fields.count("ledger_digest"));
}

TEST_F(CountCheck, SwappedVoteIsCaught) {
  ballots_[0].selections.erase(ballots_[0].selections.begin());
  ballots_[0].selections.insert("AB");
  const CountVerification v = verify_count(ballots_, config_, claim_);
  EXPECT_FALSE(v.confirmed);
  std::set<std::string> fields;
  for (const auto& d : v.diffs) fields.insert(d.field);
  EXPECT_TRUE(fields.count("ledger_digest"));
  EXPECT_TRUE(fields.count("votes.AB"));
}

TEST_F(CountCheck, ReorderedListChangesCommitment) {
  std::swap(ballots_[0], ballots_[1]);
  EXPECT_FALSE(verify_count(ballots_, config_, claim_).confirmed);
}

TEST_F(CountCheck, ClaimWithoutTallyOrDigestChecksOutcomeOnly) {
  claim_.tally.reset();
  claim_.ledger_digest.reset();
  ballots_[0].receipt = std::string(64, 'f');
  EXPECT_TRUE(verify_count(ballots_, config_, claim_).confirmed);
}

}  // namespace
}  // namespace reppact
