#include "reppact/ledger.hpp"

#include <openssl/evp.h>

#include <memory>

#include "reppact/io.hpp"
#include "reppact/tally.hpp"

namespace reppact {

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Salt parse_salt(std::string_view hex) {
  auto nibble = [&](char ch) -> int {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    throw Error(ErrorCode::kParse, "salt is not hex: '" + std::string(hex) + "'");
  };
  if (hex.size() != 32) throw Error(ErrorCode::kParse, "salt must be 32 hex characters");
  Salt salt{};
  for (std::size_t i = 0; i < salt.size(); ++i) {
    salt[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return salt;
}

std::string sha256_hex(std::string_view data) {
  const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<std::uint8_t, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  return to_hex({md.data(), len});
}

SaltSource::SaltSource() = default;

SaltSource::SaltSource(std::uint64_t seed) : seeded_(std::mt19937_64(seed)) {}

Salt SaltSource::next() {
  Salt salt{};
  if (seeded_) {
    for (std::size_t i = 0; i < salt.size(); i += 8) {
      std::uint64_t word = (*seeded_)();
      for (std::size_t j = 0; j < 8; ++j) salt[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
    }
    return salt;
  }
  std::random_device entropy;
  for (std::size_t i = 0; i < salt.size(); i += 4) {
    const std::uint32_t word = entropy();
    for (std::size_t j = 0; j < 4; ++j) salt[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
  }
  return salt;
}

namespace {

std::string joined_selections(const Ballot& ballot) {
  std::string out;
  for (const auto& id : ballot.selections) out += (out.empty() ? "" : "|") + id;  // std::set is sorted
  return out;
}

}  // namespace

std::string canonical_ballot(const Ballot& ballot, std::string_view salt_hex) {
  return ballot.ballot_id + "\n" + joined_selections(ballot) + "\n" + std::string(salt_hex);
}

Receipt make_receipt(const Ballot& ballot, const Salt& salt) {
  const std::string salt_hex = to_hex(salt);
  return {ballot.ballot_id, salt_hex, sha256_hex(canonical_ballot(ballot, salt_hex))};
}

ReceiptCheck verify_receipt(const Receipt& receipt, std::span<const Ballot> published) {
  for (const auto& b : published) {
    if (sha256_hex(canonical_ballot(b, receipt.salt)) == receipt.digest) return ReceiptCheck::kMatch;
  }
  return ReceiptCheck::kNoMatch;
}

Publication publish_ballots(std::span<const Ballot> ballots, SaltSource& salts) {
  Publication pub;
  for (const auto& b : ballots) {
    Receipt r = make_receipt(b, salts.next());
    Ballot out = b;
    out.receipt = r.digest;
    pub.ballots.push_back(std::move(out));
    pub.receipts.push_back(std::move(r));
  }
  return pub;
}

std::vector<Receipt> parse_receipts_csv(std::string_view text) {
  const auto rows = io::parse_csv(text);
  if (rows.empty() || rows[0] != std::vector<std::string>{"ballot_id", "salt", "digest"}) {
    throw Error(ErrorCode::kParse, "receipts CSV: header must be exactly 'ballot_id,salt,digest'");
  }
  std::vector<Receipt> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 3) throw Error(ErrorCode::kParse, "receipts CSV: record " + std::to_string(r) + " needs 3 fields");
    out.push_back({rows[r][0], rows[r][1], rows[r][2]});
  }
  return out;
}

std::string write_receipts_csv(std::span<const Receipt> receipts) {
  std::string out = "ballot_id,salt,digest\n";
  for (const auto& r : receipts) out += io::csv_row({r.ballot_id, r.salt, r.digest});
  return out;
}

std::string ledger_digest(std::span<const Ballot> published) {
  std::string data;
  for (const auto& b : published) {
    data += b.ballot_id + "," + joined_selections(b) + "," + b.receipt.value_or("") + "\n";
  }
  return sha256_hex(data);
}

namespace {

std::string join_ids(const std::vector<CandidateId>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ",") + id;
  return out;
}

}  // namespace

CountVerification verify_count(std::span<const Ballot> published, const ElectionConfig& config,
                               const PublishedOutcome& claim, const SolveOptions& options) {
  CountVerification v;
  auto diff = [&](std::string field, std::string published_value, std::string recomputed) {
    if (published_value != recomputed) {
      v.diffs.push_back({std::move(field), std::move(published_value), std::move(recomputed)});
    }
  };

  if (claim.ledger_digest) diff("ledger_digest", *claim.ledger_digest, ledger_digest(published));

  const TallyResult tally = count_votes(published, config);
  if (claim.tally) {
    std::set<CandidateId> ids;
    for (const auto& [id, n] : claim.tally->votes) ids.insert(id);
    for (const auto& [id, n] : tally.votes) ids.insert(id);
    for (const auto& id : ids) {
      diff("votes." + id, std::to_string(claim.tally->votes_for(id)), std::to_string(tally.votes_for(id)));
    }
    diff("total_votes_cast", std::to_string(claim.tally->total_votes_cast), std::to_string(tally.total_votes_cast));
  }

  SolveOptions quick = options;
  quick.compute_forced = false;
  const SolveOutcome recount = solve(tally, config, quick);
  diff("status", std::string(to_string(claim.outcome.status)), std::string(to_string(recount.status)));
  diff("objective", std::to_string(claim.outcome.objective), std::to_string(recount.objective));
  diff("committee", join_ids(sorted_ids(claim.outcome.committee)), join_ids(recount.committee));

  v.confirmed = v.diffs.empty();
  return v;
}

}  // namespace reppact
