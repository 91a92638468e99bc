#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "reppact/model.hpp"
#include "reppact/solver.hpp"

namespace reppact {

// Receipts let a voter find their ballot in the published list without the
// list itself revealing who cast it. The salt stays with the voter; only
// the digest is published next to the ballot.

using Salt = std::array<std::uint8_t, 16>;

std::string to_hex(std::span<const std::uint8_t> bytes);
Salt parse_salt(std::string_view hex);  // exactly 32 hex chars

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// Salts from the OS entropy source, or a seeded generator for reproducible runs.
class SaltSource {
 public:
  SaltSource();
  explicit SaltSource(std::uint64_t seed);

  Salt next();

 private:
  std::optional<std::mt19937_64> seeded_;
};

struct Receipt {
  std::string ballot_id;
  std::string salt;    // 32 hex chars
  std::string digest;  // 64 hex chars

  friend bool operator==(const Receipt&, const Receipt&) = default;
};

// "<ballot_id>\n<sorted ids joined by |>\n<salt hex>", UTF-8, no BOM.
std::string canonical_ballot(const Ballot& ballot, std::string_view salt_hex);

Receipt make_receipt(const Ballot& ballot, const Salt& salt);

enum class ReceiptCheck { kMatch, kNoMatch };

// kMatch iff some published ballot re-digests to the receipt's digest under
// the receipt's salt.
ReceiptCheck verify_receipt(const Receipt& receipt, std::span<const Ballot> published);

struct Publication {
  std::vector<Ballot> ballots;    // receipt column holds the digest
  std::vector<Receipt> receipts;  // private, one per ballot
};

Publication publish_ballots(std::span<const Ballot> ballots, SaltSource& salts);

// ballot_id,salt,digest
std::vector<Receipt> parse_receipts_csv(std::string_view text);
std::string write_receipts_csv(std::span<const Receipt> receipts);

// Commitment to the whole published list, in file order: SHA-256 over
// "<ballot_id>,<sorted selections>,<digest>\n" per ballot.
std::string ledger_digest(std::span<const Ballot> published);

// What a count publication asserts: the solve outcome, plus (optionally)
// the tally it came from and the ledger commitment of its ballots.
struct PublishedOutcome {
  std::string election_id;
  SolveOutcome outcome;
  std::optional<TallyResult> tally;
  std::optional<std::string> ledger_digest;
};

struct CountDiff {
  std::string field;
  std::string published;
  std::string recomputed;

  friend bool operator==(const CountDiff&, const CountDiff&) = default;
};

struct CountVerification {
  bool confirmed = false;
  std::vector<CountDiff> diffs;
};

// Re-tallies the published ballots, re-solves under the config's policies,
// and itemizes every disagreement with the published outcome.
CountVerification verify_count(std::span<const Ballot> published, const ElectionConfig& config,
                               const PublishedOutcome& claim, const SolveOptions& options = {});

}  // namespace reppact
