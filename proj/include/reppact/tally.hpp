#pragma once

#include <span>
#include <string>

#include "reppact/model.hpp"

namespace reppact {

// Phase 2: plurality-at-large counting. Each valid ballot adds one vote to
// every candidate it selects.

struct BallotCheck {
  bool valid = true;
  std::string reason;  // TOO_MANY_SELECTIONS, UNKNOWN_CANDIDATE

  static BallotCheck ok() { return {}; }
  static BallotCheck invalid(std::string why) { return {false, std::move(why)}; }
};

// An empty selection is a valid abstention.
BallotCheck validate_ballot(const Ballot& ballot, const ElectionConfig& config);

// Invalid ballots are rejected whole and listed with their reasons. A
// repeated ballot_id is rejected as DUPLICATE_BALLOT_ID; the first occurrence
// counts. Every roster candidate appears in votes, possibly with 0.
TallyResult count_votes(std::span<const Ballot> ballots, const ElectionConfig& config);

// Same result as count_votes, counted over `workers` contiguous slices.
TallyResult count_votes_parallel(std::span<const Ballot> ballots, const ElectionConfig& config, unsigned workers);

}  // namespace reppact
