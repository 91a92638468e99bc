#pragma once

#include <span>
#include <string>
#include <vector>

#include "reppact/model.hpp"

namespace reppact {

// Phase 1: voters accept or reject each proposed criterion with a yes/no/blank answer.

struct CriteriaQuestion {
  std::string question_id;
  CriterionSpec criterion;
  std::string text;
};

enum class Answer { kYes, kNo, kBlank };

std::string_view to_string(Answer answer);
Answer parse_answer(std::string_view text);

struct CriteriaAnswer {
  std::string ballot_id;
  std::string question_id;
  Answer answer = Answer::kBlank;
};

struct QuestionTally {
  std::string question_id;
  CriterionSpec criterion;
  std::int64_t yes_count = 0;
  std::int64_t no_count = 0;
  std::int64_t blank_count = 0;
  // Shares of participants in tenths of a percent, rounded half up.
  std::int64_t yes_pct_tenths = 0;
  std::int64_t no_pct_tenths = 0;
  std::int64_t blank_pct_tenths = 0;
  bool accepted = false;
};

struct CriteriaVoteResult {
  std::vector<QuestionTally> questions;
  std::int64_t participants = 0;
  std::vector<RejectedBallot> rejected;  // DUPLICATE_BALLOT entries
};

// Counts every answer. A question is accepted when yes > no; blanks count
// toward turnout and percentages only. A ballot that skips a question is
// counted as BLANK for it. No quorum applies.
CriteriaVoteResult tally_criteria_vote(std::span<const CriteriaQuestion> questions,
                                       std::span<const CriteriaAnswer> answers);

// Copy of base whose criteria are exactly the accepted ones, in question order.
ElectionConfig build_election_config(ElectionConfig base, const CriteriaVoteResult& result);

// ballot_id,question_id,answer
std::vector<CriteriaAnswer> parse_criteria_ballots_csv(std::string_view text);

}  // namespace reppact
