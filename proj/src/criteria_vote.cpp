#include "reppact/criteria_vote.hpp"

#include <map>
#include <set>

#include "reppact/io.hpp"

namespace reppact {

std::string_view to_string(Answer answer) {
  switch (answer) {
    case Answer::kYes: return "YES";
    case Answer::kNo: return "NO";
    case Answer::kBlank: return "BLANK";
  }
  return "BLANK";
}

Answer parse_answer(std::string_view text) {
  if (text == "YES") return Answer::kYes;
  if (text == "NO") return Answer::kNo;
  if (text == "BLANK") return Answer::kBlank;
  throw Error(ErrorCode::kParse, "answer must be YES, NO or BLANK, got '" + std::string(text) + "'");
}

CriteriaVoteResult tally_criteria_vote(std::span<const CriteriaQuestion> questions,
                                       std::span<const CriteriaAnswer> answers) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    index.emplace(questions[i].question_id, i);
  }

  // ballot -> question -> answer; first answer wins, repeats are rejected.
  std::map<std::string, std::map<std::size_t, Answer>> ballots;
  CriteriaVoteResult result;
  for (const auto& a : answers) {
    auto q = index.find(a.question_id);
    if (q == index.end()) {
      throw Error(ErrorCode::kUnknownQuestionId, "unknown question_id '" + a.question_id + "'");
    }
    auto& per_ballot = ballots[a.ballot_id];
    if (!per_ballot.emplace(q->second, a.answer).second) {
      result.rejected.push_back({a.ballot_id, "DUPLICATE_BALLOT: second answer to '" + a.question_id + "'"});
    }
  }

  result.participants = static_cast<std::int64_t>(ballots.size());
  result.questions.reserve(questions.size());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    QuestionTally t;
    t.question_id = questions[i].question_id;
    t.criterion = questions[i].criterion;
    for (const auto& [ballot, per_ballot] : ballots) {
      auto it = per_ballot.find(i);
      const Answer ans = it == per_ballot.end() ? Answer::kBlank : it->second;
      switch (ans) {
        case Answer::kYes: ++t.yes_count; break;
        case Answer::kNo: ++t.no_count; break;
        case Answer::kBlank: ++t.blank_count; break;
      }
    }
    t.yes_pct_tenths = tenths_of_percent(t.yes_count, result.participants);
    t.no_pct_tenths = tenths_of_percent(t.no_count, result.participants);
    t.blank_pct_tenths = tenths_of_percent(t.blank_count, result.participants);
    t.accepted = t.yes_count > t.no_count;
    result.questions.push_back(std::move(t));
  }
  return result;
}

ElectionConfig build_election_config(ElectionConfig base, const CriteriaVoteResult& result) {
  base.criteria.clear();
  for (const auto& q : result.questions) {
    if (q.accepted) base.criteria.push_back(q.criterion);
  }
  return base;
}

std::vector<CriteriaAnswer> parse_criteria_ballots_csv(std::string_view text) {
  const auto rows = io::parse_csv(text);
  if (rows.empty() || rows[0] != std::vector<std::string>{"ballot_id", "question_id", "answer"}) {
    throw Error(ErrorCode::kParse, "phase-1 ballots CSV: header must be exactly 'ballot_id,question_id,answer'");
  }
  std::vector<CriteriaAnswer> out;
  out.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 3) {
      throw Error(ErrorCode::kParse, "phase-1 ballots CSV: record " + std::to_string(r) + " needs 3 fields");
    }
    out.push_back({rows[r][0], rows[r][1], parse_answer(rows[r][2])});
  }
  return out;
}

}  // namespace reppact
