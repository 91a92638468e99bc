#pragma once

#include <vector>

#include "json.hpp"
#include "reppact/criteria_vote.hpp"
#include "reppact/explain.hpp"
#include "reppact/ledger.hpp"
#include "reppact/model.hpp"
#include "reppact/solver.hpp"

namespace reppact {

// JSON documents use the snake_case field names of the C++ types. Output
// keys keep declaration order so files diff cleanly.
using Json = nlohmann::ordered_json;

// Throws kParse with the offending field on malformed input.
Json parse_json(std::string_view text);

Json to_json(const Bound& bound);
Json to_json(const CandidateRecord& candidate);
Json to_json(const CriterionSpec& criterion);
Json to_json(const ElectionConfig& config);
Json to_json(const TallyResult& tally);
Json to_json(const RelaxationRecord& record);
Json to_json(const SolveOutcome& outcome);
Json to_json(const PublishedOutcome& published);
Json to_json(const FeasibilityReport& report);
Json to_json(const DeficitReport& report);
Json to_json(const PriceReport& report);
Json to_json(const DisplacementReport& report);
Json to_json(const ElectionReport& report);
Json to_json(const CriteriaVoteResult& result);
Json to_json(const std::vector<Violation>& violations);

Bound bound_from_json(const Json& j);
CandidateRecord candidate_from_json(const Json& j);
CriterionSpec criterion_from_json(const Json& j);
ElectionConfig config_from_json(const Json& j);
TallyResult tally_from_json(const Json& j);
SolveOutcome outcome_from_json(const Json& j);
PublishedOutcome published_outcome_from_json(const Json& j);
// Either {"questions": [...]} or a bare array.
std::vector<CriteriaQuestion> questions_from_json(const Json& j);

}  // namespace reppact
