#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reppact {

using CandidateId = std::string;

enum class ErrorCode {
  kIo,
  kParse,
  kInvalidConfig,
  kShareSumExceedsOne,
  kUnknownQuestionId,
  kUnknownCandidate,
  kRosterTooLarge,
  kNodeBudgetExceeded,
  kUnsatisfiableEvenEmpty,
  kInfeasible,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class BoundKind { kExact, kAtLeast, kAtMost };

std::string_view to_string(BoundKind kind);
BoundKind parse_bound_kind(std::string_view text);

// Seat-count constraint on one category of a criterion.
struct Bound {
  BoundKind kind = BoundKind::kAtLeast;
  int count = 0;

  static Bound exact(int n) { return {BoundKind::kExact, n}; }
  static Bound at_least(int n) { return {BoundKind::kAtLeast, n}; }
  static Bound at_most(int n) { return {BoundKind::kAtMost, n}; }

  int lower() const { return kind == BoundKind::kAtMost ? 0 : count; }
  // AT_LEAST has no upper limit of its own; the committee size caps it.
  int upper(int seats) const { return kind == BoundKind::kAtLeast ? seats : count; }
  bool admits(int reached) const {
    switch (kind) {
      case BoundKind::kExact: return reached == count;
      case BoundKind::kAtLeast: return reached >= count;
      case BoundKind::kAtMost: return reached <= count;
    }
    return false;
  }

  // "=8", ">=5", "<=3"
  std::string symbol() const;

  friend bool operator==(const Bound&, const Bound&) = default;
};

struct CategoryBound {
  std::string category;
  Bound bound;

  friend bool operator==(const CategoryBound&, const CategoryBound&) = default;
};

struct CriterionSpec {
  std::string attribute;
  std::vector<CategoryBound> categories;
  int preference_rank = 1;  // 1 = most preferred, relaxed last

  const CategoryBound* find(std::string_view category) const;
  int lower_sum() const;

  friend bool operator==(const CriterionSpec&, const CriterionSpec&) = default;
};

struct CandidateRecord {
  CandidateId candidate_id;
  std::string display_name;
  std::map<std::string, std::string> attributes;

  const std::string* attribute(std::string_view name) const;

  friend bool operator==(const CandidateRecord&, const CandidateRecord&) = default;
};

enum class TiePolicy { kReportAll, kLexicographic };
enum class RelaxationPolicy { kFail, kFreeSeatsThenDrop };

std::string_view to_string(TiePolicy policy);
std::string_view to_string(RelaxationPolicy policy);
TiePolicy parse_tie_policy(std::string_view text);
RelaxationPolicy parse_relaxation_policy(std::string_view text);

struct ElectionConfig {
  std::string election_id;
  int seats = 0;
  int max_selections = 0;
  std::vector<CandidateRecord> roster;
  std::vector<CriterionSpec> criteria;
  TiePolicy tie_policy = TiePolicy::kReportAll;
  RelaxationPolicy relaxation_policy = RelaxationPolicy::kFail;

  const CandidateRecord* find_candidate(std::string_view id) const;
  const CriterionSpec* find_criterion(std::string_view attribute) const;

  friend bool operator==(const ElectionConfig&, const ElectionConfig&) = default;
};

struct Ballot {
  std::string ballot_id;
  std::set<CandidateId> selections;
  std::optional<std::string> receipt;  // published digest, 64 lowercase hex

  friend bool operator==(const Ballot&, const Ballot&) = default;
};

struct RejectedBallot {
  std::string ballot_id;
  std::string reason;

  friend bool operator==(const RejectedBallot&, const RejectedBallot&) = default;
};

struct TallyResult {
  std::map<CandidateId, std::int64_t> votes;
  std::int64_t total_votes_cast = 0;
  std::int64_t ballots_counted = 0;
  std::vector<RejectedBallot> ballots_rejected;

  std::int64_t votes_for(std::string_view id) const;

  friend bool operator==(const TallyResult&, const TallyResult&) = default;
};

struct Violation {
  std::string code;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Reports every violated structural invariant; an empty list means valid.
// Infeasibility (too few candidates for a bound) is not a violation here.
std::vector<Violation> validate_config(const ElectionConfig& config);

struct ShareTarget {
  std::string category;
  double fraction = 0.0;
};

// AT_LEAST(ceil(seats * fraction)) per category, so the requested share is
// never undercut. Throws kShareSumExceedsOne.
std::vector<CategoryBound> bounds_from_percentages(int seats, std::span<const ShareTarget> shares);

// count/total as a percentage in tenths, rounded half up (347 -> 749 for 260).
std::int64_t tenths_of_percent(std::int64_t count, std::int64_t total);
std::string format_tenths(std::int64_t tenths);

// Sorted copy of the ids.
std::vector<CandidateId> sorted_ids(std::vector<CandidateId> ids);

}  // namespace reppact
