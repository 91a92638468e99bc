#include "reppact/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace reppact {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IO_ERROR";
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kInvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::kShareSumExceedsOne: return "SHARE_SUM_EXCEEDS_ONE";
    case ErrorCode::kUnknownQuestionId: return "UNKNOWN_QUESTION_ID";
    case ErrorCode::kUnknownCandidate: return "UNKNOWN_CANDIDATE";
    case ErrorCode::kRosterTooLarge: return "ROSTER_TOO_LARGE";
    case ErrorCode::kNodeBudgetExceeded: return "NODE_BUDGET_EXCEEDED";
    case ErrorCode::kUnsatisfiableEvenEmpty: return "UNSATISFIABLE_EVEN_EMPTY";
    case ErrorCode::kInfeasible: return "INFEASIBLE";
  }
  return "UNKNOWN";
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kExact: return "EXACT";
    case BoundKind::kAtLeast: return "AT_LEAST";
    case BoundKind::kAtMost: return "AT_MOST";
  }
  return "AT_LEAST";
}

BoundKind parse_bound_kind(std::string_view text) {
  if (text == "EXACT") return BoundKind::kExact;
  if (text == "AT_LEAST") return BoundKind::kAtLeast;
  if (text == "AT_MOST") return BoundKind::kAtMost;
  throw Error(ErrorCode::kParse, "unknown bound kind '" + std::string(text) + "'");
}

std::string Bound::symbol() const {
  switch (kind) {
    case BoundKind::kExact: return "=" + std::to_string(count);
    case BoundKind::kAtLeast: return ">=" + std::to_string(count);
    case BoundKind::kAtMost: return "<=" + std::to_string(count);
  }
  return {};
}

const CategoryBound* CriterionSpec::find(std::string_view category) const {
  for (const auto& c : categories) {
    if (c.category == category) return &c;
  }
  return nullptr;
}

int CriterionSpec::lower_sum() const {
  int sum = 0;
  for (const auto& c : categories) sum += c.bound.lower();
  return sum;
}

const std::string* CandidateRecord::attribute(std::string_view name) const {
  auto it = attributes.find(std::string(name));
  return it == attributes.end() ? nullptr : &it->second;
}

std::string_view to_string(TiePolicy policy) {
  return policy == TiePolicy::kReportAll ? "REPORT_ALL" : "LEXICOGRAPHIC";
}

std::string_view to_string(RelaxationPolicy policy) {
  return policy == RelaxationPolicy::kFail ? "FAIL" : "FREE_SEATS_THEN_DROP";
}

TiePolicy parse_tie_policy(std::string_view text) {
  if (text == "REPORT_ALL" || text == "report-all") return TiePolicy::kReportAll;
  if (text == "LEXICOGRAPHIC" || text == "lex") return TiePolicy::kLexicographic;
  throw Error(ErrorCode::kParse, "unknown tie policy '" + std::string(text) + "'");
}

RelaxationPolicy parse_relaxation_policy(std::string_view text) {
  if (text == "FAIL" || text == "fail") return RelaxationPolicy::kFail;
  if (text == "FREE_SEATS_THEN_DROP" || text == "free-seats-then-drop") {
    return RelaxationPolicy::kFreeSeatsThenDrop;
  }
  throw Error(ErrorCode::kParse, "unknown relaxation policy '" + std::string(text) + "'");
}

const CandidateRecord* ElectionConfig::find_candidate(std::string_view id) const {
  for (const auto& c : roster) {
    if (c.candidate_id == id) return &c;
  }
  return nullptr;
}

const CriterionSpec* ElectionConfig::find_criterion(std::string_view attribute) const {
  for (const auto& c : criteria) {
    if (c.attribute == attribute) return &c;
  }
  return nullptr;
}

std::int64_t TallyResult::votes_for(std::string_view id) const {
  auto it = votes.find(std::string(id));
  return it == votes.end() ? 0 : it->second;
}

std::vector<Violation> validate_config(const ElectionConfig& config) {
  std::vector<Violation> out;
  auto add = [&out](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };

  if (config.seats <= 0) add("NONPOSITIVE_SEATS", "seats must be positive");
  if (config.max_selections <= 0) {
    add("NONPOSITIVE_MAX_SELECTIONS", "max_selections must be positive");
  }

  std::set<std::string> ids;
  for (const auto& c : config.roster) {
    if (c.candidate_id.empty()) add("EMPTY_CANDIDATE_ID", "candidate with empty id");
    if (!ids.insert(c.candidate_id).second) {
      add("DUPLICATE_CANDIDATE_ID", "candidate id '" + c.candidate_id + "' appears more than once");
    }
  }

  std::set<std::string> attributes;
  std::set<int> ranks;
  for (const auto& crit : config.criteria) {
    const std::string& attr = crit.attribute;
    if (!attributes.insert(attr).second) {
      add("DUPLICATE_CRITERION", "criterion '" + attr + "' declared more than once");
    }
    if (!ranks.insert(crit.preference_rank).second) {
      add("DUPLICATE_PREFERENCE_RANK",
          "preference_rank " + std::to_string(crit.preference_rank) + " used by more than one criterion");
    }
    if (crit.categories.empty()) {
      add("EMPTY_CRITERION", "criterion '" + attr + "' has no categories");
      continue;
    }
    std::set<std::string> names;
    bool all_exact = true;
    int exact_sum = 0;
    for (const auto& cat : crit.categories) {
      if (!names.insert(cat.category).second) {
        add("DUPLICATE_CATEGORY", "category '" + cat.category + "' repeated in criterion '" + attr + "'");
      }
      if (cat.bound.count < 0) {
        add("NEGATIVE_BOUND", "negative bound for '" + attr + "/" + cat.category + "'");
      }
      if (cat.bound.kind == BoundKind::kExact) {
        exact_sum += cat.bound.count;
      } else {
        all_exact = false;
      }
    }
    if (all_exact && exact_sum != config.seats) {
      add("EXACT_SUM_MISMATCH", "criterion '" + attr + "': exact bounds sum to " + std::to_string(exact_sum) +
                                    " but seats = " + std::to_string(config.seats));
    }
    if (crit.lower_sum() > config.seats) {
      add("LOWER_BOUND_SUM_EXCEEDS_K", "criterion '" + attr + "': lower bounds sum to " +
                                           std::to_string(crit.lower_sum()) + " > seats " +
                                           std::to_string(config.seats));
    }
  }

  for (const auto& cand : config.roster) {
    for (const auto& crit : config.criteria) {
      const std::string* value = cand.attribute(crit.attribute);
      if (value == nullptr || value->empty()) {
        add("UNCATEGORIZED_CANDIDATE",
            "candidate '" + cand.candidate_id + "' has no '" + crit.attribute + "' category");
      } else if (crit.find(*value) == nullptr) {
        add("UNKNOWN_CATEGORY", "candidate '" + cand.candidate_id + "' has undeclared " + crit.attribute +
                                    " category '" + *value + "'");
      }
    }
  }
  return out;
}

std::vector<CategoryBound> bounds_from_percentages(int seats, std::span<const ShareTarget> shares) {
  // Tolerance absorbs binary representation error (10 * 0.3 = 3.0000000000000004).
  constexpr double kSlack = 1e-9;
  double sum = 0.0;
  for (const auto& s : shares) {
    if (!(s.fraction >= 0.0 && s.fraction <= 1.0)) {
      throw Error(ErrorCode::kParse, "share for '" + s.category + "' outside [0,1]");
    }
    sum += s.fraction;
  }
  if (sum > 1.0 + kSlack) {
    throw Error(ErrorCode::kShareSumExceedsOne, "shares sum to more than 1");
  }
  std::vector<CategoryBound> out;
  out.reserve(shares.size());
  for (const auto& s : shares) {
    const int n = static_cast<int>(std::ceil(seats * s.fraction - kSlack));
    out.push_back({s.category, Bound::at_least(std::max(n, 0))});
  }
  return out;
}

std::int64_t tenths_of_percent(std::int64_t count, std::int64_t total) {
  if (total <= 0) return 0;
  return (2 * count * 1000 + total) / (2 * total);
}

std::string format_tenths(std::int64_t tenths) {
  const bool negative = tenths < 0;
  const std::int64_t v = negative ? -tenths : tenths;
  return (negative ? "-" : "") + std::to_string(v / 10) + "." + std::to_string(v % 10);
}

std::vector<CandidateId> sorted_ids(std::vector<CandidateId> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace reppact
