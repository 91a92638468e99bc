#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reppact/model.hpp"
#include "reppact/solver.hpp"

namespace reppact {

struct DeficitRow {
  std::string attribute;
  std::string category;
  Bound target;
  int reached = 0;
  // reached - target for AT_LEAST and EXACT (signed deviation); target -
  // reached for AT_MOST, i.e. remaining headroom.
  int difference = 0;
  bool met = true;  // what the constraint checker would say

  friend bool operator==(const DeficitRow&, const DeficitRow&) = default;
};

struct DeficitReport {
  std::vector<DeficitRow> rows;  // criteria order, then category order

  std::vector<DeficitRow> unmet() const;
  const DeficitRow* find(std::string_view attribute, std::string_view category) const;
};

// Per-category status of a (possibly partial) committee against the
// criteria targets. Throws kUnknownCandidate for ids outside the roster.
DeficitReport deficit_report(std::span<const CandidateId> committee, const ElectionConfig& config);

struct PriceReport {
  std::int64_t total_votes_cast = 0;
  std::int64_t unconstrained_objective = 0;
  std::int64_t constrained_objective = 0;
  std::int64_t price = 0;
  std::int64_t lost_votes_unconstrained = 0;
  std::int64_t lost_votes_constrained = 0;
  // Shares of votes cast in tenths of a percent, rounded half up. The price
  // share is the gap between the two published lost-vote shares, so the
  // three printed figures always add up.
  std::int64_t lost_unconstrained_pct_tenths = 0;
  std::int64_t lost_constrained_pct_tenths = 0;
  std::int64_t price_pct_tenths = 0;

  friend bool operator==(const PriceReport&, const PriceReport&) = default;
};

PriceReport price_from_objectives(std::int64_t unconstrained, std::int64_t constrained, std::int64_t total_votes_cast);

// Solves with and without criteria. Throws kInfeasible when the constrained
// instance has no committee (after relaxation, if the config asks for it).
PriceReport price_report(const TallyResult& tally, const ElectionConfig& config, const SolveOptions& options = {});

enum class DisplacementReason { kForced, kDeficit };

std::string_view to_string(DisplacementReason reason);

struct DeficitCitation {
  std::string attribute;
  std::string category;
  int difference = 0;

  friend bool operator==(const DeficitCitation&, const DeficitCitation&) = default;
};

struct DisplacementRecord {
  CandidateId candidate_id;
  std::int64_t votes = 0;
  DisplacementReason reason = DisplacementReason::kDeficit;
  std::vector<CandidateId> outranked;  // unelected candidates with more votes
  // Forced: the scarce categories as seen from the elected top candidates.
  // Deficit: the candidate's categories still short once forced members join.
  std::vector<DeficitCitation> categories;

  friend bool operator==(const DisplacementRecord&, const DisplacementRecord&) = default;
};

// Layman explanation of why elected candidates below the vote cut line got
// in. Heuristic only: it can fail to explain some optima; the solver's
// result is the authoritative answer.
struct DisplacementReport {
  std::int64_t cut_line_votes = 0;           // k-th highest vote count
  std::vector<CandidateId> top_elected;      // elected at or above the cut line
  std::vector<CandidateId> partial_committee;  // top_elected plus forced
  DeficitReport partial_deficits;
  std::vector<DisplacementRecord> records;  // votes descending
};

DisplacementReport displacement_report(const SolveOutcome& outcome, const TallyResult& tally,
                                       const ElectionConfig& config);

struct ElectionReport {
  ElectionConfig config;
  TallyResult tally;
  SolveOutcome outcome;
  std::optional<PriceReport> price;  // absent when infeasible
  DeficitReport committee_status;
  DisplacementReport displacement;
};

ElectionReport build_report(const TallyResult& tally, const ElectionConfig& config, const SolveOutcome& outcome,
                            const SolveOptions& options = {});

enum class ReportFormat { kText, kJson, kMarkdown };

ReportFormat parse_report_format(std::string_view text);

std::string render_report(const ElectionReport& report, ReportFormat format);

}  // namespace reppact
