#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reppact/model.hpp"

namespace reppact {

// Exact committee selection: pick `seats` candidates maximizing the summed
// votes subject to every category bound of every criterion.

enum class SolveStatus { kOptimal, kInfeasible, kRelaxedOptimal };

std::string_view to_string(SolveStatus status);
SolveStatus parse_solve_status(std::string_view text);

enum class RelaxationAction { kFreeSeats, kDropped };

std::string_view to_string(RelaxationAction action);

struct RelaxationRecord {
  RelaxationAction action = RelaxationAction::kFreeSeats;
  std::string attribute;
  std::string category;            // empty when a whole criterion is dropped
  std::optional<Bound> old_bound;  // set for kFreeSeats
  std::optional<Bound> new_bound;  // nullopt means DROPPED
  int freed_seats = 0;

  friend bool operator==(const RelaxationRecord&, const RelaxationRecord&) = default;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<CandidateId> committee;  // sorted; empty when infeasible
  std::int64_t objective = 0;
  // REPORT_ALL only: every optimum found (sorted, at most co_optimal_cap).
  std::vector<std::vector<CandidateId>> co_optimal_committees;
  bool co_optimal_truncated = false;
  std::vector<CandidateId> forced;  // sorted
  std::vector<RelaxationRecord> applied_relaxations;
  std::int64_t node_count = 0;
  TiePolicy tie_policy = TiePolicy::kReportAll;

  bool has_committee() const { return status != SolveStatus::kInfeasible; }

  friend bool operator==(const SolveOutcome&, const SolveOutcome&) = default;
};

struct SolveOptions {
  std::int64_t node_budget = 50'000'000;
  std::size_t co_optimal_cap = 100;
  bool compute_forced = true;
};

inline constexpr std::int64_t kWhatIfNodeBudget = 1'000'000;

// Branch and bound. Candidates are branched in descending vote order with
// the include branch first; a node is cut when an admissible bound (the
// tightest single-criterion greedy completion) cannot beat the incumbent.
//
// REPORT_ALL returns the lexicographically smallest collected optimum as
// `committee` and lists all collected optima. LEXICOGRAPHIC returns the
// smallest optimum by sorted id sequence, found by fixing ids in ascending
// order. With relaxation_policy FREE_SEATS_THEN_DROP an infeasible instance
// is relaxed and re-solved (status kRelaxedOptimal).
//
// Throws kNodeBudgetExceeded, and kUnsatisfiableEvenEmpty when relaxation
// is requested but seats exceed the roster.
SolveOutcome solve(const TallyResult& tally, const ElectionConfig& config, const SolveOptions& options = {});

inline constexpr int kBruteForceMaxRoster = 24;

// Enumerates every size-k subset. Test oracle: committee is the
// lexicographically smallest optimum, co_optimal_committees is uncapped and
// forced is the intersection of all feasible committees. Ignores the
// relaxation policy. Throws kRosterTooLarge above kBruteForceMaxRoster.
SolveOutcome brute_force_solve(const TallyResult& tally, const ElectionConfig& config);

enum class DeficitKind {
  kRosterTooSmall,     // fewer candidates than seats
  kCategorySupply,     // fewer candidates in a category than its lower bound
  kLowerBoundSum,      // a criterion's lower bounds need more than `seats`
  kPartitionCapacity,  // a criterion's upper bounds and supplies cannot fill `seats`
  kCrossPartition,     // each criterion alone is satisfiable, together they are not
};

std::string_view to_string(DeficitKind kind);

struct Deficit {
  DeficitKind kind = DeficitKind::kCategorySupply;
  std::string attribute;
  std::string category;
  int required = 0;
  int available = 0;

  int difference() const { return available - required; }

  friend bool operator==(const Deficit&, const Deficit&) = default;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<Deficit> deficits;
};

// Whether any size-k committee from config.roster meets every bound, with
// the deficits that block it when not.
FeasibilityReport check_feasibility(const ElectionConfig& config, const SolveOptions& options = {});

// Candidates present in every feasible committee: c is forced iff the
// instance without c is infeasible. Empty when the instance is infeasible.
std::vector<CandidateId> find_forced_candidates(const TallyResult& tally, const ElectionConfig& config,
                                                const SolveOptions& options = {});

struct RelaxationResult {
  ElectionConfig config;
  std::vector<RelaxationRecord> records;
};

// Lowers every lower bound that exceeds its category's supply to that supply.
RelaxationResult free_seat_relaxation(const ElectionConfig& config);

// Free seats first; if still infeasible, drops whole criteria from the
// least preferred (largest preference_rank) upward until feasible. A
// feasible instance comes back unchanged with no records.
RelaxationResult relax_until_feasible(const TallyResult& tally, const ElectionConfig& config,
                                      const SolveOptions& options = {});

}  // namespace reppact
