#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "reppact/model.hpp"
#include "reppact/solver.hpp"

namespace reppact {

// Exchange with third-party ILP solvers. The instance is written in CPLEX LP
// syntax with one binary variable x<i> per roster position; a comment line
// maps each variable to its candidate id.
std::string write_lp(const TallyResult& tally, const ElectionConfig& config);

inline std::string lp_variable(std::size_t roster_index) { return "x" + std::to_string(roster_index); }

// Reads a 0/1 assignment: one "<name> <value>" pair per line, where name is
// an LP variable (x3) or a candidate id. Lines starting with '#' or '\' are
// comments. Values are rounded to the nearest integer, so solver output like
// 0.9999999 is accepted. Returns the selected ids, sorted.
std::vector<CandidateId> read_assignment(std::string_view text, const ElectionConfig& config);

// Hook for cross-checking against an external solver: takes LP text and
// returns an assignment in the format read_assignment accepts.
class ExternalSolverAdapter {
 public:
  virtual ~ExternalSolverAdapter() = default;
  virtual std::string solve_lp(std::string_view lp_text) = 0;
};

struct CrossCheck {
  bool agrees = false;
  std::vector<CandidateId> external_committee;
  std::int64_t external_objective = 0;
  std::vector<Violation> violations;  // from the constraint checker
};

// Agreement means the external committee is feasible and has the same
// objective as `outcome` (ties may legitimately pick a different committee).
CrossCheck cross_check(ExternalSolverAdapter& adapter, const TallyResult& tally, const ElectionConfig& config,
                       const SolveOutcome& outcome);

}  // namespace reppact
