#include "reppact/checker.hpp"

#include <map>
#include <set>

namespace reppact {

std::vector<Violation> check_committee(std::span<const CandidateId> committee, const ElectionConfig& config) {
  std::vector<Violation> out;
  if (static_cast<int>(committee.size()) != config.seats) {
    out.push_back({"COMMITTEE_SIZE", "committee has " + std::to_string(committee.size()) + " members, seats = " +
                                         std::to_string(config.seats)});
  }
  std::set<CandidateId> seen;
  std::vector<const CandidateRecord*> members;
  for (const auto& id : committee) {
    if (!seen.insert(id).second) {
      out.push_back({"DUPLICATE_MEMBER", "candidate '" + id + "' listed twice"});
      continue;
    }
    const CandidateRecord* rec = config.find_candidate(id);
    if (rec == nullptr) {
      out.push_back({"UNKNOWN_CANDIDATE", "candidate '" + id + "' not in roster"});
      continue;
    }
    members.push_back(rec);
  }
  for (const auto& crit : config.criteria) {
    std::map<std::string, int> reached;
    for (const CandidateRecord* rec : members) {
      if (const std::string* value = rec->attribute(crit.attribute)) ++reached[*value];
    }
    for (const auto& cat : crit.categories) {
      const int n = reached[cat.category];
      if (!cat.bound.admits(n)) {
        out.push_back({"BOUND_VIOLATED", crit.attribute + "/" + cat.category + ": reached " + std::to_string(n) +
                                             ", required " + cat.bound.symbol()});
      }
    }
  }
  return out;
}

}  // namespace reppact
