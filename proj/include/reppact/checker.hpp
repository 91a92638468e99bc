#pragma once

#include <span>
#include <vector>

#include "reppact/model.hpp"

namespace reppact {

// Recounts categories straight from candidate attributes and reports every
// constraint the committee breaks: size, unknown or repeated ids, and each
// category bound of every criterion.
std::vector<Violation> check_committee(std::span<const CandidateId> committee, const ElectionConfig& config);

inline bool committee_satisfies(std::span<const CandidateId> committee, const ElectionConfig& config) {
  return check_committee(committee, config).empty();
}

}  // namespace reppact
