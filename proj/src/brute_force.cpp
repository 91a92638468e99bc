#include <algorithm>
#include <bit>
#include <cstdint>

#include "reppact/solver.hpp"

namespace reppact {

// Deliberately shares nothing with the branch-and-bound path: categories are
// resolved here from the raw attributes and every committee is recounted.
SolveOutcome brute_force_solve(const TallyResult& tally, const ElectionConfig& config) {
  const int m = static_cast<int>(config.roster.size());
  const int k = config.seats;
  if (m > kBruteForceMaxRoster) {
    throw Error(ErrorCode::kRosterTooLarge, "brute force is limited to " + std::to_string(kBruteForceMaxRoster) +
                                                " candidates, got " + std::to_string(m));
  }

  SolveOutcome out;
  out.tie_policy = config.tie_policy;
  out.status = SolveStatus::kInfeasible;
  if (k <= 0 || k > m) return out;

  std::vector<std::int64_t> votes(m);
  for (int i = 0; i < m; ++i) votes[i] = tally.votes_for(config.roster[i].candidate_id);

  // category[c][i]: index of candidate i's category within criterion c, -1 if undeclared
  std::vector<std::vector<int>> category(config.criteria.size(), std::vector<int>(m, -1));
  for (std::size_t c = 0; c < config.criteria.size(); ++c) {
    const auto& crit = config.criteria[c];
    for (int i = 0; i < m; ++i) {
      const std::string* value = config.roster[i].attribute(crit.attribute);
      for (std::size_t g = 0; value && g < crit.categories.size(); ++g) {
        if (crit.categories[g].category == *value) category[c][i] = static_cast<int>(g);
      }
    }
  }

  auto satisfies = [&](std::uint32_t mask) {
    for (std::size_t c = 0; c < config.criteria.size(); ++c) {
      const auto& crit = config.criteria[c];
      std::vector<int> count(crit.categories.size(), 0);
      for (int i = 0; i < m; ++i) {
        if ((mask >> i & 1u) && category[c][i] >= 0) ++count[category[c][i]];
      }
      for (std::size_t g = 0; g < crit.categories.size(); ++g) {
        if (!crit.categories[g].bound.admits(count[g])) return false;
      }
    }
    return true;
  };

  std::int64_t best = -1;
  std::vector<std::uint32_t> optima;
  std::uint32_t intersection = ~0u;
  bool any = false;

  const std::uint64_t limit = std::uint64_t{1} << m;
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  while (mask < limit) {
    ++out.node_count;
    const auto mask32 = static_cast<std::uint32_t>(mask);
    if (satisfies(mask32)) {
      any = true;
      intersection &= mask32;
      std::int64_t sum = 0;
      for (int i = 0; i < m; ++i) {
        if (mask32 >> i & 1u) sum += votes[i];
      }
      if (sum > best) {
        best = sum;
        optima.assign(1, mask32);
      } else if (sum == best) {
        optima.push_back(mask32);
      }
    }
    // next k-subset (Gosper)
    const std::uint64_t low = mask & -mask;
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
  if (!any) return out;

  auto ids_of = [&](std::uint32_t bits) {
    std::vector<CandidateId> ids;
    for (int i = 0; i < m; ++i) {
      if (bits >> i & 1u) ids.push_back(config.roster[i].candidate_id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  out.status = SolveStatus::kOptimal;
  out.objective = best;
  for (std::uint32_t bits : optima) out.co_optimal_committees.push_back(ids_of(bits));
  std::sort(out.co_optimal_committees.begin(), out.co_optimal_committees.end());
  out.committee = out.co_optimal_committees.front();
  out.forced = ids_of(intersection & static_cast<std::uint32_t>(limit - 1));
  return out;
}

}  // namespace reppact
