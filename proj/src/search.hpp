#pragma once

#include <cstdint>
#include <vector>

#include "reppact/model.hpp"

namespace reppact::detail {

// Solver-ready view of an election: dense indices instead of ids.
struct Instance {
  struct Partition {
    std::vector<int> category_of;  // per candidate
    std::vector<int> lower;        // per category
    std::vector<int> upper;        // per category, AT_LEAST capped at seats
  };

  int seats = 0;
  std::vector<CandidateId> ids;  // roster order
  std::vector<std::int64_t> weight;
  std::vector<Partition> partitions;

  int size() const { return static_cast<int>(ids.size()); }
};

// Throws kInvalidConfig for a candidate without a declared category.
Instance compile_instance(const TallyResult& tally, const ElectionConfig& config);

enum class SearchMode {
  kBest,         // one maximum
  kAllBest,      // every maximum, up to cap
  kReach,        // any committee with objective >= target
  kAnyFeasible,  // any committee at all
};

inline constexpr std::int8_t kFree = -1;
inline constexpr std::int8_t kOut = 0;
inline constexpr std::int8_t kIn = 1;

struct SearchRequest {
  SearchMode mode = SearchMode::kBest;
  std::int64_t target = 0;
  std::size_t cap = 100;
  std::int64_t node_budget = 50'000'000;
  std::vector<std::int8_t> fixed;  // empty or one entry per candidate
};

struct SearchResult {
  bool found = false;
  std::int64_t best = -1;
  std::vector<std::vector<int>> leaves;  // candidate indices, ascending
  bool truncated = false;
  std::int64_t nodes = 0;
};

// Throws kNodeBudgetExceeded when more than node_budget nodes are expanded.
SearchResult run_search(const Instance& instance, const SearchRequest& request);

}  // namespace reppact::detail
