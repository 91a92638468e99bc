#include "search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace reppact::detail {

Instance compile_instance(const TallyResult& tally, const ElectionConfig& config) {
  Instance inst;
  inst.seats = config.seats;
  inst.ids.reserve(config.roster.size());
  inst.weight.reserve(config.roster.size());
  for (const auto& c : config.roster) {
    inst.ids.push_back(c.candidate_id);
    inst.weight.push_back(tally.votes_for(c.candidate_id));
  }
  for (const auto& crit : config.criteria) {
    Instance::Partition p;
    for (const auto& cat : crit.categories) {
      p.lower.push_back(std::max(cat.bound.lower(), 0));
      p.upper.push_back(std::clamp(cat.bound.upper(config.seats), 0, std::max(config.seats, 0)));
    }
    p.category_of.reserve(config.roster.size());
    for (const auto& c : config.roster) {
      const std::string* value = c.attribute(crit.attribute);
      int index = -1;
      if (value != nullptr) {
        for (std::size_t g = 0; g < crit.categories.size(); ++g) {
          if (crit.categories[g].category == *value) index = static_cast<int>(g);
        }
      }
      if (index < 0) {
        throw Error(ErrorCode::kInvalidConfig,
                    "candidate '" + c.candidate_id + "' has no declared '" + crit.attribute + "' category");
      }
      p.category_of.push_back(index);
    }
    inst.partitions.push_back(std::move(p));
  }
  return inst;
}

namespace {

class Search {
 public:
  Search(const Instance& inst, const SearchRequest& req) : inst_(inst), req_(req) {
    const int m = inst.size();
    for (int i = 0; i < m; ++i) {
      if (fixed(i) != kOut) order_.push_back(i);
    }
    // Descending votes; roster position breaks ties so the order is total.
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return inst.weight[a] > inst.weight[b]; });

    fixed_in_suffix_.assign(order_.size() + 1, 0);
    for (std::size_t d = order_.size(); d-- > 0;) {
      fixed_in_suffix_[d] = fixed_in_suffix_[d + 1] + (fixed(order_[d]) == kIn ? 1 : 0);
    }

    const std::size_t parts = inst.partitions.size();
    counts_.resize(parts);
    supply_.resize(parts);
    scratch_taken_.resize(parts);
    for (std::size_t p = 0; p < parts; ++p) {
      const auto& part = inst.partitions[p];
      counts_[p].assign(part.lower.size(), 0);
      supply_[p].assign(part.lower.size(), 0);
      scratch_taken_[p].assign(part.lower.size(), 0);
      for (int i : order_) ++supply_[p][part.category_of[i]];
    }
    scratch_mark_.assign(inst.size(), 0);
  }

  SearchResult run() {
    descend(0, 0, 0);
    return std::move(result_);
  }

 private:
  std::int8_t fixed(int i) const { return req_.fixed.empty() ? kFree : req_.fixed[i]; }

  bool viable(std::size_t depth, int selected) const {
    const int remaining = inst_.seats - selected;
    if (remaining < 0) return false;
    if (remaining > static_cast<int>(order_.size() - depth)) return false;
    if (fixed_in_suffix_[depth] > remaining) return false;
    for (std::size_t p = 0; p < inst_.partitions.size(); ++p) {
      const auto& part = inst_.partitions[p];
      int need = 0;
      int room = 0;
      for (std::size_t g = 0; g < part.lower.size(); ++g) {
        const int have = counts_[p][g];
        if (have > part.upper[g]) return false;
        if (have + supply_[p][g] < part.lower[g]) return false;
        need += std::max(part.lower[g] - have, 0);
        room += std::min(part.upper[g] - have, supply_[p][g]);
      }
      if (need > remaining || room < remaining) return false;
    }
    return true;
  }

  // Best completion honoring a single partition: mandatory top picks per
  // category, then the best remaining within category caps. Exact for one
  // partition, so an upper bound for all of them together.
  std::int64_t partition_bound(std::size_t p, std::size_t depth, int remaining) const {
    const auto& part = inst_.partitions[p];
    auto& taken = scratch_taken_[p];
    std::fill(taken.begin(), taken.end(), 0);
    std::int64_t sum = 0;
    int picked = 0;
    for (std::size_t d = depth; d < order_.size(); ++d) {
      const int i = order_[d];
      const int g = part.category_of[i];
      scratch_mark_[i] = 0;
      if (counts_[p][g] + taken[g] < part.lower[g]) {
        ++taken[g];
        sum += inst_.weight[i];
        scratch_mark_[i] = 1;
        ++picked;
      }
    }
    for (std::size_t d = depth; d < order_.size() && picked < remaining; ++d) {
      const int i = order_[d];
      const int g = part.category_of[i];
      if (scratch_mark_[i] || counts_[p][g] + taken[g] >= part.upper[g]) continue;
      ++taken[g];
      sum += inst_.weight[i];
      ++picked;
    }
    return sum;
  }

  std::int64_t upper_bound(std::size_t depth, int remaining) const {
    if (inst_.partitions.empty()) {
      std::int64_t sum = 0;
      for (std::size_t d = depth; d < order_.size() && remaining > 0; ++d, --remaining) {
        sum += inst_.weight[order_[d]];
      }
      return sum;
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t p = 0; p < inst_.partitions.size(); ++p) {
      best = std::min(best, partition_bound(p, depth, remaining));
    }
    return best;
  }

  bool pruned(std::int64_t bound) const {
    switch (req_.mode) {
      case SearchMode::kBest: return bound <= result_.best;
      case SearchMode::kAllBest: return result_.truncated ? bound <= result_.best : bound < result_.best;
      case SearchMode::kReach: return bound < req_.target;
      case SearchMode::kAnyFeasible: return false;
    }
    return false;
  }

  void leaf(std::int64_t value) {
    auto committee = [&] {
      std::vector<int> c = chosen_;
      std::sort(c.begin(), c.end());
      return c;
    };
    switch (req_.mode) {
      case SearchMode::kBest:
        if (value > result_.best) {
          result_.best = value;
          result_.leaves.assign(1, committee());
          result_.found = true;
        }
        break;
      case SearchMode::kAllBest:
        if (value > result_.best) {
          result_.best = value;
          result_.leaves.assign(1, committee());
          result_.truncated = false;
          result_.found = true;
        } else if (value == result_.best) {
          if (result_.leaves.size() < req_.cap) {
            result_.leaves.push_back(committee());
          } else {
            result_.truncated = true;
          }
        }
        break;
      case SearchMode::kReach:
        if (value >= req_.target) {
          result_.best = value;
          result_.leaves.assign(1, committee());
          result_.found = true;
          stop_ = true;
        }
        break;
      case SearchMode::kAnyFeasible:
        result_.best = value;
        result_.leaves.assign(1, committee());
        result_.found = true;
        stop_ = true;
        break;
    }
  }

  void descend(std::size_t depth, int selected, std::int64_t value) {
    if (++result_.nodes > req_.node_budget) {
      throw Error(ErrorCode::kNodeBudgetExceeded,
                  "search exceeded the node budget of " + std::to_string(req_.node_budget));
    }
    if (!viable(depth, selected)) return;
    const int remaining = inst_.seats - selected;
    if (remaining == 0) {
      leaf(value);
      return;
    }
    if (req_.mode != SearchMode::kAnyFeasible && pruned(value + upper_bound(depth, remaining))) return;

    const int i = order_[depth];
    for (std::size_t p = 0; p < inst_.partitions.size(); ++p) {
      --supply_[p][inst_.partitions[p].category_of[i]];
    }
    // include first
    for (std::size_t p = 0; p < inst_.partitions.size(); ++p) {
      ++counts_[p][inst_.partitions[p].category_of[i]];
    }
    chosen_.push_back(i);
    descend(depth + 1, selected + 1, value + inst_.weight[i]);
    chosen_.pop_back();
    for (std::size_t p = 0; p < inst_.partitions.size(); ++p) {
      --counts_[p][inst_.partitions[p].category_of[i]];
    }
    if (!stop_ && fixed(i) != kIn) descend(depth + 1, selected, value);
    for (std::size_t p = 0; p < inst_.partitions.size(); ++p) {
      ++supply_[p][inst_.partitions[p].category_of[i]];
    }
  }

  const Instance& inst_;
  const SearchRequest& req_;
  std::vector<int> order_;
  std::vector<int> fixed_in_suffix_;
  std::vector<std::vector<int>> counts_;
  std::vector<std::vector<int>> supply_;
  mutable std::vector<std::vector<int>> scratch_taken_;
  mutable std::vector<char> scratch_mark_;
  std::vector<int> chosen_;
  SearchResult result_;
  bool stop_ = false;
};

}  // namespace

SearchResult run_search(const Instance& instance, const SearchRequest& request) {
  if (!request.fixed.empty() && static_cast<int>(request.fixed.size()) != instance.size()) {
    throw Error(ErrorCode::kInvalidConfig, "fixed-variable vector does not match the roster");
  }
  Search search(instance, request);
  return search.run();
}

}  // namespace reppact::detail
