#include "reppact/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "search.hpp"

namespace reppact {

using detail::Instance;
using detail::SearchMode;
using detail::SearchRequest;
using detail::SearchResult;

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "OPTIMAL";
    case SolveStatus::kInfeasible: return "INFEASIBLE";
    case SolveStatus::kRelaxedOptimal: return "RELAXED_OPTIMAL";
  }
  return "INFEASIBLE";
}

SolveStatus parse_solve_status(std::string_view text) {
  if (text == "OPTIMAL") return SolveStatus::kOptimal;
  if (text == "INFEASIBLE") return SolveStatus::kInfeasible;
  if (text == "RELAXED_OPTIMAL") return SolveStatus::kRelaxedOptimal;
  throw Error(ErrorCode::kParse, "unknown solve status '" + std::string(text) + "'");
}

std::string_view to_string(RelaxationAction action) {
  return action == RelaxationAction::kFreeSeats ? "FREE_SEATS" : "DROPPED";
}

std::string_view to_string(DeficitKind kind) {
  switch (kind) {
    case DeficitKind::kRosterTooSmall: return "ROSTER_TOO_SMALL";
    case DeficitKind::kCategorySupply: return "CATEGORY_SUPPLY";
    case DeficitKind::kLowerBoundSum: return "LOWER_BOUND_SUM";
    case DeficitKind::kPartitionCapacity: return "PARTITION_CAPACITY";
    case DeficitKind::kCrossPartition: return "CROSS_PARTITION";
  }
  return "CATEGORY_SUPPLY";
}

namespace {

std::vector<CandidateId> to_ids(const Instance& inst, const std::vector<int>& indices) {
  std::vector<CandidateId> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(inst.ids[i]);
  std::sort(out.begin(), out.end());
  return out;
}

SearchResult search(const Instance& inst, SearchMode mode, const SolveOptions& options,
                    std::vector<std::int8_t> fixed = {}, std::int64_t target = 0) {
  SearchRequest req;
  req.mode = mode;
  req.target = target;
  req.cap = std::max<std::size_t>(options.co_optimal_cap, 1);
  req.node_budget = options.node_budget;
  req.fixed = std::move(fixed);
  return detail::run_search(inst, req);
}

bool instance_feasible(const Instance& inst, const SolveOptions& options) {
  return search(inst, SearchMode::kAnyFeasible, options).found;
}

// Fills committee/objective/co-optimal/node_count. False when infeasible.
bool optimize(const Instance& inst, TiePolicy policy, const SolveOptions& options, SolveOutcome& out) {
  if (policy == TiePolicy::kReportAll) {
    SearchResult r = search(inst, SearchMode::kAllBest, options);
    out.node_count += r.nodes;
    if (!r.found) return false;
    out.objective = r.best;
    out.co_optimal_committees.clear();
    for (const auto& leaf : r.leaves) out.co_optimal_committees.push_back(to_ids(inst, leaf));
    std::sort(out.co_optimal_committees.begin(), out.co_optimal_committees.end());
    out.co_optimal_truncated = r.truncated;
    out.committee = out.co_optimal_committees.front();
    return true;
  }

  SearchResult best = search(inst, SearchMode::kBest, options);
  out.node_count += best.nodes;
  if (!best.found) return false;
  out.objective = best.best;

  // Fix ids in ascending order, keeping each one in whenever the optimum is
  // still reachable; equal-size sorted sequences compare on the first
  // differing id, so this yields the smallest optimal committee.
  std::vector<int> by_id(inst.size());
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(), [&](int a, int b) { return inst.ids[a] < inst.ids[b]; });
  std::vector<std::int8_t> fixed(inst.size(), detail::kFree);
  int included = 0;
  for (int i : by_id) {
    if (included == inst.seats) {
      fixed[i] = detail::kOut;
      continue;
    }
    fixed[i] = detail::kIn;
    SearchResult probe = search(inst, SearchMode::kReach, options, fixed, best.best);
    out.node_count += probe.nodes;
    if (probe.found) {
      ++included;
    } else {
      fixed[i] = detail::kOut;
    }
  }
  std::vector<int> chosen;
  for (int i = 0; i < inst.size(); ++i) {
    if (fixed[i] == detail::kIn) chosen.push_back(i);
  }
  out.committee = to_ids(inst, chosen);
  out.co_optimal_committees.clear();
  out.co_optimal_truncated = false;
  return true;
}

std::vector<int> category_supply(const Instance::Partition& part) {
  std::vector<int> supply(part.lower.size(), 0);
  for (int g : part.category_of) ++supply[g];
  return supply;
}

std::vector<CandidateId> forced_from_instance(const Instance& inst, const SolveOptions& options) {
  SearchResult first = search(inst, SearchMode::kAnyFeasible, options);
  if (!first.found) return {};

  // 1 = forced, 0 = not forced, -1 = undecided
  std::vector<int> state(inst.size(), 0);
  for (int i : first.leaves.front()) state[i] = -1;

  for (const auto& part : inst.partitions) {
    const auto supply = category_supply(part);
    for (int i = 0; i < inst.size(); ++i) {
      const int g = part.category_of[i];
      if (part.lower[g] > 0 && supply[g] == part.lower[g]) state[i] = 1;
    }
  }

  for (int c = 0; c < inst.size(); ++c) {
    if (state[c] != -1) continue;
    std::vector<std::int8_t> fixed(inst.size(), detail::kFree);
    fixed[c] = detail::kOut;
    SearchResult probe = search(inst, SearchMode::kAnyFeasible, options, fixed);
    if (!probe.found) {
      state[c] = 1;
      continue;
    }
    // Nobody outside a feasible committee can be forced.
    std::vector<char> in_leaf(inst.size(), 0);
    for (int i : probe.leaves.front()) in_leaf[i] = 1;
    for (int i = 0; i < inst.size(); ++i) {
      if (!in_leaf[i] && state[i] == -1) state[i] = 0;
    }
  }

  std::vector<int> forced;
  for (int i = 0; i < inst.size(); ++i) {
    if (state[i] == 1) forced.push_back(i);
  }
  return to_ids(inst, forced);
}

std::map<std::string, int> supplies_for(const ElectionConfig& config, const CriterionSpec& crit) {
  std::map<std::string, int> supply;
  for (const auto& c : config.roster) {
    if (const std::string* v = c.attribute(crit.attribute)) ++supply[*v];
  }
  return supply;
}

}  // namespace

SolveOutcome solve(const TallyResult& tally, const ElectionConfig& config, const SolveOptions& options) {
  SolveOutcome out;
  out.tie_policy = config.tie_policy;

  const Instance inst = detail::compile_instance(tally, config);
  if (optimize(inst, config.tie_policy, options, out)) {
    out.status = SolveStatus::kOptimal;
    if (options.compute_forced) out.forced = forced_from_instance(inst, options);
    return out;
  }
  if (config.relaxation_policy == RelaxationPolicy::kFail) {
    out.status = SolveStatus::kInfeasible;
    return out;
  }

  RelaxationResult relaxed = relax_until_feasible(tally, config, options);
  const Instance relaxed_inst = detail::compile_instance(tally, relaxed.config);
  out.applied_relaxations = std::move(relaxed.records);
  if (!optimize(relaxed_inst, config.tie_policy, options, out)) {
    out.status = SolveStatus::kInfeasible;
    return out;
  }
  out.status = SolveStatus::kRelaxedOptimal;
  if (options.compute_forced) out.forced = forced_from_instance(relaxed_inst, options);
  return out;
}

FeasibilityReport check_feasibility(const ElectionConfig& config, const SolveOptions& options) {
  FeasibilityReport report;
  const int m = static_cast<int>(config.roster.size());
  const int k = config.seats;
  if (k > m) report.deficits.push_back({DeficitKind::kRosterTooSmall, "", "", k, m});

  for (const auto& crit : config.criteria) {
    const auto supply = supplies_for(config, crit);
    int lower_sum = 0;
    int room = 0;
    for (const auto& cat : crit.categories) {
      auto it = supply.find(cat.category);
      const int have = it == supply.end() ? 0 : it->second;
      if (cat.bound.lower() > have) {
        report.deficits.push_back({DeficitKind::kCategorySupply, crit.attribute, cat.category, cat.bound.lower(), have});
      }
      lower_sum += cat.bound.lower();
      room += std::min(cat.bound.upper(k), have);
    }
    if (lower_sum > k) {
      report.deficits.push_back({DeficitKind::kLowerBoundSum, crit.attribute, "", lower_sum, k});
    }
    if (room < k) {
      report.deficits.push_back({DeficitKind::kPartitionCapacity, crit.attribute, "", k, room});
    }
  }

  if (report.deficits.empty()) {
    const Instance inst = detail::compile_instance(TallyResult{}, config);
    if (!instance_feasible(inst, options)) {
      report.deficits.push_back({DeficitKind::kCrossPartition, "", "", k, 0});
    }
  }
  report.feasible = report.deficits.empty();
  return report;
}

std::vector<CandidateId> find_forced_candidates(const TallyResult& tally, const ElectionConfig& config,
                                                const SolveOptions& options) {
  return forced_from_instance(detail::compile_instance(tally, config), options);
}

RelaxationResult free_seat_relaxation(const ElectionConfig& config) {
  RelaxationResult out{config, {}};
  for (auto& crit : out.config.criteria) {
    const auto supply = supplies_for(config, crit);
    for (auto& cat : crit.categories) {
      auto it = supply.find(cat.category);
      const int have = it == supply.end() ? 0 : it->second;
      if (cat.bound.lower() <= have) continue;
      RelaxationRecord rec;
      rec.action = RelaxationAction::kFreeSeats;
      rec.attribute = crit.attribute;
      rec.category = cat.category;
      rec.old_bound = cat.bound;
      cat.bound.count = have;
      rec.new_bound = cat.bound;
      rec.freed_seats = rec.old_bound->count - have;
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

RelaxationResult relax_until_feasible(const TallyResult& tally, const ElectionConfig& config,
                                      const SolveOptions& options) {
  if (config.seats > static_cast<int>(config.roster.size())) {
    throw Error(ErrorCode::kUnsatisfiableEvenEmpty,
                "seats (" + std::to_string(config.seats) + ") exceed the number of candidates (" +
                    std::to_string(config.roster.size()) + ")");
  }
  auto feasible = [&](const ElectionConfig& cfg) {
    return instance_feasible(detail::compile_instance(tally, cfg), options);
  };
  if (feasible(config)) return {config, {}};

  RelaxationResult out = free_seat_relaxation(config);
  if (feasible(out.config)) return out;

  std::vector<std::size_t> drop_order(out.config.criteria.size());
  std::iota(drop_order.begin(), drop_order.end(), 0);
  std::stable_sort(drop_order.begin(), drop_order.end(), [&](std::size_t a, std::size_t b) {
    return out.config.criteria[a].preference_rank > out.config.criteria[b].preference_rank;
  });
  std::vector<std::string> to_drop;
  for (std::size_t i : drop_order) to_drop.push_back(out.config.criteria[i].attribute);

  for (const auto& attribute : to_drop) {
    std::erase_if(out.config.criteria, [&](const CriterionSpec& c) { return c.attribute == attribute; });
    RelaxationRecord rec;
    rec.action = RelaxationAction::kDropped;
    rec.attribute = attribute;
    out.records.push_back(std::move(rec));
    if (feasible(out.config)) return out;
  }
  return out;
}

}  // namespace reppact
