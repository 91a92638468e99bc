#include "reppact/tally.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <tuple>
#include <vector>

namespace reppact {

BallotCheck validate_ballot(const Ballot& ballot, const ElectionConfig& config) {
  if (static_cast<int>(ballot.selections.size()) > config.max_selections) {
    return BallotCheck::invalid("TOO_MANY_SELECTIONS");
  }
  for (const auto& id : ballot.selections) {
    if (config.find_candidate(id) == nullptr) return BallotCheck::invalid("UNKNOWN_CANDIDATE");
  }
  return BallotCheck::ok();
}

namespace {

// Duplicate ids are resolved up front so slices can be counted independently.
std::vector<char> first_occurrences(std::span<const Ballot> ballots) {
  std::vector<char> keep(ballots.size(), 1);
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    keep[i] = seen.insert(ballots[i].ballot_id).second;
  }
  return keep;
}

struct Partial {
  std::map<CandidateId, std::int64_t> votes;
  std::int64_t total = 0;
  std::int64_t counted = 0;
  std::vector<RejectedBallot> rejected;
};

Partial count_slice(std::span<const Ballot> ballots, std::span<const char> keep, const ElectionConfig& config) {
  Partial p;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const Ballot& b = ballots[i];
    if (!keep[i]) {
      p.rejected.push_back({b.ballot_id, "DUPLICATE_BALLOT_ID"});
      continue;
    }
    const BallotCheck check = validate_ballot(b, config);
    if (!check.valid) {
      p.rejected.push_back({b.ballot_id, check.reason});
      continue;
    }
    ++p.counted;
    for (const auto& id : b.selections) {
      ++p.votes[id];
      ++p.total;
    }
  }
  return p;
}

TallyResult finish(std::vector<Partial> parts, const ElectionConfig& config) {
  TallyResult t;
  for (const auto& c : config.roster) t.votes[c.candidate_id] = 0;
  for (auto& p : parts) {
    for (const auto& [id, v] : p.votes) t.votes[id] += v;
    t.total_votes_cast += p.total;
    t.ballots_counted += p.counted;
    std::move(p.rejected.begin(), p.rejected.end(), std::back_inserter(t.ballots_rejected));
  }
  std::stable_sort(t.ballots_rejected.begin(), t.ballots_rejected.end(),
                   [](const RejectedBallot& a, const RejectedBallot& b) {
                     return std::tie(a.ballot_id, a.reason) < std::tie(b.ballot_id, b.reason);
                   });
  return t;
}

}  // namespace

TallyResult count_votes(std::span<const Ballot> ballots, const ElectionConfig& config) {
  const auto keep = first_occurrences(ballots);
  std::vector<Partial> parts;
  parts.push_back(count_slice(ballots, keep, config));
  return finish(std::move(parts), config);
}

TallyResult count_votes_parallel(std::span<const Ballot> ballots, const ElectionConfig& config, unsigned workers) {
  workers = std::max(1u, workers);
  const auto keep = first_occurrences(ballots);
  const std::span<const char> all_flags(keep);

  const std::size_t chunk = (ballots.size() + workers - 1) / workers;
  std::vector<std::future<Partial>> jobs;
  for (std::size_t begin = 0; begin < ballots.size(); begin += chunk) {
    const std::size_t len = std::min(chunk, ballots.size() - begin);
    jobs.push_back(std::async(std::launch::async, [&, begin, len] {
      return count_slice(ballots.subspan(begin, len), all_flags.subspan(begin, len), config);
    }));
  }
  std::vector<Partial> parts;
  for (auto& j : jobs) parts.push_back(j.get());
  return finish(std::move(parts), config);
}

}  // namespace reppact
