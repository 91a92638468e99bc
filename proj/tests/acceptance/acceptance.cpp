// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "reference.hpp"
#include "reppact/checker.hpp"
#include "reppact/criteria_vote.hpp"
#include "reppact/explain.hpp"
#include "reppact/io.hpp"
#include "reppact/ledger.hpp"
#include "reppact/serialize.hpp"
#include "reppact/solver.hpp"
#include "sha256_ref.hpp"

namespace fs = std::filesystem;
using namespace reppact;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

const std::vector<CandidateId> kElected = {"A", "B", "C", "D", "E", "F", "G", "H", "I",
                                           "J", "K", "L", "M", "S", "T", "W", "Z"};

std::string golden_run(Check& c) {
  const auto tally = reftest::monthey_tally();
  std::ostringstream detail;
  for (const auto& [name, config] : {std::pair{"28-candidate", reftest::monthey_config()},
                                     std::pair{"table-only 26-candidate", reftest::monthey_config_26()}}) {
    const auto t0 = Clock::now();
    const SolveOutcome out = solve(tally, config);
    const double secs = seconds_since(t0);
    c.expect(out.status == SolveStatus::kOptimal, std::string(name) + " not optimal; ");
    c.expect(out.committee == kElected, std::string(name) + " committee differs; ");
    c.expect(out.objective == 1440, std::string(name) + " objective " + std::to_string(out.objective) + "; ");
    c.expect(out.co_optimal_committees.size() == 1, std::string(name) + " optimum not unique; ");
    c.expect(committee_satisfies(out.committee, config), std::string(name) + " fails checker; ");
    c.expect(secs < 1.0, std::string(name) + " took " + std::to_string(secs) + "s; ");
    detail << name << " objective " << out.objective << " in " << static_cast<int>(secs * 1000) << " ms, "
           << out.co_optimal_committees.size() << " optimum; ";
  }
  return detail.str();
}

std::string unconstrained(Check& c) {
  auto config = reftest::monthey_config();
  config.criteria.clear();
  const SolveOutcome out = solve(reftest::monthey_tally(), config);
  c.expect(out.objective == 1507, "objective " + std::to_string(out.objective));
  return "objective " + std::to_string(out.objective);
}

std::string price(Check& c) {
  const PriceReport p = price_report(reftest::monthey_tally(), reftest::monthey_config());
  c.expect(p.total_votes_cast == 1931, "total ");
  c.expect(p.price == 67 && p.price_pct_tenths == 34, "price ");
  c.expect(p.lost_votes_unconstrained == 424 && p.lost_unconstrained_pct_tenths == 220, "unconstrained loss ");
  c.expect(p.lost_votes_constrained == 491 && p.lost_constrained_pct_tenths == 254, "constrained loss ");
  std::ostringstream s;
  s << "price " << p.price << " (" << format_tenths(p.price_pct_tenths) << "%) of " << p.total_votes_cast
    << "; lost " << p.lost_votes_unconstrained << " (" << format_tenths(p.lost_unconstrained_pct_tenths) << "%) and "
    << p.lost_votes_constrained << " (" << format_tenths(p.lost_constrained_pct_tenths) << "%)";
  return s.str();
}

std::string deficits(Check& c) {
  const std::vector<CandidateId> partial = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "T", "Z"};
  const DeficitReport r = deficit_report(partial, reftest::monthey_config());
  const std::vector<std::tuple<std::string, std::string, int>> want = {
      {"region", "Region 1", 3}, {"region", "Region 2", 0}, {"region", "Region 3", -2},
      {"region", "Region 4", 0}, {"gender", "Male", -1},    {"gender", "Female", -1},
      {"age", "18-30", 0},       {"age", "31-65", 0},       {"age", "+65", 0}};
  c.expect(r.rows.size() == want.size(), "row count ");
  std::ostringstream s;
  for (std::size_t i = 0; i < want.size() && i < r.rows.size(); ++i) {
    const auto& [attr, cat, diff] = want[i];
    c.expect(r.rows[i].attribute == attr && r.rows[i].category == cat && r.rows[i].difference == diff,
             "row " + cat + " ");
    s << cat << " " << (r.rows[i].difference > 0 ? "+" : "") << r.rows[i].difference << (i + 1 < want.size() ? ", " : "");
  }
  return s.str();
}

std::string forced(Check& c) {
  const auto f = find_forced_candidates(reftest::monthey_tally(), reftest::monthey_config());
  c.expect(f == std::vector<CandidateId>{"I", "M", "T", "Z"}, "forced set differs");
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + f[i];
  return s + "}";
}

std::string phase_one(Check& c) {
  const auto dir = reftest::data_dir() / "monthey";
  const auto qs = questions_from_json(parse_json(io::read_file(dir / "questions.json")));
  const auto answers = parse_criteria_ballots_csv(io::read_file(dir / "phase1_ballots.csv"));
  const auto r = tally_criteria_vote(qs, answers);
  const std::map<std::string, std::array<std::int64_t, 3>> want = {
      {"gender", {749, 196, 55}}, {"age", {769, 176, 55}}, {"region", {700, 216, 84}}};
  c.expect(r.participants == 347, "participants ");
  c.expect(r.questions.size() == 3, "question count ");
  std::ostringstream s;
  s << r.participants << " ballots;";
  for (const auto& q : r.questions) {
    const auto& w = want.at(q.question_id);
    c.expect(q.yes_pct_tenths == w[0] && q.no_pct_tenths == w[1] && q.blank_pct_tenths == w[2], q.question_id + " ");
    c.expect(q.accepted, q.question_id + " rejected ");
    s << " " << q.question_id << " " << format_tenths(q.yes_pct_tenths) << "/" << format_tenths(q.no_pct_tenths) << "/"
      << format_tenths(q.blank_pct_tenths);
  }
  return s.str();
}

std::string oracle_suite(Check& c) {
  std::mt19937_64 rng(1931);
  const auto t0 = Clock::now();
  int n = 0;
  int feasible = 0;
  int max_m = 0;
  std::set<int> criteria_counts;
  for (; n < 1000; ++n) {
    auto inst = reftest::random_instance(rng);
    inst.config.tie_policy = n % 2 ? TiePolicy::kLexicographic : TiePolicy::kReportAll;
    max_m = std::max<int>(max_m, inst.config.roster.size());
    criteria_counts.insert(inst.config.criteria.size());
    const SolveOutcome brute = brute_force_solve(inst.tally, inst.config);
    const SolveOutcome out = solve(inst.tally, inst.config);
    if (out.has_committee() != brute.has_committee() || (out.has_committee() && out.objective != brute.objective)) {
      c.expect(false, "objective mismatch on instance " + std::to_string(n) + "; ");
      continue;
    }
    if (!out.has_committee()) continue;
    ++feasible;
    c.expect(check_committee(out.committee, inst.config).empty(), "checker rejects instance " + std::to_string(n) + "; ");
    for (const auto& co : out.co_optimal_committees) {
      c.expect(check_committee(co, inst.config).empty(), "co-optimal rejected " + std::to_string(n) + "; ");
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 300, "took " + std::to_string(secs) + "s; ");
  c.expect(max_m <= 18, "roster above 18; ");
  std::ostringstream s;
  s << n << " instances (" << feasible << " feasible, m <= " << max_m << ", " << criteria_counts.size()
    << " distinct criteria counts) in " << static_cast<int>(secs) << " s";
  return s.str();
}

std::string relaxation(Check& c) {
  std::mt19937_64 rng(347);
  int single = 0;
  int full = 0;
  int drops = 0;
  for (int trial = 0; trial < 600; ++trial) {
    // Stage one alone, one partition of lower bounds.
    auto one = reftest::random_instance(rng, {1, 16, 1, 30, true});
    if (validate_config(one.config).empty()) {
      ++single;
      const auto r = free_seat_relaxation(one.config);
      c.expect(reftest::exhaustive(one.tally, r.config).feasible, "free seats left trial " + std::to_string(trial) + " infeasible; ");
    }

    auto inst = reftest::random_instance(rng, {1, 14, 3, 30, trial % 2 == 0});
    ++full;
    const RelaxationResult r = relax_until_feasible(inst.tally, inst.config);
    c.expect(reftest::exhaustive(inst.tally, r.config).feasible, "relaxation infeasible trial " + std::to_string(trial) + "; ");

    int last_rank = std::numeric_limits<int>::max();
    ElectionConfig step = inst.config;
    std::int64_t previous = reftest::exhaustive(inst.tally, step).best;
    bool stage_one_applied = false;
    auto advance = [&](const ElectionConfig& next) {
      const std::int64_t best = reftest::exhaustive(inst.tally, next).best;
      c.expect(best >= previous, "objective decreased trial " + std::to_string(trial) + "; ");
      previous = best;
    };
    for (const auto& rec : r.records) {
      if (rec.action == RelaxationAction::kFreeSeats) {
        for (auto& crit : step.criteria) {
          for (auto& cat : crit.categories) {
            if (crit.attribute == rec.attribute && cat.category == rec.category) cat.bound = *rec.new_bound;
          }
        }
        stage_one_applied = true;
        continue;
      }
      if (stage_one_applied) {
        advance(step);
        stage_one_applied = false;
      }
      const int rank = inst.config.find_criterion(rec.attribute)->preference_rank;
      c.expect(rank < last_rank, "drop order broken trial " + std::to_string(trial) + "; ");
      last_rank = rank;
      ++drops;
      std::erase_if(step.criteria, [&](const CriterionSpec& s) { return s.attribute == rec.attribute; });
      advance(step);
    }
    if (stage_one_applied) advance(step);
  }
  std::ostringstream s;
  s << single << " single-partition free-seat cases, " << full << " full relaxations, " << drops << " drops checked";
  return s.str();
}

int run_process(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string ledger(Check& c) {
  const fs::path dir = reftest::data_dir() / "monthey";
  const fs::path work = fs::temp_directory_path() / "reppact_acceptance_ledger";
  fs::remove_all(work);
  fs::create_directories(work);
  const std::string cli = REPPACT_CLI;
  const std::string config = (dir / "config.json").string();

  // Export: publish raw ballots, solve from the published list.
  c.expect(run_process(cli + " publish --ballots " + (dir / "ballots_raw.csv").string() + " --out " +
                       (work / "ballots.csv").string() + " --receipts " + (work / "receipts.csv").string()) == 0,
           "publish failed; ");
  c.expect(run_process(cli + " solve --config " + config + " --ballots " + (work / "ballots.csv").string() +
                       " --out " + (work / "outcome.json").string()) == 0,
           "solve failed; ");
  auto verify = [&](const fs::path& ballots) {
    return run_process(cli + " verify --config " + config + " --ballots " + ballots.string() + " --outcome " +
                       (work / "outcome.json").string());
  };
  c.expect(verify(work / "ballots.csv") == 0, "fresh export not CONFIRMED; ");

  // Every byte of every ballot row, flipped in process; a sample through the CLI.
  const std::string text = io::read_file(work / "ballots.csv");
  const std::size_t body = text.find('\n') + 1;
  const ElectionConfig cfg = reftest::monthey_config();
  const PublishedOutcome claim = published_outcome_from_json(parse_json(io::read_file(work / "outcome.json")));
  SolveOptions fast;
  fast.compute_forced = false;
  std::size_t mutations = 0;
  std::size_t caught = 0;
  for (std::size_t pos = body; pos < text.size(); ++pos) {
    std::string mutated = text;
    mutated[pos] = static_cast<char>(mutated[pos] ^ 0x01);
    ++mutations;
    try {
      const auto ballots = io::parse_ballots_csv(mutated).ballots;
      if (!verify_count(ballots, cfg, claim, fast).confirmed) ++caught;
    } catch (const Error&) {
      ++caught;  // unreadable list
    }
  }
  c.expect(caught == mutations, std::to_string(mutations - caught) + " mutations went unnoticed; ");

  std::mt19937_64 rng(331);
  int process_runs = 0;
  for (int i = 0; i < 40; ++i) {
    std::string mutated = text;
    const std::size_t pos = body + rng() % (text.size() - body);
    mutated[pos] = static_cast<char>(mutated[pos] ^ (1 << (rng() % 7)));
    io::write_file(work / "mutated.csv", mutated);
    c.expect(verify(work / "mutated.csv") == 2, "CLI missed mutation at byte " + std::to_string(pos) + "; ");
    ++process_runs;
  }

  // Receipts: fixture digests against the reference SHA-256, then MATCH/NO_MATCH.
  const auto receipts = parse_receipts_csv(io::read_file(dir / "receipts.csv"));
  const auto published = io::parse_ballots_csv(io::read_file(dir / "ballots.csv")).ballots;
  std::size_t digests_ok = 0;
  for (std::size_t i = 0; i < receipts.size() && i < published.size(); ++i) {
    digests_ok += reftest::sha256_reference(canonical_ballot(published[i], receipts[i].salt)) == receipts[i].digest &&
                  published[i].receipt == receipts[i].digest;
  }
  c.expect(digests_ok == receipts.size() && receipts.size() == 331, "fixture digests disagree with reference; ");
  const Ballot b1{"b1", {"c1", "c2"}, std::nullopt};
  const std::string zero(32, '0');
  c.expect(make_receipt(b1, parse_salt(zero)).digest == reftest::sha256_reference("b1\nc1|c2\n" + zero),
           "b1 receipt disagrees; ");
  c.expect(run_process(cli + " receipt verify --receipt " + (dir / "receipts.csv").string() + " --ballots " +
                       (dir / "ballots.csv").string()) == 0,
           "receipts not all MATCH; ");
  auto tampered = published;
  tampered[5].selections.insert("AB");
  io::write_file(work / "tampered.csv", io::write_ballots_csv(tampered));
  c.expect(verify_receipt(receipts[5], tampered) == ReceiptCheck::kNoMatch, "tampered ballot still matches; ");
  c.expect(run_process(cli + " receipt verify --receipt " + (dir / "receipts.csv").string() + " --ballots " +
                       (work / "tampered.csv").string()) == 2,
           "CLI receipt check missed tampering; ");
  fs::remove_all(work);

  std::ostringstream s;
  s << "CONFIRMED after export; " << caught << "/" << mutations << " single-byte mutations flagged in process, "
    << process_runs << " via CLI; " << digests_ok << " receipt digests match reference";
  return s.str();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string(Check&)>>> criteria = {
      {"monthey_golden_run", golden_run},
      {"unconstrained_baseline", unconstrained},
      {"price_report", price},
      {"deficit_table", deficits},
      {"forced_set", forced},
      {"phase1_aggregation", phase_one},
      {"oracle_property_suite", oracle_suite},
      {"relaxation_properties", relaxation},
      {"ledger_round_trip", ledger},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    std::string detail;
    try {
      detail = fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    failed += !c.ok;
    std::cout << (c.ok ? "PASS " : "FAIL ") << name << ": " << (c.ok ? detail : c.why.str()) << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
