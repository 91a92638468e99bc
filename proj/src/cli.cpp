#include "reppact/cli.hpp"

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "reppact/checker.hpp"
#include "reppact/criteria_vote.hpp"
#include "reppact/explain.hpp"
#include "reppact/io.hpp"
#include "reppact/ledger.hpp"
#include "reppact/lp_format.hpp"
#include "reppact/serialize.hpp"
#include "reppact/service.hpp"
#include "reppact/solver.hpp"
#include "reppact/tally.hpp"

namespace fs = std::filesystem;

namespace reppact {

namespace {

struct ExitRequest {
  int code;
};

ElectionConfig load_config(const fs::path& path, const std::string& candidates = {}) {
  ElectionConfig config = config_from_json(parse_json(io::read_file(path)));
  if (!candidates.empty()) config.roster = io::parse_candidates_csv(io::read_file(candidates));
  return config;
}

void require_valid(const ElectionConfig& config, std::ostream& err) {
  const auto violations = validate_config(config);
  if (violations.empty()) return;
  for (const auto& v : violations) err << "config: " << v.code << ": " << v.message << "\n";
  throw ExitRequest{kExitUsage};
}

std::vector<Ballot> load_ballots(const fs::path& path, std::ostream& err) {
  io::BallotFile file = io::parse_ballots_csv(io::read_file(path));
  for (const auto& w : file.warnings) err << "warning: " << w << "\n";
  return std::move(file.ballots);
}

TallyResult count(std::span<const Ballot> ballots, const ElectionConfig& config, unsigned workers) {
  return workers > 1 ? count_votes_parallel(ballots, config, workers) : count_votes(ballots, config);
}

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    io::write_file(path, content);
  }
}

std::string join(const std::vector<CandidateId>& ids, std::string_view sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += sep;
    s += ids[i];
  }
  return s;
}

int exit_for(const SolveOutcome& outcome) {
  return outcome.status == SolveStatus::kInfeasible ? kExitInfeasible : kExitOk;
}

void print_outcome(const SolveOutcome& outcome, std::ostream& out) {
  out << "status " << to_string(outcome.status) << "\n";
  if (!outcome.has_committee()) return;
  out << "objective " << outcome.objective << "\n";
  out << "committee " << join(outcome.committee) << "\n";
  if (!outcome.forced.empty()) out << "forced " << join(outcome.forced) << "\n";
  if (outcome.co_optimal_committees.size() > 1) {
    out << "co_optimal " << outcome.co_optimal_committees.size() << (outcome.co_optimal_truncated ? "+" : "")
        << "\n";
  }
  for (const auto& r : outcome.applied_relaxations) {
    out << "relaxed " << to_string(r.action) << " " << r.attribute;
    if (!r.category.empty()) out << " " << r.category;
    if (r.old_bound && r.new_bound) out << " " << r.old_bound->symbol() << " -> " << r.new_bound->symbol();
    out << "\n";
  }
}

struct SolveArgs {
  std::string config;
  std::string candidates;
  std::string tally;
  std::string ballots;
  std::string out;
  std::string tie_policy;
  std::string relax;
  std::string emit_lp;
  std::string multi_district;
  std::int64_t node_budget = SolveOptions{}.node_budget;
  unsigned workers = 1;
  bool no_forced = false;
};

// Everything a single district solve produces.
struct DistrictResult {
  PublishedOutcome published;
  ElectionConfig config;
  TallyResult tally;
};

DistrictResult solve_district(const fs::path& config_path, const std::string& candidates,
                              const std::optional<fs::path>& tally_path, const std::optional<fs::path>& ballots_path,
                              const SolveArgs& args, std::ostream& err) {
  DistrictResult r;
  r.config = load_config(config_path, candidates);
  if (!args.tie_policy.empty()) r.config.tie_policy = parse_tie_policy(args.tie_policy);
  if (!args.relax.empty()) r.config.relaxation_policy = parse_relaxation_policy(args.relax);
  require_valid(r.config, err);

  r.published.election_id = r.config.election_id;
  if (ballots_path) {
    const auto ballots = load_ballots(*ballots_path, err);
    r.tally = count(ballots, r.config, 1);
    r.published.tally = r.tally;
    r.published.ledger_digest = ledger_digest(ballots);
  } else {
    r.tally = io::parse_tally_csv(io::read_file(*tally_path));
  }
  SolveOptions options;
  options.node_budget = args.node_budget;
  options.compute_forced = !args.no_forced;
  r.published.outcome = solve(r.tally, r.config, options);
  return r;
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  if (args.multi_district.empty()) {
    if (args.config.empty() || args.tally.empty() == args.ballots.empty()) {
      err << "solve: needs --config and exactly one of --tally / --ballots\n";
      return kExitUsage;
    }
    std::optional<fs::path> tally_path;
    std::optional<fs::path> ballots_path;
    if (!args.tally.empty()) tally_path = args.tally;
    if (!args.ballots.empty()) ballots_path = args.ballots;
    DistrictResult r = solve_district(args.config, args.candidates, tally_path, ballots_path, args, err);
    if (!args.emit_lp.empty()) io::write_file(args.emit_lp, write_lp(r.tally, r.config));
    if (!args.out.empty()) io::write_file(args.out, to_json(r.published).dump(2) + "\n");
    print_outcome(r.published.outcome, out);
    return exit_for(r.published.outcome);
  }

  // One subdirectory per district: config.json plus tally.csv or ballots.csv.
  std::vector<fs::path> districts;
  for (const auto& entry : fs::directory_iterator(args.multi_district)) {
    if (entry.is_directory() && fs::exists(entry.path() / "config.json")) districts.push_back(entry.path());
  }
  std::sort(districts.begin(), districts.end());
  if (districts.empty()) {
    err << "solve: no district directories with config.json under " << args.multi_district << "\n";
    return kExitUsage;
  }

  struct Slot {
    std::optional<DistrictResult> result;
    std::string error;
    int code = kExitOk;
    std::ostringstream log;
  };
  std::vector<Slot> slots(districts.size());
  auto work = [&](std::size_t i) {
    const fs::path& dir = districts[i];
    std::optional<fs::path> tally_path;
    std::optional<fs::path> ballots_path;
    if (fs::exists(dir / "ballots.csv")) {
      ballots_path = dir / "ballots.csv";
    } else {
      tally_path = dir / "tally.csv";
    }
    try {
      slots[i].result = solve_district(dir / "config.json", {}, tally_path, ballots_path, args, slots[i].log);
    } catch (const ExitRequest& e) {
      slots[i].code = e.code;
      slots[i].error = "invalid config";
    } catch (const Error& e) {
      slots[i].code = e.code() == ErrorCode::kNodeBudgetExceeded ? kExitNodeBudget : kExitUsage;
      slots[i].error = e.what();
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(args.workers, 1, districts.size());
  std::vector<std::future<void>> running;
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w) {
    running.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < districts.size(); i = next++) work(i);
    }));
  }
  for (auto& f : running) f.get();

  int code = kExitOk;
  for (std::size_t i = 0; i < districts.size(); ++i) {
    const std::string name = districts[i].filename().string();
    err << slots[i].log.str();
    if (!slots[i].result) {
      err << name << ": " << slots[i].error << "\n";
      code = std::max(code, slots[i].code);
      continue;
    }
    const auto& published = slots[i].result->published;
    const fs::path target = args.out.empty() ? districts[i] / "outcome.json" : fs::path(args.out) / (name + ".json");
    if (!args.out.empty()) fs::create_directories(args.out);
    io::write_file(target, to_json(published).dump(2) + "\n");
    out << name << " " << to_string(published.outcome.status);
    if (published.outcome.has_committee()) out << " " << published.outcome.objective;
    out << "\n";
    code = std::max(code, exit_for(published.outcome));
  }
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representation-constrained committee elections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "reppact 0.1.0");

  // criteria-tally
  std::string q_path, phase1_path, ct_out, ct_base, ct_config_out;
  auto* ct = app.add_subcommand("criteria-tally", "Tally the phase-1 vote on proposed criteria");
  ct->add_option("--questions", q_path, "questions JSON")->required();
  ct->add_option("--ballots", phase1_path, "phase-1 answers CSV (ballot_id,question_id,answer)")->required();
  ct->add_option("--out", ct_out, "write the result JSON here");
  ct->add_option("--base", ct_base, "base election config without criteria");
  ct->add_option("--config-out", ct_config_out, "write base + accepted criteria here (needs --base)");

  // tally
  std::string t_config, t_candidates, t_ballots, t_out, t_rejected;
  unsigned t_workers = 1;
  auto* tally_cmd = app.add_subcommand("tally", "Count approval ballots");
  tally_cmd->add_option("--config", t_config, "election config JSON")->required();
  tally_cmd->add_option("--candidates", t_candidates, "candidate roster CSV replacing the config roster");
  tally_cmd->add_option("--ballots", t_ballots, "ballots CSV")->required();
  tally_cmd->add_option("--out", t_out, "tally CSV output (default stdout)");
  tally_cmd->add_option("--rejected-out", t_rejected, "rejected ballots CSV");
  tally_cmd->add_option("--workers", t_workers, "counting threads")->check(CLI::PositiveNumber);

  // solve
  SolveArgs s;
  auto* solve_cmd = app.add_subcommand("solve", "Find the vote-maximizing committee meeting the criteria");
  solve_cmd->add_option("--config", s.config, "election config JSON");
  solve_cmd->add_option("--candidates", s.candidates, "candidate roster CSV replacing the config roster");
  solve_cmd->add_option("--tally", s.tally, "tally CSV");
  solve_cmd->add_option("--ballots", s.ballots, "published ballots CSV; embeds tally and ledger digest");
  solve_cmd->add_option("--out", s.out, "outcome JSON (a directory with --multi-district)");
  solve_cmd->add_option("--tie-policy", s.tie_policy, "report-all | lex");
  solve_cmd->add_option("--relax", s.relax, "fail | free-seats-then-drop");
  solve_cmd->add_option("--emit-lp", s.emit_lp, "also write the model in CPLEX LP format");
  solve_cmd->add_option("--node-budget", s.node_budget, "search node limit")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--multi-district", s.multi_district, "directory of district subdirectories");
  solve_cmd->add_option("--workers", s.workers, "parallel district solves")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--no-forced", s.no_forced, "skip the forced-candidate analysis");

  // explain
  std::string e_config, e_candidates, e_tally, e_outcome, e_format = "text", e_out;
  auto* explain_cmd = app.add_subcommand("explain", "Render the results report for an outcome");
  explain_cmd->add_option("--config", e_config, "election config JSON")->required();
  explain_cmd->add_option("--candidates", e_candidates, "candidate roster CSV replacing the config roster");
  explain_cmd->add_option("--tally", e_tally, "tally CSV (default: the tally embedded in the outcome)");
  explain_cmd->add_option("--outcome", e_outcome, "outcome JSON from solve")->required();
  explain_cmd->add_option("--format", e_format, "text | json | markdown");
  explain_cmd->add_option("--out", e_out, "report output (default stdout)");

  // feasibility
  std::string f_config, f_roster;
  int f_seats = 0;
  auto* feas_cmd = app.add_subcommand("feasibility", "Check whether a candidate pool can meet the criteria");
  feas_cmd->add_option("--config", f_config, "election config JSON")->required();
  feas_cmd->add_option("--roster", f_roster, "candidate pool CSV replacing the config roster");
  feas_cmd->add_option("--seats", f_seats, "override the number of seats");

  // validate
  std::string v_config, v_candidates;
  auto* validate_cmd = app.add_subcommand("validate", "Check an election config for structural errors");
  validate_cmd->add_option("--config", v_config, "election config JSON")->required();
  validate_cmd->add_option("--candidates", v_candidates, "candidate roster CSV replacing the config roster");

  // verify
  std::string vc_config, vc_candidates, vc_ballots, vc_outcome;
  auto* verify_cmd = app.add_subcommand("verify", "Recount published ballots and compare with a published outcome");
  verify_cmd->add_option("--config", vc_config, "election config JSON")->required();
  verify_cmd->add_option("--candidates", vc_candidates, "candidate roster CSV replacing the config roster");
  verify_cmd->add_option("--ballots", vc_ballots, "published ballots CSV")->required();
  verify_cmd->add_option("--outcome", vc_outcome, "published outcome JSON")->required();

  // receipt verify
  std::string r_receipt, r_ballots;
  auto* receipt_cmd = app.add_subcommand("receipt", "Voter receipt operations");
  receipt_cmd->require_subcommand(1);
  auto* receipt_verify = receipt_cmd->add_subcommand("verify", "Check receipts against the published ballots");
  receipt_verify->add_option("--receipt", r_receipt, "receipts CSV (ballot_id,salt,digest)")->required();
  receipt_verify->add_option("--ballots", r_ballots, "published ballots CSV")->required();

  // publish
  std::string p_ballots, p_out, p_receipts;
  std::optional<std::uint64_t> p_seed;
  auto* publish_cmd = app.add_subcommand("publish", "Salt and digest ballots for publication");
  publish_cmd->add_option("--ballots", p_ballots, "raw ballots CSV")->required();
  publish_cmd->add_option("--out", p_out, "published ballots CSV")->required();
  publish_cmd->add_option("--receipts", p_receipts, "private receipts CSV")->required();
  publish_cmd->add_option("--salt-seed", p_seed, "deterministic salts (testing only)");

  // check-assignment
  std::string a_config, a_tally, a_assignment;
  auto* assign_cmd = app.add_subcommand("check-assignment", "Check a 0/1 assignment from an external solver");
  assign_cmd->add_option("--config", a_config, "election config JSON")->required();
  assign_cmd->add_option("--tally", a_tally, "tally CSV")->required();
  assign_cmd->add_option("--assignment", a_assignment, "lines of '<variable or id> <value>'")->required();

  // serve
  std::string sv_config, sv_candidates, sv_tally, sv_listen = "127.0.0.1:8080", sv_origin;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the election over HTTP");
  serve_cmd->add_option("--config", sv_config, "election config JSON")->required();
  serve_cmd->add_option("--candidates", sv_candidates, "candidate roster CSV replacing the config roster");
  serve_cmd->add_option("--tally", sv_tally, "tally CSV")->required();
  serve_cmd->add_option("--listen", sv_listen, "host:port");
  serve_cmd->add_option("--cors-origin", sv_origin, "allowed browser origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ct) {
      const auto questions = questions_from_json(parse_json(io::read_file(q_path)));
      const auto answers = parse_criteria_ballots_csv(io::read_file(phase1_path));
      const CriteriaVoteResult result = tally_criteria_vote(questions, answers);
      for (const auto& r : result.rejected) err << "rejected " << r.ballot_id << ": " << r.reason << "\n";
      out << "participants " << result.participants << "\n";
      for (const auto& q : result.questions) {
        out << q.question_id << " yes " << format_tenths(q.yes_pct_tenths) << " no " << format_tenths(q.no_pct_tenths)
            << " blank " << format_tenths(q.blank_pct_tenths) << (q.accepted ? " ACCEPTED" : " REJECTED") << "\n";
      }
      if (!ct_out.empty()) io::write_file(ct_out, to_json(result).dump(2) + "\n");
      if (!ct_config_out.empty()) {
        if (ct_base.empty()) {
          err << "criteria-tally: --config-out needs --base\n";
          return kExitUsage;
        }
        const ElectionConfig config = build_election_config(load_config(ct_base), result);
        io::write_file(ct_config_out, to_json(config).dump(2) + "\n");
      }
      return kExitOk;
    }

    if (*tally_cmd) {
      const ElectionConfig config = load_config(t_config, t_candidates);
      require_valid(config, err);
      const auto ballots = load_ballots(t_ballots, err);
      const TallyResult tally = count(ballots, config, t_workers);
      write_or_print(t_out, io::write_tally_csv(tally), out);
      if (!t_rejected.empty()) {
        std::string csv = "ballot_id,reason\n";
        for (const auto& r : tally.ballots_rejected) csv += io::csv_row({r.ballot_id, r.reason});
        io::write_file(t_rejected, csv);
      }
      err << "ballots_counted " << tally.ballots_counted << " rejected " << tally.ballots_rejected.size()
          << " votes " << tally.total_votes_cast << "\n";
      return kExitOk;
    }

    if (*solve_cmd) return cmd_solve(s, out, err);

    if (*explain_cmd) {
      const ElectionConfig config = load_config(e_config, e_candidates);
      const PublishedOutcome published = published_outcome_from_json(parse_json(io::read_file(e_outcome)));
      TallyResult tally;
      if (!e_tally.empty()) {
        tally = io::parse_tally_csv(io::read_file(e_tally));
      } else if (published.tally) {
        tally = *published.tally;
      } else {
        err << "explain: the outcome has no embedded tally; pass --tally\n";
        return kExitUsage;
      }
      ElectionConfig active = config;
      if (published.outcome.status == SolveStatus::kRelaxedOptimal) active = relax_until_feasible(tally, config).config;
      const ElectionReport report = build_report(tally, active, published.outcome);
      write_or_print(e_out, render_report(report, parse_report_format(e_format)), out);
      return kExitOk;
    }

    if (*feas_cmd) {
      ElectionConfig config = load_config(f_config, f_roster);
      if (f_seats > 0) config.seats = f_seats;
      require_valid(config, err);
      const FeasibilityReport report = check_feasibility(config);
      out << to_json(report).dump(2) << "\n";
      return report.feasible ? kExitOk : kExitInfeasible;
    }

    if (*validate_cmd) {
      const ElectionConfig config = load_config(v_config, v_candidates);
      require_valid(config, err);
      out << "valid\n";
      return kExitOk;
    }

    if (*verify_cmd) {
      const ElectionConfig config = load_config(vc_config, vc_candidates);
      require_valid(config, err);
      // A published list that no longer parses cannot match what was counted.
      std::vector<Ballot> ballots;
      try {
        ballots = load_ballots(vc_ballots, err);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kParse) throw;
        out << "MISMATCH\nballots: " << e.what() << "\n";
        return kExitMismatch;
      }
      const PublishedOutcome claim = published_outcome_from_json(parse_json(io::read_file(vc_outcome)));
      const CountVerification v = verify_count(ballots, config, claim);
      if (v.confirmed) {
        out << "CONFIRMED\n";
        return kExitOk;
      }
      out << "MISMATCH\n";
      for (const auto& d : v.diffs) {
        out << d.field << ": published " << d.published << ", recomputed " << d.recomputed << "\n";
      }
      return kExitMismatch;
    }

    if (*receipt_verify) {
      const auto receipts = parse_receipts_csv(io::read_file(r_receipt));
      const auto ballots = load_ballots(r_ballots, err);
      bool all = !receipts.empty();
      for (const auto& r : receipts) {
        const bool match = verify_receipt(r, ballots) == ReceiptCheck::kMatch;
        all = all && match;
        out << r.ballot_id << " " << (match ? "MATCH" : "NO_MATCH") << "\n";
      }
      return all ? kExitOk : kExitMismatch;
    }

    if (*publish_cmd) {
      const auto ballots = load_ballots(p_ballots, err);
      SaltSource salts = p_seed ? SaltSource(*p_seed) : SaltSource();
      const Publication pub = publish_ballots(ballots, salts);
      io::write_file(p_out, io::write_ballots_csv(pub.ballots));
      io::write_file(p_receipts, write_receipts_csv(pub.receipts));
      out << "published " << pub.ballots.size() << " ballots\n";
      out << "ledger_digest " << ledger_digest(pub.ballots) << "\n";
      return kExitOk;
    }

    if (*assign_cmd) {
      const ElectionConfig config = load_config(a_config);
      require_valid(config, err);
      const TallyResult tally = io::parse_tally_csv(io::read_file(a_tally));
      const auto committee = read_assignment(io::read_file(a_assignment), config);
      const auto violations = check_committee(committee, config);
      std::int64_t objective = 0;
      for (const auto& id : committee) objective += tally.votes_for(id);
      out << "committee " << join(committee) << "\n" << "objective " << objective << "\n";
      for (const auto& v : violations) out << "violation " << v.code << ": " << v.message << "\n";
      return violations.empty() ? kExitOk : kExitMismatch;
    }

    if (*serve_cmd) {
      const ElectionConfig config = load_config(sv_config, sv_candidates);
      require_valid(config, err);
      const TallyResult tally = io::parse_tally_csv(io::read_file(sv_tally));
      const auto colon = sv_listen.rfind(':');
      if (colon == std::string::npos) {
        err << "serve: --listen must be host:port\n";
        return kExitUsage;
      }
      ServiceOptions options;
      options.cors_origin = sv_origin;
      ElectionService service(config, tally, options);
      HttpServer server(service);
      const int port = server.bind(sv_listen.substr(0, colon), std::stoi(sv_listen.substr(colon + 1)));
      out << "listening on " << sv_listen.substr(0, colon) << ":" << port << std::endl;
      server.listen();
      return kExitOk;
    }
  } catch (const ExitRequest& e) {
    return e.code;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kNodeBudgetExceeded: return kExitNodeBudget;
      case ErrorCode::kInfeasible:
      case ErrorCode::kUnsatisfiableEvenEmpty: return kExitInfeasible;
      default: return kExitUsage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace reppact
