#include "reppact/explain.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "reppact/serialize.hpp"

namespace reppact {

std::vector<DeficitRow> DeficitReport::unmet() const {
  std::vector<DeficitRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [](const DeficitRow& r) { return !r.met; });
  return out;
}

const DeficitRow* DeficitReport::find(std::string_view attribute, std::string_view category) const {
  for (const auto& r : rows) {
    if (r.attribute == attribute && r.category == category) return &r;
  }
  return nullptr;
}

DeficitReport deficit_report(std::span<const CandidateId> committee, const ElectionConfig& config) {
  std::vector<const CandidateRecord*> members;
  for (const auto& id : committee) {
    const CandidateRecord* rec = config.find_candidate(id);
    if (rec == nullptr) throw Error(ErrorCode::kUnknownCandidate, "candidate '" + id + "' not in roster");
    members.push_back(rec);
  }
  DeficitReport report;
  for (const auto& crit : config.criteria) {
    for (const auto& cat : crit.categories) {
      DeficitRow row;
      row.attribute = crit.attribute;
      row.category = cat.category;
      row.target = cat.bound;
      for (const CandidateRecord* rec : members) {
        const std::string* v = rec->attribute(crit.attribute);
        if (v && *v == cat.category) ++row.reached;
      }
      row.difference = cat.bound.kind == BoundKind::kAtMost ? cat.bound.count - row.reached
                                                            : row.reached - cat.bound.count;
      row.met = cat.bound.admits(row.reached);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

PriceReport price_from_objectives(std::int64_t unconstrained, std::int64_t constrained, std::int64_t total) {
  PriceReport p;
  p.total_votes_cast = total;
  p.unconstrained_objective = unconstrained;
  p.constrained_objective = constrained;
  p.price = unconstrained - constrained;
  p.lost_votes_unconstrained = total - unconstrained;
  p.lost_votes_constrained = total - constrained;
  p.lost_unconstrained_pct_tenths = tenths_of_percent(p.lost_votes_unconstrained, total);
  p.lost_constrained_pct_tenths = tenths_of_percent(p.lost_votes_constrained, total);
  p.price_pct_tenths = p.lost_constrained_pct_tenths - p.lost_unconstrained_pct_tenths;
  return p;
}

namespace {

std::int64_t unconstrained_objective(const TallyResult& tally, const ElectionConfig& config,
                                     const SolveOptions& options) {
  ElectionConfig plain = config;
  plain.criteria.clear();
  plain.tie_policy = TiePolicy::kLexicographic;
  plain.relaxation_policy = RelaxationPolicy::kFail;
  SolveOptions quick = options;
  quick.compute_forced = false;
  const SolveOutcome o = solve(tally, plain, quick);
  if (!o.has_committee()) throw Error(ErrorCode::kInfeasible, "fewer candidates than seats");
  return o.objective;
}

std::vector<CandidateId> by_votes(std::vector<CandidateId> ids, const TallyResult& tally) {
  std::sort(ids.begin(), ids.end(), [&](const CandidateId& a, const CandidateId& b) {
    const auto va = tally.votes_for(a);
    const auto vb = tally.votes_for(b);
    return va != vb ? va > vb : a < b;
  });
  return ids;
}

}  // namespace

PriceReport price_report(const TallyResult& tally, const ElectionConfig& config, const SolveOptions& options) {
  SolveOptions quick = options;
  quick.compute_forced = false;
  ElectionConfig lex = config;
  lex.tie_policy = TiePolicy::kLexicographic;
  const SolveOutcome constrained = solve(tally, lex, quick);
  if (!constrained.has_committee()) {
    throw Error(ErrorCode::kInfeasible, "no committee satisfies the criteria");
  }
  return price_from_objectives(unconstrained_objective(tally, config, options), constrained.objective,
                               tally.total_votes_cast);
}

std::string_view to_string(DisplacementReason reason) {
  return reason == DisplacementReason::kForced ? "FORCED" : "DEFICIT";
}

DisplacementReport displacement_report(const SolveOutcome& outcome, const TallyResult& tally,
                                       const ElectionConfig& config) {
  DisplacementReport report;
  const int k = config.seats;
  if (!outcome.has_committee() || k <= 0 || static_cast<int>(config.roster.size()) < k) return report;

  std::vector<std::int64_t> all_votes;
  for (const auto& c : config.roster) all_votes.push_back(tally.votes_for(c.candidate_id));
  std::nth_element(all_votes.begin(), all_votes.begin() + (k - 1), all_votes.end(), std::greater<>());
  report.cut_line_votes = all_votes[k - 1];

  const std::set<CandidateId> elected(outcome.committee.begin(), outcome.committee.end());
  const std::set<CandidateId> forced(outcome.forced.begin(), outcome.forced.end());
  std::vector<CandidateId> below_cut;
  for (const auto& id : outcome.committee) {
    if (tally.votes_for(id) >= report.cut_line_votes) {
      report.top_elected.push_back(id);
    } else {
      below_cut.push_back(id);
    }
  }
  report.top_elected = by_votes(report.top_elected, tally);
  report.partial_committee = report.top_elected;
  for (const auto& id : outcome.forced) {
    if (std::find(report.partial_committee.begin(), report.partial_committee.end(), id) ==
        report.partial_committee.end()) {
      report.partial_committee.push_back(id);
    }
  }
  report.partial_committee = by_votes(report.partial_committee, tally);
  report.partial_deficits = deficit_report(report.partial_committee, config);
  if (below_cut.empty()) return report;

  const DeficitReport before_forced = deficit_report(report.top_elected, config);
  std::map<std::pair<std::string, std::string>, int> supply;
  for (const auto& c : config.roster) {
    for (const auto& [attr, value] : c.attributes) ++supply[{attr, value}];
  }

  for (const auto& id : by_votes(below_cut, tally)) {
    const CandidateRecord* rec = config.find_candidate(id);
    DisplacementRecord r;
    r.candidate_id = id;
    r.votes = tally.votes_for(id);
    for (const auto& other : config.roster) {
      if (!elected.contains(other.candidate_id) && tally.votes_for(other.candidate_id) > r.votes) {
        r.outranked.push_back(other.candidate_id);
      }
    }
    r.outranked = by_votes(r.outranked, tally);

    auto cite = [&](const DeficitReport& basis, bool scarce_only) {
      std::vector<DeficitCitation> out;
      for (const auto& crit : config.criteria) {
        const std::string* value = rec ? rec->attribute(crit.attribute) : nullptr;
        if (value == nullptr) continue;
        const DeficitRow* row = basis.find(crit.attribute, *value);
        if (row == nullptr || row->difference >= 0 || row->target.kind == BoundKind::kAtMost) continue;
        if (scarce_only && supply[{crit.attribute, *value}] != row->target.lower()) continue;
        out.push_back({crit.attribute, *value, row->difference});
      }
      return out;
    };

    if (forced.contains(id)) {
      r.reason = DisplacementReason::kForced;
      r.categories = cite(before_forced, true);
      if (r.categories.empty()) r.categories = cite(before_forced, false);
    } else {
      r.reason = DisplacementReason::kDeficit;
      r.categories = cite(report.partial_deficits, false);
    }
    report.records.push_back(std::move(r));
  }
  return report;
}

ElectionReport build_report(const TallyResult& tally, const ElectionConfig& config, const SolveOutcome& outcome,
                            const SolveOptions& options) {
  ElectionReport report;
  report.config = config;
  report.tally = tally;
  report.outcome = outcome;
  if (outcome.has_committee()) {
    report.price = price_from_objectives(unconstrained_objective(tally, config, options), outcome.objective,
                                         tally.total_votes_cast);
    report.committee_status = deficit_report(outcome.committee, config);
  }
  report.displacement = displacement_report(outcome, tally, config);
  return report;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "text" || text == "TEXT") return ReportFormat::kText;
  if (text == "json" || text == "JSON") return ReportFormat::kJson;
  if (text == "markdown" || text == "MARKDOWN" || text == "md") return ReportFormat::kMarkdown;
  throw Error(ErrorCode::kParse, "unknown report format '" + std::string(text) + "'");
}

namespace {

std::vector<std::string> shown_attributes(const ElectionConfig& config) {
  std::vector<std::string> attrs;
  for (const auto& crit : config.criteria) attrs.push_back(crit.attribute);
  if (!attrs.empty()) return attrs;
  std::set<std::string> all;
  for (const auto& c : config.roster) {
    for (const auto& [k, v] : c.attributes) all.insert(k);
  }
  return {all.begin(), all.end()};
}

std::string join(const std::vector<CandidateId>& ids, std::string_view sep = ", ") {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : std::string(sep)) + id;
  return out;
}

std::string signed_int(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

// Plain text and markdown share one layout; only table syntax differs.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(bool markdown) const {
    std::ostringstream out;
    if (markdown) {
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        out << "|";
        for (const auto& cell : rows_[r]) out << " " << cell << " |";
        out << "\n";
        if (r == 0) {
          out << "|";
          for (std::size_t c = 0; c < rows_[0].size(); ++c) out << " --- |";
          out << "\n";
        }
      }
      return out.str();
    }
    std::vector<std::size_t> width(rows_[0].size(), 0);
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += row[c];
        if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << "\n";
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string render_document(const ElectionReport& r, bool markdown) {
  std::ostringstream out;
  const auto heading = [&](std::string_view title) {
    out << "\n" << (markdown ? "## " : "") << title << "\n";
    if (!markdown) out << std::string(title.size(), '-') << "\n";
    out << (markdown ? "\n" : "");
  };

  out << (markdown ? "# " : "") << "Election " << r.config.election_id << "\n";
  if (markdown) out << "\n";
  out << "Seats: " << r.config.seats << ", candidates: " << r.config.roster.size()
      << ", votes cast: " << r.tally.total_votes_cast << "\n";
  if (r.config.roster.empty()) return out.str();

  out << "Status: " << to_string(r.outcome.status);
  if (r.outcome.has_committee()) out << ", objective: " << r.outcome.objective << " votes";
  out << "\n";

  heading("Results");
  const auto attrs = shown_attributes(r.config);
  std::vector<std::string> header = {"Candidate"};
  header.insert(header.end(), attrs.begin(), attrs.end());
  header.push_back("Votes");
  header.push_back("Elected");
  Table results(header);
  std::vector<CandidateId> ids;
  for (const auto& c : r.config.roster) ids.push_back(c.candidate_id);
  const std::set<CandidateId> elected(r.outcome.committee.begin(), r.outcome.committee.end());
  for (const auto& id : by_votes(ids, r.tally)) {
    const CandidateRecord* c = r.config.find_candidate(id);
    std::vector<std::string> row = {c->display_name.empty() ? id : c->display_name};
    for (const auto& a : attrs) {
      const std::string* v = c->attribute(a);
      row.push_back(v ? *v : "");
    }
    row.push_back(std::to_string(r.tally.votes_for(id)));
    row.push_back(elected.contains(id) ? "Yes" : "");
    results.add(std::move(row));
  }
  out << results.render(markdown);

  if (!r.outcome.applied_relaxations.empty()) {
    heading("Relaxations applied");
    for (const auto& rec : r.outcome.applied_relaxations) {
      out << (markdown ? "- " : "  ") << rec.attribute;
      if (rec.action == RelaxationAction::kFreeSeats) {
        out << "/" << rec.category << ": " << rec.old_bound->symbol() << " -> " << rec.new_bound->symbol() << " ("
            << rec.freed_seats << " free seat" << (rec.freed_seats == 1 ? "" : "s") << ")\n";
      } else {
        out << ": criterion dropped\n";
      }
    }
  }

  if (r.outcome.co_optimal_committees.size() > 1) {
    heading("Tie");
    out << r.outcome.co_optimal_committees.size() << (r.outcome.co_optimal_truncated ? "+" : "")
        << " committees share the optimum; the tie must be broken by the agreed procedure.\n";
  }

  if (!r.committee_status.rows.empty()) {
    heading("Criteria status");
    Table status({"Criterion", "Category", "Target", "Reached", "Difference"});
    for (const auto& row : r.committee_status.rows) {
      status.add({row.attribute, row.category, row.target.symbol(), std::to_string(row.reached),
                  signed_int(row.difference)});
    }
    out << status.render(markdown);
  }

  if (r.price) {
    const PriceReport& p = *r.price;
    heading("Price of criteria");
    out << "Top " << r.config.seats << " by votes: " << p.unconstrained_objective << " votes ("
        << p.lost_votes_unconstrained << " lost, " << format_tenths(p.lost_unconstrained_pct_tenths) << "%)\n";
    out << "Winning list with criteria: " << p.constrained_objective << " votes (" << p.lost_votes_constrained
        << " lost, " << format_tenths(p.lost_constrained_pct_tenths) << "%)\n";
    out << "Price: " << p.price << " votes (" << format_tenths(p.price_pct_tenths) << "% of " << p.total_votes_cast
        << " votes cast)\n";
  }

  if (!r.outcome.forced.empty()) {
    heading("Protected candidates");
    out << "Elected in every committee that meets the criteria: " << join(r.outcome.forced) << "\n";
  }

  const DisplacementReport& d = r.displacement;
  if (!d.records.empty()) {
    heading("Why candidates below the cut line were elected");
    out << "Heuristic explanation; the optimal winning list above is authoritative.\n";
    if (markdown) out << "\n";
    out << "Elected with at least " << d.cut_line_votes << " votes plus protected candidates: "
        << join(d.partial_committee) << "\n";
    if (markdown) out << "\n";
    Table partial({"Criterion", "Category", "Target", "Reached", "Difference"});
    for (const auto& row : d.partial_deficits.rows) {
      partial.add({row.attribute, row.category, row.target.symbol(), std::to_string(row.reached),
                   signed_int(row.difference)});
    }
    out << partial.render(markdown);
    if (markdown) out << "\n";
    for (const auto& rec : d.records) {
      out << (markdown ? "- " : "  ") << rec.candidate_id << " (" << rec.votes << " votes) ";
      out << (rec.reason == DisplacementReason::kForced ? "protected by " : "fills ");
      std::string cats;
      for (const auto& c : rec.categories) {
        cats += (cats.empty() ? "" : ", ") + c.attribute + " " + c.category + " (" + signed_int(c.difference) + ")";
      }
      out << (cats.empty() ? "a combination of criteria" : cats);
      if (!rec.outranked.empty()) out << "; ahead of " << join(rec.outranked);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string render_report(const ElectionReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return to_json(report).dump(2) + "\n";
    case ReportFormat::kText: return render_document(report, false);
    case ReportFormat::kMarkdown: return render_document(report, true);
  }
  return {};
}

}  // namespace reppact
