#include "reppact/lp_format.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "reppact/checker.hpp"

namespace reppact {

namespace {

// LP row names allow a limited character set.
std::string row_name(std::string_view attribute, std::string_view category) {
  std::string out;
  for (char ch : std::string(attribute) + "_" + std::string(category)) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_';
    out.push_back(keep ? ch : '_');
  }
  return out;
}

std::string_view sense(BoundKind kind) {
  switch (kind) {
    case BoundKind::kExact: return "=";
    case BoundKind::kAtLeast: return ">=";
    case BoundKind::kAtMost: return "<=";
  }
  return ">=";
}

}  // namespace

std::string write_lp(const TallyResult& tally, const ElectionConfig& config) {
  std::ostringstream lp;
  lp << "\\ election " << config.election_id << "\n";
  for (std::size_t i = 0; i < config.roster.size(); ++i) {
    lp << "\\ " << lp_variable(i) << " = " << config.roster[i].candidate_id << "\n";
  }
  lp << "Maximize\n obj:";
  for (std::size_t i = 0; i < config.roster.size(); ++i) {
    lp << (i ? " + " : " ") << tally.votes_for(config.roster[i].candidate_id) << " " << lp_variable(i);
  }
  if (config.roster.empty()) lp << " 0 x0";
  lp << "\nSubject To\n seats:";
  for (std::size_t i = 0; i < config.roster.size(); ++i) lp << (i ? " + " : " ") << lp_variable(i);
  lp << " = " << config.seats << "\n";

  int row = 0;
  for (const auto& crit : config.criteria) {
    for (const auto& cat : crit.categories) {
      lp << " c" << row++ << "_" << row_name(crit.attribute, cat.category) << ":";
      bool first = true;
      for (std::size_t i = 0; i < config.roster.size(); ++i) {
        const std::string* v = config.roster[i].attribute(crit.attribute);
        if (v == nullptr || *v != cat.category) continue;
        lp << (first ? " " : " + ") << lp_variable(i);
        first = false;
      }
      // An empty category still needs a term on the left-hand side.
      if (first) lp << " 0 " << lp_variable(0);
      lp << " " << sense(cat.bound.kind) << " " << cat.bound.count << "\n";
    }
  }
  lp << "Binary\n";
  for (std::size_t i = 0; i < config.roster.size(); ++i) lp << " " << lp_variable(i) << "\n";
  lp << "End\n";
  return lp.str();
}

std::vector<CandidateId> read_assignment(std::string_view text, const ElectionConfig& config) {
  std::map<std::string, CandidateId, std::less<>> names;
  for (std::size_t i = 0; i < config.roster.size(); ++i) {
    names.emplace(lp_variable(i), config.roster[i].candidate_id);
  }
  for (const auto& c : config.roster) names.emplace(c.candidate_id, c.candidate_id);

  std::vector<CandidateId> selected;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string name;
    std::string value;
    if (!(fields >> name) || name.starts_with('#') || name.starts_with('\\')) continue;
    if (!(fields >> value)) throw Error(ErrorCode::kParse, "assignment line without value: '" + line + "'");
    auto it = names.find(name);
    if (it == names.end()) throw Error(ErrorCode::kUnknownCandidate, "assignment names unknown variable '" + name + "'");
    double x = 0;
    try {
      x = std::stod(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "assignment value '" + value + "' is not a number");
    }
    const long rounded = std::lround(x);
    if ((rounded != 0 && rounded != 1) || std::abs(x - static_cast<double>(rounded)) > 1e-6) throw Error(ErrorCode::kParse, "assignment value for '" + name + "' is not 0/1");
    if (rounded == 1) selected.push_back(it->second);
  }
  return sorted_ids(std::move(selected));
}

CrossCheck cross_check(ExternalSolverAdapter& adapter, const TallyResult& tally, const ElectionConfig& config,
                       const SolveOutcome& outcome) {
  CrossCheck out;
  out.external_committee = read_assignment(adapter.solve_lp(write_lp(tally, config)), config);
  for (const auto& id : out.external_committee) out.external_objective += tally.votes_for(id);
  out.violations = check_committee(out.external_committee, config);
  out.agrees = out.violations.empty() && outcome.has_committee() && out.external_objective == outcome.objective;
  return out;
}

}  // namespace reppact
