#include "reppact/serialize.hpp"

namespace reppact {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::kParse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kParse, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return field<T>(j, key);
}

const Json& array_field(const Json& j, const char* key) {
  static const Json kEmpty = Json::array();
  if (!j.is_object() || !j.contains(key)) return kEmpty;
  const Json& a = j.at(key);
  if (!a.is_array()) throw Error(ErrorCode::kParse, std::string("field '") + key + "' must be an array");
  return a;
}

Json ids_json(const std::vector<CandidateId>& ids) { return Json(ids); }

std::vector<CandidateId> ids_from(const Json& a) {
  std::vector<CandidateId> out;
  for (const auto& e : a) {
    if (!e.is_string()) throw Error(ErrorCode::kParse, "candidate ids must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

double pct(std::int64_t tenths) { return static_cast<double>(tenths) / 10.0; }

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const Bound& bound) { return Json{{"kind", to_string(bound.kind)}, {"n", bound.count}}; }

Bound bound_from_json(const Json& j) {
  Bound b;
  b.kind = parse_bound_kind(field<std::string>(j, "kind"));
  b.count = field<int>(j, "n");
  return b;
}

Json to_json(const CandidateRecord& c) {
  Json attrs = Json::object();
  for (const auto& [k, v] : c.attributes) attrs[k] = v;
  return Json{{"candidate_id", c.candidate_id}, {"display_name", c.display_name}, {"attributes", attrs}};
}

CandidateRecord candidate_from_json(const Json& j) {
  CandidateRecord c;
  c.candidate_id = field<std::string>(j, "candidate_id");
  c.display_name = field_or<std::string>(j, "display_name", "");
  if (j.contains("attributes")) {
    const Json& attrs = j.at("attributes");
    if (!attrs.is_object()) throw Error(ErrorCode::kParse, "'attributes' must be an object");
    for (const auto& [k, v] : attrs.items()) {
      if (!v.is_string()) throw Error(ErrorCode::kParse, "attribute '" + k + "' must be a string");
      c.attributes[k] = v.get<std::string>();
    }
  }
  return c;
}

Json to_json(const CriterionSpec& crit) {
  Json cats = Json::array();
  for (const auto& c : crit.categories) cats.push_back(Json{{"category", c.category}, {"bound", to_json(c.bound)}});
  return Json{{"attribute", crit.attribute}, {"categories", cats}, {"preference_rank", crit.preference_rank}};
}

CriterionSpec criterion_from_json(const Json& j) {
  CriterionSpec crit;
  crit.attribute = field<std::string>(j, "attribute");
  crit.preference_rank = field_or<int>(j, "preference_rank", 1);
  for (const auto& c : array_field(j, "categories")) {
    if (!c.contains("bound")) throw Error(ErrorCode::kParse, "category without 'bound'");
    crit.categories.push_back({field<std::string>(c, "category"), bound_from_json(c.at("bound"))});
  }
  return crit;
}

Json to_json(const ElectionConfig& config) {
  Json roster = Json::array();
  for (const auto& c : config.roster) roster.push_back(to_json(c));
  Json criteria = Json::array();
  for (const auto& c : config.criteria) criteria.push_back(to_json(c));
  return Json{{"election_id", config.election_id},
              {"seats", config.seats},
              {"max_selections", config.max_selections},
              {"roster", roster},
              {"criteria", criteria},
              {"tie_policy", to_string(config.tie_policy)},
              {"relaxation_policy", to_string(config.relaxation_policy)}};
}

ElectionConfig config_from_json(const Json& j) {
  ElectionConfig config;
  config.election_id = field_or<std::string>(j, "election_id", "");
  config.seats = field<int>(j, "seats");
  config.max_selections = field_or<int>(j, "max_selections", config.seats);
  for (const auto& c : array_field(j, "roster")) config.roster.push_back(candidate_from_json(c));
  for (const auto& c : array_field(j, "criteria")) config.criteria.push_back(criterion_from_json(c));
  config.tie_policy = parse_tie_policy(field_or<std::string>(j, "tie_policy", "REPORT_ALL"));
  config.relaxation_policy = parse_relaxation_policy(field_or<std::string>(j, "relaxation_policy", "FAIL"));
  return config;
}

Json to_json(const TallyResult& t) {
  Json votes = Json::object();
  for (const auto& [id, v] : t.votes) votes[id] = v;
  Json rejected = Json::array();
  for (const auto& r : t.ballots_rejected) rejected.push_back(Json{{"ballot_id", r.ballot_id}, {"reason", r.reason}});
  return Json{{"votes", votes},
              {"total_votes_cast", t.total_votes_cast},
              {"ballots_counted", t.ballots_counted},
              {"ballots_rejected", rejected}};
}

TallyResult tally_from_json(const Json& j) {
  TallyResult t;
  if (!j.contains("votes") || !j.at("votes").is_object()) throw Error(ErrorCode::kParse, "tally needs a 'votes' object");
  for (const auto& [id, v] : j.at("votes").items()) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw Error(ErrorCode::kParse, "vote count for '" + id + "' must be a non-negative integer");
    }
    t.votes[id] = v.get<std::int64_t>();
  }
  std::int64_t sum = 0;
  for (const auto& [id, v] : t.votes) sum += v;
  t.total_votes_cast = field_or<std::int64_t>(j, "total_votes_cast", sum);
  t.ballots_counted = field_or<std::int64_t>(j, "ballots_counted", 0);
  for (const auto& r : array_field(j, "ballots_rejected")) {
    t.ballots_rejected.push_back({field<std::string>(r, "ballot_id"), field<std::string>(r, "reason")});
  }
  return t;
}

Json to_json(const RelaxationRecord& r) {
  Json j{{"action", to_string(r.action)}, {"attribute", r.attribute}};
  if (r.action == RelaxationAction::kFreeSeats) {
    j["category"] = r.category;
    j["old_bound"] = to_json(*r.old_bound);
    j["new_bound"] = to_json(*r.new_bound);
    j["freed_seats"] = r.freed_seats;
  } else {
    j["new_bound"] = "DROPPED";
  }
  return j;
}

namespace {

RelaxationRecord relaxation_from_json(const Json& j) {
  RelaxationRecord r;
  const auto action = field<std::string>(j, "action");
  r.attribute = field<std::string>(j, "attribute");
  if (action == "FREE_SEATS") {
    r.action = RelaxationAction::kFreeSeats;
    r.category = field<std::string>(j, "category");
    r.old_bound = bound_from_json(j.at("old_bound"));
    r.new_bound = bound_from_json(j.at("new_bound"));
    r.freed_seats = field<int>(j, "freed_seats");
  } else if (action == "DROPPED") {
    r.action = RelaxationAction::kDropped;
  } else {
    throw Error(ErrorCode::kParse, "unknown relaxation action '" + action + "'");
  }
  return r;
}

}  // namespace

Json to_json(const SolveOutcome& o) {
  Json co = Json::array();
  for (const auto& c : o.co_optimal_committees) co.push_back(ids_json(c));
  Json relax = Json::array();
  for (const auto& r : o.applied_relaxations) relax.push_back(to_json(r));
  return Json{{"status", to_string(o.status)},
              {"committee", ids_json(o.committee)},
              {"objective", o.objective},
              {"forced", ids_json(o.forced)},
              {"tie_policy", to_string(o.tie_policy)},
              {"co_optimal_committees", co},
              {"co_optimal_truncated", o.co_optimal_truncated},
              {"applied_relaxations", relax},
              {"node_count", o.node_count}};
}

SolveOutcome outcome_from_json(const Json& j) {
  SolveOutcome o;
  o.status = parse_solve_status(field<std::string>(j, "status"));
  o.committee = ids_from(array_field(j, "committee"));
  o.objective = field_or<std::int64_t>(j, "objective", 0);
  o.forced = ids_from(array_field(j, "forced"));
  o.tie_policy = parse_tie_policy(field_or<std::string>(j, "tie_policy", "REPORT_ALL"));
  for (const auto& c : array_field(j, "co_optimal_committees")) o.co_optimal_committees.push_back(ids_from(c));
  o.co_optimal_truncated = field_or<bool>(j, "co_optimal_truncated", false);
  for (const auto& r : array_field(j, "applied_relaxations")) o.applied_relaxations.push_back(relaxation_from_json(r));
  o.node_count = field_or<std::int64_t>(j, "node_count", 0);
  return o;
}

Json to_json(const PublishedOutcome& p) {
  Json j{{"election_id", p.election_id}};
  const Json outcome = to_json(p.outcome);
  for (const auto& [k, v] : outcome.items()) j[k] = v;
  if (p.tally) j["tally"] = to_json(*p.tally);
  if (p.ledger_digest) j["ledger_digest"] = *p.ledger_digest;
  return j;
}

PublishedOutcome published_outcome_from_json(const Json& j) {
  PublishedOutcome p;
  p.election_id = field_or<std::string>(j, "election_id", "");
  p.outcome = outcome_from_json(j);
  if (j.contains("tally")) p.tally = tally_from_json(j.at("tally"));
  if (j.contains("ledger_digest")) p.ledger_digest = field<std::string>(j, "ledger_digest");
  return p;
}

Json to_json(const FeasibilityReport& r) {
  Json deficits = Json::array();
  for (const auto& d : r.deficits) {
    deficits.push_back(Json{{"kind", to_string(d.kind)},
                            {"attribute", d.attribute},
                            {"category", d.category},
                            {"required", d.required},
                            {"available", d.available},
                            {"difference", d.difference()}});
  }
  return Json{{"status", r.feasible ? "FEASIBLE" : "INFEASIBLE"}, {"deficits", deficits}};
}

Json to_json(const DeficitReport& r) {
  Json rows = Json::array();
  Json unmet = Json::array();
  for (const auto& row : r.rows) {
    Json jr{{"attribute", row.attribute},
            {"category", row.category},
            {"target", to_json(row.target)},
            {"reached", row.reached},
            {"difference", row.difference},
            {"met", row.met}};
    if (!row.met) unmet.push_back(Json{{"attribute", row.attribute}, {"category", row.category}});
    rows.push_back(std::move(jr));
  }
  return Json{{"rows", rows}, {"unmet", unmet}};
}

Json to_json(const PriceReport& p) {
  return Json{{"total_votes_cast", p.total_votes_cast},
              {"unconstrained_objective", p.unconstrained_objective},
              {"constrained_objective", p.constrained_objective},
              {"price", p.price},
              {"price_pct", pct(p.price_pct_tenths)},
              {"lost_votes_unconstrained", p.lost_votes_unconstrained},
              {"lost_votes_unconstrained_pct", pct(p.lost_unconstrained_pct_tenths)},
              {"lost_votes_constrained", p.lost_votes_constrained},
              {"lost_votes_constrained_pct", pct(p.lost_constrained_pct_tenths)}};
}

Json to_json(const DisplacementReport& d) {
  Json records = Json::array();
  for (const auto& r : d.records) {
    Json cats = Json::array();
    for (const auto& c : r.categories) {
      cats.push_back(Json{{"attribute", c.attribute}, {"category", c.category}, {"difference", c.difference}});
    }
    records.push_back(Json{{"candidate_id", r.candidate_id},
                           {"votes", r.votes},
                           {"reason", to_string(r.reason)},
                           {"outranked", ids_json(r.outranked)},
                           {"categories", cats}});
  }
  return Json{{"heuristic", true},
              {"cut_line_votes", d.cut_line_votes},
              {"top_elected", ids_json(d.top_elected)},
              {"partial_committee", ids_json(d.partial_committee)},
              {"partial_deficits", to_json(d.partial_deficits)},
              {"records", records}};
}

Json to_json(const ElectionReport& r) {
  return Json{{"election_id", r.config.election_id},
              {"seats", r.config.seats},
              {"total_votes_cast", r.tally.total_votes_cast},
              {"outcome", to_json(r.outcome)},
              {"price", r.price ? to_json(*r.price) : Json(nullptr)},
              {"committee_status", to_json(r.committee_status)},
              {"displacement", to_json(r.displacement)}};
}

Json to_json(const CriteriaVoteResult& r) {
  Json questions = Json::array();
  for (const auto& q : r.questions) {
    questions.push_back(Json{{"question_id", q.question_id},
                             {"yes_count", q.yes_count},
                             {"no_count", q.no_count},
                             {"blank_count", q.blank_count},
                             {"yes_pct", pct(q.yes_pct_tenths)},
                             {"no_pct", pct(q.no_pct_tenths)},
                             {"blank_pct", pct(q.blank_pct_tenths)},
                             {"accepted", q.accepted},
                             {"criterion", to_json(q.criterion)}});
  }
  Json rejected = Json::array();
  for (const auto& x : r.rejected) rejected.push_back(Json{{"ballot_id", x.ballot_id}, {"reason", x.reason}});
  return Json{{"participants", r.participants}, {"questions", questions}, {"rejected", rejected}};
}

Json to_json(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) out.push_back(Json{{"code", v.code}, {"message", v.message}});
  return out;
}

std::vector<CriteriaQuestion> questions_from_json(const Json& j) {
  const Json& list = j.is_array() ? j : array_field(j, "questions");
  std::vector<CriteriaQuestion> out;
  for (const auto& q : list) {
    if (!q.contains("criterion")) throw Error(ErrorCode::kParse, "question without 'criterion'");
    out.push_back({field<std::string>(q, "question_id"), criterion_from_json(q.at("criterion")),
                   field_or<std::string>(q, "text", "")});
  }
  return out;
}

}  // namespace reppact
