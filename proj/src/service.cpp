#include "reppact/service.hpp"

#include "httplib.h"
#include "reppact/checker.hpp"
#include "reppact/explain.hpp"

namespace reppact {

namespace {

ServiceResponse error_response(int status, std::string_view code, std::string_view message, Json extra = {}) {
  Json body{{"error", code}, {"message", message}};
  if (extra.is_object()) {
    for (const auto& [k, v] : extra.items()) body[k] = v;
  }
  return {status, std::move(body)};
}

// Shared by GET /outcome and POST /whatif so an unedited what-if returns
// exactly the cached outcome body.
ServiceResponse evaluate(const ElectionConfig& config, const TallyResult& tally, std::int64_t budget) {
  const auto violations = validate_config(config);
  if (!violations.empty()) {
    return error_response(400, "INVALID_CONFIG", "the election config is invalid",
                          Json{{"violations", to_json(violations)}});
  }
  SolveOptions options;
  options.node_budget = budget;
  try {
    const FeasibilityReport feasibility = check_feasibility(config, options);
    const SolveOutcome outcome = solve(tally, config, options);
    if (!outcome.has_committee()) {
      return error_response(422, "INFEASIBLE", "no committee satisfies the criteria",
                            Json{{"feasibility", to_json(feasibility)}, {"outcome", to_json(outcome)}});
    }
    const ElectionConfig active = outcome.status == SolveStatus::kRelaxedOptimal
                                      ? relax_until_feasible(tally, config, options).config
                                      : config;
    const ElectionReport report = build_report(tally, active, outcome, options);
    return {200, Json{{"outcome", to_json(outcome)},
                      {"price", report.price ? to_json(*report.price) : Json(nullptr)},
                      {"forced", Json(outcome.forced)},
                      {"feasibility", to_json(feasibility)},
                      {"committee_status", to_json(report.committee_status)},
                      {"displacement", to_json(report.displacement)},
                      {"checker_violations", to_json(check_committee(outcome.committee, active))}}};
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kNodeBudgetExceeded: return error_response(503, to_string(e.code()), e.what());
      case ErrorCode::kUnsatisfiableEvenEmpty:
      case ErrorCode::kInfeasible: return error_response(422, to_string(e.code()), e.what());
      default: return error_response(400, to_string(e.code()), e.what());
    }
  }
}

CriterionSpec& criterion_for_edit(ElectionConfig& config, const Json& edit) {
  if (!edit.contains("attribute") || !edit.at("attribute").is_string()) {
    throw Error(ErrorCode::kParse, "edit needs an 'attribute'");
  }
  const auto attribute = edit.at("attribute").get<std::string>();
  for (auto& c : config.criteria) {
    if (c.attribute == attribute) return c;
  }
  throw Error(ErrorCode::kParse, "no criterion on attribute '" + attribute + "'");
}

std::string string_member(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw Error(ErrorCode::kParse, std::string("missing string field '") + key + "'");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

WhatIfScenario apply_whatif(const ElectionConfig& base, const TallyResult& tally, const Json& request) {
  if (!request.is_object()) throw Error(ErrorCode::kParse, "what-if request must be a JSON object");
  WhatIfScenario s{base, tally};
  s.config.relaxation_policy = RelaxationPolicy::kFreeSeatsThenDrop;

  if (request.contains("edits")) {
    if (!request.at("edits").is_array()) throw Error(ErrorCode::kParse, "'edits' must be an array");
    for (const auto& edit : request.at("edits")) {
      const std::string op = string_member(edit, "op");
      if (op == "set_bound") {
        CriterionSpec& crit = criterion_for_edit(s.config, edit);
        const std::string category = string_member(edit, "category");
        bool found = false;
        for (auto& cat : crit.categories) {
          if (cat.category == category) {
            cat.bound = bound_from_json(edit.at("bound"));
            found = true;
          }
        }
        if (!found) {
          throw Error(ErrorCode::kParse, "criterion '" + crit.attribute + "' has no category '" + category +
                                             "'; declare it with add_category");
        }
      } else if (op == "add_category") {
        CriterionSpec& crit = criterion_for_edit(s.config, edit);
        const std::string category = string_member(edit, "category");
        if (crit.find(category)) throw Error(ErrorCode::kParse, "category '" + category + "' already exists");
        crit.categories.push_back({category, bound_from_json(edit.at("bound"))});
      } else if (op == "remove_criterion") {
        const std::string attribute = criterion_for_edit(s.config, edit).attribute;
        std::erase_if(s.config.criteria, [&](const CriterionSpec& c) { return c.attribute == attribute; });
      } else if (op == "add_criterion") {
        if (!edit.contains("criterion")) throw Error(ErrorCode::kParse, "add_criterion needs 'criterion'");
        CriterionSpec crit = criterion_from_json(edit.at("criterion"));
        if (s.config.find_criterion(crit.attribute)) {
          throw Error(ErrorCode::kParse, "criterion '" + crit.attribute + "' already exists");
        }
        s.config.criteria.push_back(std::move(crit));
      } else if (op == "set_preference_rank") {
        CriterionSpec& crit = criterion_for_edit(s.config, edit);
        if (!edit.contains("preference_rank") || !edit.at("preference_rank").is_number_integer()) {
          throw Error(ErrorCode::kParse, "set_preference_rank needs an integer 'preference_rank'");
        }
        crit.preference_rank = edit.at("preference_rank").get<int>();
      } else {
        throw Error(ErrorCode::kParse, "unknown edit op '" + op + "'");
      }
    }
  }

  if (request.contains("remove_candidates")) {
    for (const auto& id_json : request.at("remove_candidates")) {
      if (!id_json.is_string()) throw Error(ErrorCode::kParse, "remove_candidates must list ids");
      const auto id = id_json.get<std::string>();
      if (!s.config.find_candidate(id)) throw Error(ErrorCode::kParse, "cannot remove unknown candidate '" + id + "'");
      std::erase_if(s.config.roster, [&](const CandidateRecord& c) { return c.candidate_id == id; });
      s.tally.total_votes_cast -= s.tally.votes_for(id);
      s.tally.votes.erase(id);
    }
  }

  if (request.contains("add_candidate") && !request.at("add_candidate").is_null()) {
    const Json& add = request.at("add_candidate");
    CandidateRecord rec = candidate_from_json(add);
    if (s.config.find_candidate(rec.candidate_id)) {
      throw Error(ErrorCode::kParse, "candidate '" + rec.candidate_id + "' already exists");
    }
    std::int64_t votes = 0;
    if (add.contains("votes")) {
      if (!add.at("votes").is_number_integer() || add.at("votes").get<std::int64_t>() < 0) {
        throw Error(ErrorCode::kParse, "'votes' must be a non-negative integer");
      }
      votes = add.at("votes").get<std::int64_t>();
    }
    for (const auto& crit : s.config.criteria) {
      const std::string* v = rec.attribute(crit.attribute);
      if (v == nullptr || crit.find(*v) == nullptr) {
        throw Error(ErrorCode::kParse, "hypothetical candidate needs a declared '" + crit.attribute + "' category");
      }
    }
    s.tally.votes[rec.candidate_id] = votes;
    s.tally.total_votes_cast += votes;
    s.config.roster.push_back(std::move(rec));
  }

  if (request.contains("relaxation_policy")) {
    s.config.relaxation_policy = parse_relaxation_policy(string_member(request, "relaxation_policy"));
  }
  if (request.contains("tie_policy")) s.config.tie_policy = parse_tie_policy(string_member(request, "tie_policy"));
  if (request.contains("seats")) {
    if (!request.at("seats").is_number_integer()) throw Error(ErrorCode::kParse, "'seats' must be an integer");
    s.config.seats = request.at("seats").get<int>();
  }
  return s;
}

ElectionService::ElectionService(ElectionConfig config, TallyResult tally, ServiceOptions options)
    : options_(std::move(options)),
      snapshot_(std::make_shared<const Snapshot>(Snapshot{1, std::move(config), std::move(tally)})) {}

std::shared_ptr<const ElectionService::Snapshot> ElectionService::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

std::uint64_t ElectionService::version() const { return snapshot()->version; }

void ElectionService::reload(ElectionConfig config, TallyResult tally) {
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::make_shared<const Snapshot>(Snapshot{snapshot_->version + 1, std::move(config), std::move(tally)});
}

ServiceResponse ElectionService::get_election() const {
  const auto snap = snapshot();
  return {200, Json{{"version", snap->version}, {"config", to_json(snap->config)}, {"tally", to_json(snap->tally)}}};
}

ServiceResponse ElectionService::get_outcome() const {
  const auto snap = snapshot();
  {
    std::lock_guard lock(cache_mutex_);
    if (outcome_cache_ && outcome_cache_->first == snap->version) return outcome_cache_->second;
  }
  ServiceResponse response = evaluate(snap->config, snap->tally, options_.node_budget);
  std::lock_guard lock(cache_mutex_);
  outcome_cache_ = std::make_pair(snap->version, response);
  return response;
}

ServiceResponse ElectionService::post_whatif(std::string_view body) const {
  const auto snap = snapshot();
  WhatIfScenario scenario;
  try {
    const Json request = body.empty() ? Json::object() : parse_json(body);
    scenario = apply_whatif(snap->config, snap->tally, request);
  } catch (const Error& e) {
    return error_response(400, "INVALID_EDIT", e.what());
  }
  return evaluate(scenario.config, scenario.tally, options_.whatif_node_budget);
}

ServiceResponse ElectionService::post_feasibility(std::string_view body) const {
  const auto snap = snapshot();
  ElectionConfig config = snap->config;
  try {
    const Json request = parse_json(body);
    if (!request.is_object() || !request.contains("roster") || !request.at("roster").is_array()) {
      throw Error(ErrorCode::kParse, "body needs a 'roster' array");
    }
    config.roster.clear();
    for (const auto& c : request.at("roster")) config.roster.push_back(candidate_from_json(c));
    if (request.contains("criteria")) {
      config.criteria.clear();
      for (const auto& c : request.at("criteria")) config.criteria.push_back(criterion_from_json(c));
    }
    if (request.contains("seats")) config.seats = request.at("seats").get<int>();
  } catch (const Error& e) {
    return error_response(400, "INVALID_REQUEST", e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_response(400, "INVALID_REQUEST", e.what());
  }
  const auto violations = validate_config(config);
  if (!violations.empty()) {
    return error_response(400, "INVALID_CONFIG", "the candidate pool or criteria are invalid",
                          Json{{"violations", to_json(violations)}});
  }
  SolveOptions options;
  options.node_budget = options_.whatif_node_budget;
  try {
    return {200, to_json(check_feasibility(config, options))};
  } catch (const Error& e) {
    return error_response(e.code() == ErrorCode::kNodeBudgetExceeded ? 503 : 400, to_string(e.code()), e.what());
  }
}

struct HttpServer::Impl {
  explicit Impl(ElectionService& s) : service(s) {}

  ElectionService& service;
  httplib::Server server;
};

HttpServer::HttpServer(ElectionService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& server = impl_->server;
  ElectionService& svc = impl_->service;
  const std::string origin = svc.options().cors_origin;

  auto send = [origin](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    if (!origin.empty()) res.set_header("Access-Control-Allow-Origin", origin);
    res.set_content(r.body.dump(), "application/json");
  };

  server.Get("/election", [&svc, send](const httplib::Request&, httplib::Response& res) {
    send(res, svc.get_election());
  });
  server.Get("/outcome", [&svc, send](const httplib::Request&, httplib::Response& res) {
    send(res, svc.get_outcome());
  });
  server.Post("/whatif", [&svc, send](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.post_whatif(req.body));
  });
  server.Post("/feasibility", [&svc, send](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.post_feasibility(req.body));
  });
  server.Options(".*", [origin](const httplib::Request&, httplib::Response& res) {
    if (!origin.empty()) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    }
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace reppact
