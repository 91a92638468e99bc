#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "reppact/model.hpp"
#include "reppact/serialize.hpp"
#include "reppact/solver.hpp"

namespace reppact {

struct ServiceOptions {
  std::int64_t node_budget = SolveOptions{}.node_budget;
  std::int64_t whatif_node_budget = kWhatIfNodeBudget;
  std::string cors_origin;  // empty: no CORS headers
};

struct ServiceResponse {
  int status = 200;
  Json body;
};

// Request handlers over an immutable election snapshot. Handlers never
// modify the snapshot; reload() swaps it atomically.
//
//   GET  /election     config + roster + tally
//   GET  /outcome      outcome with reports, cached per snapshot version
//   POST /whatif       outcome with reports for an edited copy
//   POST /feasibility  feasibility of a posted candidate pool
//
// 400 invalid request or edit, 422 infeasible (body carries deficits),
// 503 node budget exceeded.
class ElectionService {
 public:
  ElectionService(ElectionConfig config, TallyResult tally, ServiceOptions options = {});

  ServiceResponse get_election() const;
  ServiceResponse get_outcome() const;
  ServiceResponse post_whatif(std::string_view body) const;
  ServiceResponse post_feasibility(std::string_view body) const;

  void reload(ElectionConfig config, TallyResult tally);
  std::uint64_t version() const;
  const ServiceOptions& options() const { return options_; }

 private:
  struct Snapshot {
    std::uint64_t version = 0;
    ElectionConfig config;
    TallyResult tally;
  };

  std::shared_ptr<const Snapshot> snapshot() const;

  ServiceOptions options_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;

  mutable std::mutex cache_mutex_;
  mutable std::optional<std::pair<std::uint64_t, ServiceResponse>> outcome_cache_;
};

// Applies a what-if request to a copy of `base`. Throws Error(kParse) for
// an edit that names an unknown attribute, category or candidate.
struct WhatIfScenario {
  ElectionConfig config;
  TallyResult tally;
};
WhatIfScenario apply_whatif(const ElectionConfig& base, const TallyResult& tally, const Json& request);

// cpp-httplib front end for ElectionService.
class HttpServer {
 public:
  explicit HttpServer(ElectionService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  // Serves until stop(); blocks.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace reppact
