// JSON-in, JSON-out bindings; the Python package converts to dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reppact/checker.hpp"
#include "reppact/explain.hpp"
#include "reppact/io.hpp"
#include "reppact/ledger.hpp"
#include "reppact/lp_format.hpp"
#include "reppact/serialize.hpp"
#include "reppact/service.hpp"
#include "reppact/solver.hpp"
#include "reppact/tally.hpp"

namespace py = pybind11;
using namespace reppact;

namespace {

ElectionConfig config_of(const std::string& json) { return config_from_json(parse_json(json)); }
TallyResult tally_of(const std::string& json) { return tally_from_json(parse_json(json)); }

SolveOptions options_of(std::int64_t node_budget) {
  SolveOptions o;
  if (node_budget > 0) o.node_budget = node_budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Representation-constrained committee selection";

  static py::exception<Error> error(m, "ReppactError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("validate_config", [](const std::string& config) { return to_json(validate_config(config_of(config))).dump(); },
        py::arg("config"));

  m.def("solve",
        [](const std::string& config, const std::string& tally, std::int64_t node_budget) {
          SolveOutcome out;
          {
            py::gil_scoped_release release;
            out = solve(tally_of(tally), config_of(config), options_of(node_budget));
          }
          return to_json(out).dump();
        },
        py::arg("config"), py::arg("tally"), py::arg("node_budget") = 0);

  m.def("brute_force_solve",
        [](const std::string& config, const std::string& tally) {
          return to_json(brute_force_solve(tally_of(tally), config_of(config))).dump();
        },
        py::arg("config"), py::arg("tally"));

  m.def("check_committee",
        [](const std::vector<std::string>& committee, const std::string& config) {
          return to_json(check_committee(committee, config_of(config))).dump();
        },
        py::arg("committee"), py::arg("config"));

  m.def("count_votes",
        [](const std::string& config, const std::string& ballots_csv) {
          const auto ballots = io::parse_ballots_csv(ballots_csv).ballots;
          return to_json(count_votes(ballots, config_of(config))).dump();
        },
        py::arg("config"), py::arg("ballots_csv"));

  m.def("parse_tally_csv", [](const std::string& csv) { return to_json(io::parse_tally_csv(csv)).dump(); },
        py::arg("csv"));

  m.def("check_feasibility",
        [](const std::string& config) { return to_json(check_feasibility(config_of(config))).dump(); },
        py::arg("config"));

  m.def("find_forced_candidates",
        [](const std::string& config, const std::string& tally) {
          return find_forced_candidates(tally_of(tally), config_of(config));
        },
        py::arg("config"), py::arg("tally"));

  m.def("price_report",
        [](const std::string& config, const std::string& tally) {
          return to_json(price_report(tally_of(tally), config_of(config))).dump();
        },
        py::arg("config"), py::arg("tally"));

  m.def("deficit_report",
        [](const std::vector<std::string>& committee, const std::string& config) {
          return to_json(deficit_report(committee, config_of(config))).dump();
        },
        py::arg("committee"), py::arg("config"));

  m.def("render_report",
        [](const std::string& config, const std::string& tally, const std::string& format) {
          const ElectionConfig cfg = config_of(config);
          const TallyResult t = tally_of(tally);
          return render_report(build_report(t, cfg, solve(t, cfg)), parse_report_format(format));
        },
        py::arg("config"), py::arg("tally"), py::arg("format") = "json");

  m.def("write_lp", [](const std::string& config, const std::string& tally) {
    return write_lp(tally_of(tally), config_of(config));
  }, py::arg("config"), py::arg("tally"));

  m.def("sha256_hex", [](const py::bytes& data) { return sha256_hex(std::string(data)); }, py::arg("data"));

  m.def("make_receipt",
        [](const std::string& ballot_id, const std::vector<std::string>& selections, const std::string& salt_hex) {
          const Ballot b{ballot_id, {selections.begin(), selections.end()}, std::nullopt};
          const Receipt r = make_receipt(b, parse_salt(salt_hex));
          return py::make_tuple(r.salt, r.digest);
        },
        py::arg("ballot_id"), py::arg("selections"), py::arg("salt_hex"));

  m.def("whatif",
        [](const std::string& config, const std::string& tally, const std::string& request) {
          const ElectionService service(config_of(config), tally_of(tally));
          const ServiceResponse r = service.post_whatif(request);
          return py::make_tuple(r.status, r.body.dump());
        },
        py::arg("config"), py::arg("tally"), py::arg("request"));
}
