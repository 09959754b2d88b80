#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gbcsp/analytics.hpp"
#include "gbcsp/backtracker.hpp"
#include "gbcsp/generator.hpp"
#include "gbcsp/harness.hpp"
#include "gbcsp/instance_io.hpp"
#include "gbcsp/oracle.hpp"
#include "gbcsp/uc_solver.hpp"

namespace py = pybind11;
using namespace gbcsp;

namespace {

py::object to_fraction(const Rational& value) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  const auto num = py::int_(py::str(boost::multiprecision::numerator(value).str()));
  const auto den = py::int_(py::str(boost::multiprecision::denominator(value).str()));
  return fraction(num, den);
}

py::dict row_to_dict(const harness::SummaryRow& row) {
  py::dict out;
  out["t"] = row.t;
  out["r"] = row.r;
  out["trials"] = row.trials;
  out["mean_nodes"] = row.mean_nodes;
  out["stderr_nodes"] = row.stderr_nodes;
  out["sat_fraction"] = row.sat_fraction;
  out["uc_success"] = row.uc_success;
  out["log_T_exact"] = row.log_T_exact;
  out["log_T_asym"] = row.log_T_asym;
  out["z_score"] = row.z_score;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Model GB random CSP workbench";

  py::register_exception<Error>(m, "GbcspError", PyExc_ValueError);

  py::class_<Params>(m, "Params")
      .def(py::init(&Params::validate), py::arg("n"), py::arg("d"), py::arg("k"), py::arg("t"),
           py::arg("q"))
      .def_property_readonly("n", &Params::n)
      .def_property_readonly("d", &Params::d)
      .def_property_readonly("k", &Params::k)
      .def_property_readonly("t", &Params::t)
      .def_property_readonly("q", &Params::q)
      .def_property_readonly("p", &Params::p)
      .def_property_readonly("r", &Params::r)
      .def_property_readonly("strict", &Params::strict)
      .def("with_t", &Params::with_t, py::arg("t"))
      .def(py::self == py::self)
      .def("__repr__", [](const Params& p) {
        return "Params(n=" + std::to_string(p.n()) + ", d=" + std::to_string(p.d()) +
               ", k=" + std::to_string(p.k()) + ", t=" + std::to_string(p.t()) +
               ", q=" + std::to_string(p.q()) + ")";
      });

  py::class_<ConstraintSpec>(m, "Constraint")
      .def_readonly("scope", &ConstraintSpec::scope)
      .def_readonly("incompatible", &ConstraintSpec::incompatible);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](const Params& params,
                       const std::vector<std::pair<std::vector<VarIndex>, std::vector<Tuple>>>& list) {
             std::vector<ConstraintSpec> specs;
             specs.reserve(list.size());
             for (const auto& [scope, incompatible] : list)
               specs.push_back(ConstraintSpec::make(scope, incompatible, params));
             return Instance(params, std::move(specs));
           }),
           py::arg("params"), py::arg("constraints"))
      .def_property_readonly("params", &Instance::params)
      .def_property_readonly("constraints", &Instance::constraints)
      .def("to_text", [](const Instance& inst) { return to_text(inst); })
      .def_static("from_text", [](const std::string& text) { return instance_from_text(text); })
      .def("is_consistent",
           [](const Instance& inst, const Tuple& assignment) { return is_consistent(inst, assignment); },
           py::arg("assignment"))
      .def(py::self == py::self);

  m.def("read_instance", &read_instance, py::arg("path"));
  m.def("write_instance", &write_instance, py::arg("path"), py::arg("instance"));
  m.def(
      "sample_instance",
      [](const Params& params, std::uint64_t seed, std::uint64_t trial) {
        return sample_instance(params, SeedSpec{seed, trial});
      },
      py::arg("params"), py::arg("seed"), py::arg("trial") = 0);

  py::class_<SearchStats>(m, "SearchStats")
      .def_readonly("nodes", &SearchStats::nodes)
      .def_readonly("solution_count", &SearchStats::solution_count)
      .def_readonly("levels", &SearchStats::levels)
      .def_readonly("solutions", &SearchStats::solutions);

  m.def(
      "solve_all",
      [](const Instance& inst, bool collect, bool reverse_values) {
        py::gil_scoped_release release;
        return solve_all(inst, SolveOptions{collect, reverse_values, false});
      },
      py::arg("instance"), py::arg("collect") = false, py::arg("reverse_values") = false);

  py::enum_<UCTag>(m, "UCTag")
      .value("SolutionFound", UCTag::SolutionFound)
      .value("Unknown", UCTag::Unknown);

  py::class_<UCOutcome>(m, "UCOutcome")
      .def_readonly("tag", &UCOutcome::tag)
      .def_readonly("assignment", &UCOutcome::assignment)
      .def_readonly("steps", &UCOutcome::steps);

  m.def(
      "run_uc",
      [](const Instance& inst, std::uint64_t seed, std::uint64_t trial) {
        return run_uc(inst, SeedSpec{seed, trial});
      },
      py::arg("instance"), py::arg("seed"), py::arg("trial") = 0);
  m.def("uc_success_rate", &uc_success_rate, py::arg("params"), py::arg("trials"),
        py::arg("seed"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  auto an = m.def_submodule("analytics", "Closed-form predictions");
  py::enum_<analytics::Regime>(an, "Regime")
      .value("Subcritical", analytics::Regime::Subcritical)
      .value("Critical", analytics::Regime::Critical)
      .value("Supercritical", analytics::Regime::Supercritical);

  py::class_<analytics::AnalyticParams>(an, "AnalyticParams")
      .def(py::init(&analytics::AnalyticParams::validate), py::arg("d"), py::arg("k"), py::arg("p"),
           py::arg("r"))
      .def_static("from_params", &analytics::AnalyticParams::from, py::arg("params"))
      .def_property_readonly("d", &analytics::AnalyticParams::d)
      .def_property_readonly("k", &analytics::AnalyticParams::k)
      .def_property_readonly("p", &analytics::AnalyticParams::p)
      .def_property_readonly("r", &analytics::AnalyticParams::r)
      .def("with_r", &analytics::AnalyticParams::with_r, py::arg("r"));

  py::class_<analytics::Prediction>(an, "Prediction")
      .def_readonly("regime", &analytics::Prediction::regime)
      .def_readonly("zeta", &analytics::Prediction::zeta)
      .def_readonly("F", &analytics::Prediction::F)
      .def_readonly("log_prefactor", &analytics::Prediction::log_prefactor)
      .def_readonly("log_T_exact", &analytics::Prediction::log_T_exact)
      .def_readonly("log_T_asym", &analytics::Prediction::log_T_asym)
      .def_readonly("r0", &analytics::Prediction::r0)
      .def_readonly("r_cr", &analytics::Prediction::r_cr)
      .def_readonly("log_EN", &analytics::Prediction::log_EN)
      .def_readonly("uc_bound", &analytics::Prediction::uc_bound)
      .def_readonly("neighbor_log_T_asym", &analytics::Prediction::neighbor_log_T_asym)
      .def_readonly("warning", &analytics::Prediction::warning);

  an.def("g_exact", [](std::int64_t i, const Params& params) { return to_fraction(analytics::g_exact(i, params)); },
         py::arg("i"), py::arg("params"));
  an.def("g", &analytics::g, py::arg("i"), py::arg("n"), py::arg("ap"));
  an.def("log_exact_expected_nodes", py::overload_cast<const Params&>(&analytics::log_exact_expected_nodes),
         py::arg("params"));
  an.def("log_exact_expected_nodes",
         py::overload_cast<const analytics::AnalyticParams&, std::int64_t>(&analytics::log_exact_expected_nodes),
         py::arg("ap"), py::arg("n"));
  an.def("log_expected_solutions", &analytics::log_expected_solutions, py::arg("params"));
  an.def("r_critical", &analytics::r_critical, py::arg("d"), py::arg("p"));
  an.def("uc_bound", &analytics::uc_bound, py::arg("d"), py::arg("k"));
  an.def("r_zero", py::overload_cast<double, std::int64_t, double>(&analytics::r_zero), py::arg("d"),
         py::arg("k"), py::arg("p"));
  an.def("f", &analytics::f, py::arg("x"), py::arg("ap"));
  an.def("f_prime", &analytics::f_prime, py::arg("x"), py::arg("ap"));
  an.def("f_second", &analytics::f_second, py::arg("x"), py::arg("ap"));
  an.def("classify", &analytics::classify, py::arg("ap"));
  an.def("zeta", &analytics::zeta, py::arg("ap"), py::arg("tol") = analytics::kDefaultTol);
  an.def("big_F", &analytics::big_F, py::arg("ap"), py::arg("tol") = analytics::kDefaultTol);
  an.def("big_F_slope", &analytics::big_F_slope, py::arg("ap"), py::arg("tol") = analytics::kDefaultTol);
  an.def("big_F_at_r_zero", &analytics::big_F_at_r_zero, py::arg("d"), py::arg("k"), py::arg("p"));
  an.def(
      "log_T_asym",
      [](const analytics::AnalyticParams& ap, std::int64_t n, double tol) {
        return analytics::prefactor_and_asymptote(ap, n, tol).log_T_asym;
      },
      py::arg("ap"), py::arg("n"), py::arg("tol") = analytics::kDefaultTol);
  an.def("predict", &analytics::predict, py::arg("params"), py::arg("tol") = analytics::kDefaultTol);

  auto orc = m.def_submodule("oracle", "Independent reference computations");
  py::class_<oracle::OracleReport>(orc, "OracleReport")
      .def_readonly("solutions", &oracle::OracleReport::solutions)
      .def_readonly("level_counts", &oracle::OracleReport::level_counts)
      .def_readonly("node_count", &oracle::OracleReport::node_count);
  orc.def("brute_force", &oracle::brute_force, py::arg("instance"),
          py::arg("max_leaves") = oracle::kMaxLeaves, py::call_guard<py::gil_scoped_release>());
  orc.def(
      "exact_expected_nodes",
      [](const Params& params) { return to_fraction(oracle::exact_expected_nodes(params)); },
      py::arg("params"));
  orc.def(
      "empirical_g",
      [](std::int64_t n, std::int64_t d, std::int64_t k, std::int64_t q, std::int64_t i,
         std::uint64_t samples, std::uint64_t seed) {
        return oracle::empirical_g(n, d, k, q, i, samples, SeedSpec{seed, 0});
      },
      py::arg("n"), py::arg("d"), py::arg("k"), py::arg("q"), py::arg("i"), py::arg("samples"),
      py::arg("seed"));
  orc.def(
      "run_verification",
      [](std::uint64_t seed, std::uint64_t instances, std::uint64_t samples) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& c : oracle::run_verification(seed, instances, samples))
          out.emplace_back(c.name, c.passed, c.detail);
        return out;
      },
      py::arg("seed"), py::arg("instances") = 200, py::arg("samples") = 200000);

  auto hs = m.def_submodule("harness", "Seeded Monte Carlo sweeps");
  hs.attr("CSV_HEADER") = std::string(harness::kCsvHeader);
  hs.def(
      "run_sweep",
      [](py::dict config) {
        const auto json_text = py::module_::import("json").attr("dumps")(config).cast<std::string>();
        const auto cfg = harness::ExperimentConfig::from_json(nlohmann::json::parse(json_text));
        harness::SweepResult result;
        {
          py::gil_scoped_release release;
          result = harness::run_sweep(cfg);
        }
        py::list rows;
        for (const auto& row : result.rows) rows.append(row_to_dict(row));
        py::list errors;
        for (const auto& e : result.errors) errors.append(py::make_tuple(e.t, e.message));
        return py::make_tuple(rows, errors);
      },
      py::arg("config"),
      "Runs a sweep from a config mapping (n, d, k, q, t_grid or r_grid, trials, seed, measure, "
      "threads) and returns (rows, errors).");
  hs.def(
      "sweep_csv",
      [](py::dict config) {
        const auto json_text = py::module_::import("json").attr("dumps")(config).cast<std::string>();
        const auto cfg = harness::ExperimentConfig::from_json(nlohmann::json::parse(json_text));
        py::gil_scoped_release release;
        return harness::format_csv(harness::run_sweep(cfg).rows);
      },
      py::arg("config"));
}
