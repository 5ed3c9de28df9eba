#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uavcpn/analysis.hpp"
#include "uavcpn/montecarlo.hpp"
#include "uavcpn/sweep.hpp"
#include "uavcpn/units.hpp"

namespace py = pybind11;
using namespace uavcpn;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Analytical and Monte Carlo task completion probability";
  m.attr("__version__") = tool_version();

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ComputeLatencyModel>(m, "ComputeLatencyModel")
      .def_static("parse", &ComputeLatencyModel::parse, py::arg("tag"))
      .def_static("deterministic", &ComputeLatencyModel::deterministic,
                  py::arg("t_c"))
      .def_static("exponential", &ComputeLatencyModel::exponential,
                  py::arg("mean"))
      .def_static("shifted_exponential",
                  &ComputeLatencyModel::shifted_exponential, py::arg("floor"),
                  py::arg("mean_excess"))
      .def("mean", &ComputeLatencyModel::mean, py::arg("workload"))
      .def("__repr__", &ComputeLatencyModel::to_string);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("tx_power_gu", &ScenarioConfig::tx_power_gu)
      .def_readwrite("tx_power_uav", &ScenarioConfig::tx_power_uav)
      .def_readwrite("alpha_up", &ScenarioConfig::alpha_up)
      .def_readwrite("alpha_down", &ScenarioConfig::alpha_down)
      .def_readwrite("eta", &ScenarioConfig::eta)
      .def_readwrite("bandwidth", &ScenarioConfig::bandwidth)
      .def_readwrite("noise_power", &ScenarioConfig::noise_power)
      .def_readwrite("data_size", &ScenarioConfig::data_size)
      .def_readwrite("t_max", &ScenarioConfig::t_max)
      .def_readwrite("gu_density", &ScenarioConfig::gu_density)
      .def_readwrite("cn_density", &ScenarioConfig::cn_density)
      .def_readwrite("request_radius", &ScenarioConfig::request_radius)
      .def_readwrite("cn_dist_radius", &ScenarioConfig::cn_dist_radius)
      .def_readwrite("env_b", &ScenarioConfig::env_b)
      .def_readwrite("env_c", &ScenarioConfig::env_c)
      .def_readwrite("env_b_down", &ScenarioConfig::env_b_down)
      .def_readwrite("env_c_down", &ScenarioConfig::env_c_down)
      .def_readwrite("altitude", &ScenarioConfig::altitude)
      .def_readwrite("compute_model", &ScenarioConfig::compute_model)
      .def_property(
          "channel_averaging",
          [](const ScenarioConfig& c) { return std::string(to_string(c.averaging)); },
          [](ScenarioConfig& c, const std::string& s) {
            c.averaging = parse_channel_averaging(s);
          })
      .def("to_document", &to_document);

  py::class_<AnalysisResult>(m, "AnalysisResult")
      .def_readonly("r_u", &AnalysisResult::r_u)
      .def_readonly("t1", &AnalysisResult::t1)
      .def_readonly("service_radius", &AnalysisResult::service_radius)
      .def_readonly("service_capped", &AnalysisResult::service_capped)
      .def_readonly("lambda_intensity", &AnalysisResult::lambda_intensity)
      .def_readonly("success_prob", &AnalysisResult::success_prob)
      .def_readonly("quadrature_error_estimate",
                    &AnalysisResult::quadrature_error_estimate)
      .def_readonly("converged", &AnalysisResult::converged);

  py::class_<AveragedResult>(m, "AveragedResult")
      .def_readonly("success_prob", &AveragedResult::success_prob)
      .def_readonly("error_estimate", &AveragedResult::error_estimate)
      .def_readonly("converged", &AveragedResult::converged);

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("mean", &Estimate::mean)
      .def_readonly("ci_halfwidth", &Estimate::ci_halfwidth)
      .def_readonly("confidence_level", &Estimate::confidence_level)
      .def_readonly("n_trials", &Estimate::n_trials)
      .def_readonly("seed", &Estimate::seed);

  m.def("db_to_linear", &db_to_linear, py::arg("db"));
  m.def("load_config", &load_config, py::arg("text"),
        "Parse a `key = value` scenario document into SI units.");
  m.def(
      "validate",
      [](const ScenarioConfig& cfg) {
        std::vector<std::string> out;
        for (const auto& v : validate(cfg)) out.push_back(v.field + ": " + v.constraint);
        return out;
      },
      py::arg("cfg"));

  m.def(
      "los_probability",
      [](double r, double h, double b, double c) {
        return los_probability({r, h}, b, c);
      },
      py::arg("horizontal_distance"), py::arg("altitude"), py::arg("env_b"),
      py::arg("env_c"));
  m.def(
      "expected_received_power",
      [](const ScenarioConfig& cfg, double r) {
        return expected_received_power(cfg.uplink(), {r, cfg.altitude});
      },
      py::arg("cfg"), py::arg("horizontal_distance"),
      "Uplink received power for a GU at the given distance.");
  m.def(
      "transmission_latency",
      [](const ScenarioConfig& cfg, double r, bool downlink) {
        return (downlink ? cfg.downlink_model() : cfg.uplink_model())
            .latency(r, cfg.altitude);
      },
      py::arg("cfg"), py::arg("horizontal_distance"),
      py::arg("downlink") = false);
  m.def(
      "latency_cdf",
      [](const ComputeLatencyModel& model, double t, double workload) {
        return latency_cdf(model, t, workload);
      },
      py::arg("model"), py::arg("t_res"), py::arg("workload"));
  m.def(
      "max_service_radius",
      [](const ScenarioConfig& cfg, double residual) {
        const auto s = max_service_radius(residual, cfg.downlink_model(), cfg.altitude);
        return py::make_tuple(s.radius, s.capped);
      },
      py::arg("cfg"), py::arg("residual"));

  m.def(
      "analyze_point",
      [](double r_u, const ScenarioConfig& cfg) { return analyze_point(r_u, cfg); },
      py::arg("r_u"), py::arg("cfg"));
  m.def("qualified_intensity", &qualified_intensity, py::arg("r_u"),
        py::arg("cfg"));
  m.def("success_probability", &success_probability, py::arg("r_u"),
        py::arg("cfg"));
  m.def(
      "average_success_probability",
      [](const ScenarioConfig& cfg) { return average_success_probability(cfg); },
      py::arg("cfg"));
  m.def(
      "estimate_success",
      [](const ScenarioConfig& cfg, std::uint64_t n_trials,
         std::uint64_t gus_per_trial, std::uint64_t seed, unsigned jobs) {
        py::gil_scoped_release release;
        return estimate_success(cfg, {n_trials, gus_per_trial, seed, jobs, 0.99});
      },
      py::arg("cfg"), py::arg("n_trials") = 10000,
      py::arg("gus_per_trial") = 400, py::arg("seed") = 42,
      py::arg("jobs") = 1);
}
