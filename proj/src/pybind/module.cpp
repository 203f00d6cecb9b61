#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "v2vq/analytic.hpp"
#include "v2vq/config.hpp"
#include "v2vq/export.hpp"
#include "v2vq/mc.hpp"
#include "v2vq/optimize.hpp"
#include "v2vq/params.hpp"
#include "v2vq/version.hpp"

namespace py = pybind11;
using namespace v2vq;

namespace {

template <typename T>
std::string brief_repr(const char* name, const T& value) {
    std::ostringstream os;
    os << "<v2vq." << name << ">";
    (void)value;
    return os.str();
}

} // namespace

PYBIND11_MODULE(_v2vq, m) {
    m.doc() = "multi-hop V2V link quality: closed-form model, Monte Carlo "
              "engine, hop-distance optimizer";
    m.attr("__version__") = V2VQ_VERSION_STRING;

    py::register_exception<ValidationError>(m, "ValidationError",
                                            PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InsufficientData>(m, "InsufficientDataError",
                                             PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<RadioParams>(m, "RadioParams")
        .def(py::init([](double tx_power_dbm, double noise_density_dbm_hz,
                         double bandwidth_hz, double snr_threshold_db,
                         double shadow_sigma_db, double coverage_radius_m) {
                 RadioParams r{tx_power_dbm,  noise_density_dbm_hz,
                               bandwidth_hz,  snr_threshold_db,
                               shadow_sigma_db, coverage_radius_m};
                 return r;
             }),
             py::arg("tx_power_dbm") = 30.0,
             py::arg("noise_density_dbm_hz") = -174.0,
             py::arg("bandwidth_hz") = 200e6,
             py::arg("snr_threshold_db") = 10.0,
             py::arg("shadow_sigma_db") = 5.0,
             py::arg("coverage_radius_m") = 100.0)
        .def_readwrite("tx_power_dbm", &RadioParams::tx_power_dbm)
        .def_readwrite("noise_density_dbm_hz",
                       &RadioParams::noise_density_dbm_hz)
        .def_readwrite("bandwidth_hz", &RadioParams::bandwidth_hz)
        .def_readwrite("snr_threshold_db", &RadioParams::snr_threshold_db)
        .def_readwrite("shadow_sigma_db", &RadioParams::shadow_sigma_db)
        .def_readwrite("coverage_radius_m", &RadioParams::coverage_radius_m);

    py::class_<ScenarioParams>(m, "ScenarioParams")
        .def(py::init([](double density_per_m, double span_m,
                         double hop_distance_m, double slot_time_us,
                         double proc_time_us, double max_delay_us) {
                 ScenarioParams s{density_per_m, span_m,      hop_distance_m,
                                  slot_time_us,  proc_time_us, max_delay_us};
                 return s;
             }),
             py::arg("density_per_m") = 0.1, py::arg("span_m") = 1000.0,
             py::arg("hop_distance_m") = 50.0, py::arg("slot_time_us") = 50.0,
             py::arg("proc_time_us") = 20.0, py::arg("max_delay_us") = 20000.0)
        .def_readwrite("density_per_m", &ScenarioParams::density_per_m)
        .def_readwrite("span_m", &ScenarioParams::span_m)
        .def_readwrite("hop_distance_m", &ScenarioParams::hop_distance_m)
        .def_readwrite("slot_time_us", &ScenarioParams::slot_time_us)
        .def_readwrite("proc_time_us", &ScenarioParams::proc_time_us)
        .def_readwrite("max_delay_us", &ScenarioParams::max_delay_us);

    py::class_<ServiceProfile>(m, "ServiceProfile")
        .def(py::init([](double alpha, double beta) {
                 return ServiceProfile{alpha, beta};
             }),
             py::arg("alpha") = 0.5, py::arg("beta") = 0.5)
        .def_readwrite("alpha", &ServiceProfile::alpha)
        .def_readwrite("beta", &ServiceProfile::beta);

    py::class_<LinkAssessment>(m, "LinkAssessment")
        .def_readonly("connectivity", &LinkAssessment::connectivity)
        .def_readonly("delay_us", &LinkAssessment::delay_us)
        .def_readonly("delay_indicator", &LinkAssessment::delay_indicator)
        .def_readonly("hop_count", &LinkAssessment::hop_count)
        .def_readonly("quality", &LinkAssessment::quality)
        .def_readonly("underflow", &LinkAssessment::underflow)
        .def("__repr__", [](const LinkAssessment& a) {
            std::ostringstream os;
            os << "LinkAssessment(P=" << a.connectivity << ", T_us=" << a.delay_us
               << ", Q=" << a.quality << ")";
            return os.str();
        });

    py::enum_<FadingMode>(m, "FadingMode")
        .value("per_slot", FadingMode::per_slot)
        .value("per_hop", FadingMode::per_hop);

    py::enum_<PlacementMode>(m, "PlacementMode")
        .value("poisson", PlacementMode::poisson)
        .value("equal_spacing", PlacementMode::equal_spacing);

    py::enum_<Engine>(m, "Engine")
        .value("analytic", Engine::analytic)
        .value("montecarlo", Engine::montecarlo);

    py::class_<ConfidenceInterval>(m, "ConfidenceInterval")
        .def_readonly("lo", &ConfidenceInterval::lo)
        .def_readonly("hi", &ConfidenceInterval::hi);

    py::class_<EnsembleStats>(m, "EnsembleStats")
        .def_readonly("trials", &EnsembleStats::trials)
        .def_readonly("connected", &EnsembleStats::connected)
        .def_readonly("truncated", &EnsembleStats::truncated)
        .def_readonly("connectivity_hat", &EnsembleStats::connectivity_hat)
        .def_readonly("connectivity_ci", &EnsembleStats::connectivity_ci)
        .def_readonly("mean_delay_us", &EnsembleStats::mean_delay_us)
        .def_readonly("delay_se_us", &EnsembleStats::delay_se_us)
        .def_readonly("quality_hat", &EnsembleStats::quality_hat)
        .def_readonly("seed", &EnsembleStats::seed);

    py::class_<SimOptions>(m, "SimOptions")
        .def(py::init<>())
        .def_readwrite("trials", &SimOptions::trials)
        .def_readwrite("seed", &SimOptions::seed)
        .def_readwrite("max_slots_per_hop", &SimOptions::max_slots_per_hop)
        .def_readwrite("fading", &SimOptions::fading)
        .def_readwrite("placement", &SimOptions::placement)
        .def_readwrite("threads", &SimOptions::threads);

    py::class_<SweepGrid>(m, "SweepGrid")
        .def(py::init<>())
        .def_readwrite("densities", &SweepGrid::densities)
        .def_readwrite("hop_distances", &SweepGrid::hop_distances)
        .def_readwrite("profiles", &SweepGrid::profiles);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("rho", &SweepRow::rho)
        .def_readonly("r_m", &SweepRow::r_m)
        .def_readonly("alpha", &SweepRow::alpha)
        .def_readonly("beta", &SweepRow::beta)
        .def_readonly("P", &SweepRow::P)
        .def_readonly("T_us", &SweepRow::T_us)
        .def_readonly("D", &SweepRow::D)
        .def_readonly("Q", &SweepRow::Q)
        .def_readonly("P_ci_lo", &SweepRow::P_ci_lo)
        .def_readonly("P_ci_hi", &SweepRow::P_ci_hi)
        .def_readonly("T_se_us", &SweepRow::T_se_us)
        .def_readonly("trials", &SweepRow::trials)
        .def_readonly("error", &SweepRow::error);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_property_readonly(
            "engine",
            [](const SweepResult& r) { return r.provenance.engine; })
        .def_property_readonly("seed", [](const SweepResult& r) {
            return r.provenance.sim.seed;
        });

    py::class_<OptimalHop>(m, "OptimalHop")
        .def_readonly("r_m", &OptimalHop::r_m)
        .def_readonly("quality", &OptimalHop::quality);

    py::class_<Config>(m, "Config")
        .def(py::init<>())
        .def_readwrite("radio", &Config::radio)
        .def_readwrite("scenario", &Config::scenario)
        .def_readwrite("profile", &Config::profile)
        .def_readwrite("fading_mode", &Config::fading_mode);

    m.def("noise_power_dbm", &noise_power_dbm, py::arg("radio"));
    m.def("link_margin_db", &link_margin_db, py::arg("distance_m"),
          py::arg("radio"));
    m.def("hop_success_prob", &hop_success_prob, py::arg("distance_m"),
          py::arg("radio"));
    m.def("hop_delay_us", &hop_delay_us, py::arg("distance_m"),
          py::arg("radio"), py::arg("slot_time_us"));
    m.def("expected_hops", &expected_hops, py::arg("span_m"),
          py::arg("hop_distance_m"));
    m.def("multihop_delay_us", &multihop_delay_us, py::arg("scenario"),
          py::arg("radio"));
    m.def("poisson_count_prob", &poisson_count_prob, py::arg("n"),
          py::arg("span_m"), py::arg("density_per_m"));
    m.def("erlang_distance_cdf", &erlang_distance_cdf, py::arg("r0_m"),
          py::arg("shape"), py::arg("density_per_m"));
    m.def("path_connectivity", &path_connectivity, py::arg("scenario"),
          py::arg("radio"));
    m.def("assess_link", &assess_link, py::arg("scenario"), py::arg("radio"),
          py::arg("profile"));
    m.def(
        "run_ensemble",
        [](const ScenarioParams& scenario, const RadioParams& radio,
           const ServiceProfile& profile, const SimOptions& options) {
            return run_ensemble(scenario, radio, profile, options);
        },
        py::arg("scenario"), py::arg("radio"), py::arg("profile"),
        py::arg("options"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "sweep",
        [](const SweepGrid& grid, const RadioParams& radio,
           const ScenarioParams& base, Engine engine, const SimOptions& sim) {
            return sweep(grid, radio, base, engine, sim);
        },
        py::arg("grid"), py::arg("radio"), py::arg("base_scenario"),
        py::arg("engine") = Engine::analytic, py::arg("sim") = SimOptions{},
        py::call_guard<py::gil_scoped_release>());
    m.def("optimal_hop_distance", &optimal_hop_distance, py::arg("density_per_m"),
          py::arg("profile"), py::arg("radio"), py::arg("base_scenario"),
          py::arg("r_min") = 10.0, py::arg("r_max") = 200.0,
          py::arg("step") = 1.0);
    m.def(
        "figure_data",
        [](int figure_id, const RadioParams& radio, const ScenarioParams& base,
           Engine engine, const SimOptions& sim) {
            return figure_data(figure_id, radio, base, engine, sim);
        },
        py::arg("figure_id"), py::arg("radio"), py::arg("base_scenario"),
        py::arg("engine") = Engine::analytic, py::arg("sim") = SimOptions{},
        py::call_guard<py::gil_scoped_release>());
    m.def("parse_config_text", &parse_config_text, py::arg("text"));
    m.def("serialize_config", &serialize_config, py::arg("config"));
    m.def("render_csv", &render_csv, py::arg("result"));
    m.def("render_json", &render_json, py::arg("result"));
    m.def("read_csv", &read_csv, py::arg("text"));
}
